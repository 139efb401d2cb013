/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chanent::serial {

using nlohmann::json;

namespace {

SystemDims dims_from_json(const json& j) {
    SystemDims d;
    const auto& in = j.at("in");
    const auto& out = j.at("out");
    if (in.size() != out.size()) {
        throw Error("bad_dims", "in/out party lists must have equal length");
    }
    for (size_t i = 0; i < in.size(); ++i) {
        Party p;
        p.label = in[i].at("label").get<std::string>();
        if (out[i].at("label").get<std::string>() != p.label) {
            throw Error("bad_dims", "in/out labels must match party by party");
        }
        p.in_dim = in[i].at("d").get<int>();
        p.out_dim = out[i].at("d").get<int>();
        d.parties.push_back(std::move(p));
    }
    d.validate();
    return d;
}

Matrix matrix_from_json(const json& j, long rows, long cols) {
    if (static_cast<long>(j.size()) != rows) {
        throw Error("bad_kraus", "Kraus matrix has wrong row count");
    }
    Matrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (static_cast<long>(row.size()) != cols) {
            throw Error("bad_kraus", "Kraus matrix has wrong column count");
        }
        for (long c = 0; c < cols; ++c) {
            const auto& e = row[c];
            if (e.size() != 2) throw Error("bad_kraus", "entries must be [re, im] pairs");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Builder grammar
// ---------------------------------------------------------------------------

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_value(const std::string& spec, const std::string& key, double fallback,
                   bool required = false) {
    for (const std::string& part : split_top_level(spec, ':')) {
        auto eq = part.find('=');
        if (eq != std::string::npos && part.substr(0, eq) == key) {
            return std::stod(part.substr(eq + 1));
        }
    }
    if (required) {
        throw Error("bad_spec", "builder string is missing required key '" + key + "'");
    }
    return fallback;
}

void relabel_sequential(SystemDims& d) {
    for (int p = 0; p < d.party_count(); ++p) {
        d.parties[p].label = std::string(1, static_cast<char>('A' + p));
    }
}

Channel build_inner(const std::string& raw) {
    std::string spec = raw;
    // trim whitespace
    spec.erase(0, spec.find_first_not_of(" \t"));
    spec.erase(spec.find_last_not_of(" \t") + 1);
    if (spec.empty()) throw Error("bad_spec", "empty channel spec");

    if (std::filesystem::exists(spec) && spec.size() > 5 &&
        spec.substr(spec.size() - 5) == ".json") {
        return channel_from_json_file(spec);
    }

    if (spec.rfind("tensor(", 0) == 0 && spec.back() == ')') {
        std::string inside = spec.substr(7, spec.size() - 8);
        std::vector<std::string> parts = split_top_level(inside, ',');
        if (parts.empty()) throw Error("bad_spec", "tensor() needs at least one operand");
        Channel acc = build_inner(parts[0]);
        for (size_t i = 1; i < parts.size(); ++i) acc = tensor(acc, build_inner(parts[i]));
        SystemDims d = acc.dims();
        relabel_sequential(d);
        Channel out(d, acc.kraus(), acc.trace_preserving_intended());
        out.set_name(spec);
        return out;
    }

    std::string head = split_top_level(spec, ':')[0];
    Channel out;
    if (head == "swap") {
        out = builders::swap_gate(static_cast<int>(parse_value(spec, "d", 2)));
    } else if (head == "cnot") {
        out = builders::cnot();
    } else if (head == "id2x2" || head == "id3x3") {
        out = builders::identity2(head == "id2x2" ? 2 : 3);
    } else if (head.rfind("id", 0) == 0 && head.size() > 2) {
        out = builders::identity(std::stoi(head.substr(2)));
    } else if (head == "depol") {
        out = builders::depolarizing(parse_value(spec, "p", 0.0, true),
                                     static_cast<int>(parse_value(spec, "d", 2)));
    } else if (head == "replacer") {
        int d = static_cast<int>(parse_value(spec, "d", 2));
        if (spec.find("maxmix") == std::string::npos) {
            throw Error("bad_spec", "replacer builder supports only 'replacer:maxmix'");
        }
        SystemDims dims;
        dims.parties = {Party{"A", d, d}, Party{"B", d, d}};
        long n = dims.out_total();
        out = builders::replacer(Matrix::Identity(n, n) / static_cast<double>(n), dims);
    } else if (head == "mix") {
        auto upos = spec.find("u=");
        auto ppos = spec.rfind(":p=");
        if (upos == std::string::npos || ppos == std::string::npos || ppos <= upos) {
            throw Error("bad_spec", "mix builder needs the form mix:u=<spec>:p=<value>");
        }
        std::string uspec = spec.substr(upos + 2, ppos - upos - 2);
        double p = std::stod(spec.substr(ppos + 3));
        out = builders::white_noise_mixture(build_inner(uspec), p);
    } else {
        throw Error("bad_spec", "unknown channel builder '" + head + "'");
    }
    out.set_name(spec);
    return out;
}

}  // namespace

Channel channel_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("bad_json", std::string("channel JSON parse error: ") + e.what());
    }
    try {
        SystemDims dims = dims_from_json(j.at("dims"));
        long rows = dims.out_total(), cols = dims.in_total();
        std::vector<Matrix> kraus;
        for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k, rows, cols));
        if (kraus.empty()) {
            throw Error("bad_kraus", "channel needs at least one Kraus operator");
        }
        Channel c(dims, std::move(kraus));
        if (j.contains("name")) c.set_name(j["name"].get<std::string>());
        return c;
    } catch (const json::exception& e) {
        throw Error("bad_json", std::string("channel JSON schema error: ") + e.what());
    }
}

Channel channel_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io_error", "cannot open channel file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return channel_from_json_text(ss.str());
}

std::string channel_to_json_text(const Channel& c, int indent) {
    json dims_in = json::array(), dims_out = json::array();
    for (const Party& p : c.dims().parties) {
        dims_in.push_back({{"label", p.label}, {"d", p.in_dim}});
        dims_out.push_back({{"label", p.label}, {"d", p.out_dim}});
    }
    json kraus = json::array();
    for (const Matrix& k : c.kraus()) {
        json rows = json::array();
        for (long r = 0; r < k.rows(); ++r) {
            json row = json::array();
            for (long col = 0; col < k.cols(); ++col) {
                row.push_back({k(r, col).real(), k(r, col).imag()});
            }
            rows.push_back(std::move(row));
        }
        kraus.push_back(std::move(rows));
    }
    json j = {{"name", c.name()},
              {"dims", {{"in", dims_in}, {"out", dims_out}}},
              {"kraus", kraus}};
    return j.dump(indent);
}

Channel build_channel(const std::string& spec) { return build_inner(spec); }

std::string format_significant(double v, int digits) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

}  // namespace chanent::serial
