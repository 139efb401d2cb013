/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chanent/causality.hpp"
#include "chanent/entropies.hpp"
#include "chanent/selftest.hpp"
#include "chanent/serialization.hpp"

namespace {

using chanent::Channel;
using chanent::EntropyReport;
using nlohmann::json;
namespace serial = chanent::serial;

int thread_cap() {
    if (const char* env = std::getenv("CHANENT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct PGrid {
    double start = 0.0, stop = 1.0;
    int steps = 101;

    double at(int i) const {
        if (steps == 1) return start;
        return start + (stop - start) * i / (steps - 1);
    }
};

PGrid parse_grid(const std::string& s) {
    PGrid g;
    std::istringstream in(s);
    char c1 = 0, c2 = 0;
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.steps) || c1 != ':' || c2 != ':' ||
        g.steps < 1) {
        throw chanent::Error("bad_grid", "expected --p-grid start:stop:steps with steps >= 1");
    }
    return g;
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw chanent::Error("io_error", "cannot open output file: " + out_path);
    f << text;
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

const char* method_name(chanent::Method m) {
    switch (m) {
        case chanent::Method::ClosedForm: return "closed_form";
        case chanent::Method::Sdp: return "sdp";
        default: return "heuristic";
    }
}

const char* bound_name(chanent::BoundKind b) {
    switch (b) {
        case chanent::BoundKind::Exact: return "exact";
        case chanent::BoundKind::Upper: return "upper";
        default: return "lower";
    }
}

json report_json(const EntropyReport& r) {
    json dims = json::array();
    for (const auto& p : r.dims.parties) {
        dims.push_back({{"label", p.label}, {"in", p.in_dim}, {"out", p.out_dim}});
    }
    return json{{"functional", r.functional},
                {"value", r.value},
                {"method", method_name(r.method)},
                {"bound_kind", bound_name(r.bound_kind)},
                {"dims", dims},
                {"diagnostics",
                 {{"solver_gap", r.solver_gap},
                  {"restart_spread", r.restart_spread},
                  {"iterations", r.iterations}}}};
}

// Deterministic parallel map over a p-grid: results land in grid order.
template <typename F>
std::vector<std::string> parallel_rows(const PGrid& grid, F&& per_point) {
    std::vector<std::vector<std::string>> chunks(grid.steps);
    std::vector<std::string> errors(grid.steps);
    int workers = std::min(thread_cap(), grid.steps);
    std::vector<std::thread> pool;
    std::mutex next_mutex;
    int next = 0;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= grid.steps) return;
                    i = next++;
                }
                try {
                    chunks[i] = per_point(grid.at(i));
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const std::string& e : errors) {
        if (!e.empty()) throw chanent::Error("solver_failure", e);
    }
    std::vector<std::string> rows;
    for (auto& c : chunks) rows.insert(rows.end(), c.begin(), c.end());
    return rows;
}

int classify_exit(const chanent::Error& e) {
    std::string code = e.code();
    if (code == "solver_failure" || code == "eigh_failed") return 3;
    return 2;
}

struct Options {
    std::string channel_spec;
    int alpha_ell = 0;
    std::string p_grid;
    std::uint64_t seed = 42;
    double tol = 1e-7;
    std::string out;
    std::string format = "json";
    std::string from_label = "A";
    std::string to_label = "B";
    std::string tier = "full";
};

void add_common(CLI::App* cmd, Options& opt, bool needs_channel) {
    auto* ch = cmd->add_option("--channel", opt.channel_spec,
                               "channel builder string (swap:d=2, cnot, id2, id2x2, "
                               "depol:p=0.5, replacer:maxmix, mix:u=<spec>:p=0.3, "
                               "tensor(a,b)) or a .json channel file");
    if (needs_channel) ch->required();
    cmd->add_option("--alpha-ell", opt.alpha_ell, "ell in alpha = 1 + 2^-ell");
    cmd->add_option("--p-grid", opt.p_grid, "grid as start:stop:steps");
    cmd->add_option("--seed", opt.seed, "seed for heuristic optimizers");
    cmd->add_option("--tol", opt.tol, "tolerance override");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_entropy(const std::string& which, const Options& opt) {
    Channel c = serial::build_channel(opt.channel_spec);
    EntropyReport r;
    if (which == "cond-vn") {
        r = chanent::cond_vn_telecov(c);
    } else if (which == "cond-min") {
        r = chanent::cond_min_sdp(c);
    } else if (which == "cond-geo") {
        r = chanent::cond_geo_sdp(c, chanent::AlphaSchedule{opt.alpha_ell});
    } else if (which == "cond-max") {
        r = chanent::cond_max(c, 6, opt.seed);
    } else if (which == "ns") {
        r = chanent::ns_cond_entropy(c, 20, opt.seed);
    } else if (which == "mi") {
        r = chanent::mi_telecov(c);
    } else if (which == "cmi") {
        r = chanent::cmi_telecov(c);
    } else if (which == "mi-max") {
        r = chanent::mi_max_alternating(c, 40, opt.seed);
    } else {
        throw chanent::Error("bad_functional", "unknown entropy functional: " + which);
    }
    if (opt.format == "csv") {
        std::string text = csv_join({"functional", "value", "method", "bound_kind"});
        text += csv_join({r.functional, serial::format_significant(r.value),
                          method_name(r.method), bound_name(r.bound_kind)});
        write_out(text, opt.out);
    } else {
        write_out(report_json(r).dump(2) + "\n", opt.out);
    }
    return 0;
}

int run_causality(const Options& opt) {
    Channel c = serial::build_channel(opt.channel_spec);
    chanent::CausalityReport r = chanent::semicausal_check(c, opt.from_label, opt.to_label);
    json j = {{"from", r.from_in},
              {"to", r.to_out},
              {"semicausal", r.semicausal},
              {"signaling", !r.semicausal},
              {"defect", r.defect}};
    write_out(j.dump(2) + "\n", opt.out);
    return 0;
}

int run_figure(const std::string& which, Options opt) {
    if (opt.p_grid.empty()) {
        // the SDP figures default to a coarser grid: each point costs several
        // interior-point solves
        opt.p_grid = which == "vn-swap-cnot" ? "0:1:101" : "0:1:11";
    }
    PGrid grid = parse_grid(opt.p_grid);
    std::string text;
    if (which == "vn-swap-cnot") {
        text = csv_join({"p", "functional", "value"});
        Channel swap = serial::build_channel("swap:d=2");
        Channel cnot = serial::build_channel("cnot");
        auto rows = parallel_rows(grid, [&](double p) {
            std::vector<std::string> out;
            double vs =
                chanent::cond_vn_telecov(chanent::builders::white_noise_mixture(swap, p))
                    .value;
            double vc =
                chanent::cond_vn_telecov(chanent::builders::white_noise_mixture(cnot, p))
                    .value;
            std::string ps = serial::format_significant(p);
            out.push_back(csv_join({ps, "swap", serial::format_significant(vs)}));
            out.push_back(csv_join({ps, "cnot", serial::format_significant(vc)}));
            out.push_back(csv_join({ps, "id", serial::format_significant(-1.0)}));
            return out;
        });
        for (auto& r : rows) text += r;
    } else if (which == "sdp-swap" || which == "sdp-cnot") {
        text = csv_join({"p", "functional", "alpha", "value"});
        Channel base = serial::build_channel(which == "sdp-swap" ? "swap:d=2" : "cnot");
        auto rows = parallel_rows(grid, [&](double p) {
            std::vector<std::string> out;
            Channel mix = chanent::builders::unitary_identity_mixture(base, p);
            std::string ps = serial::format_significant(p);
            double vmin = chanent::cond_min_sdp(mix).value;
            out.push_back(csv_join({ps, "cond_min", "", serial::format_significant(vmin)}));
            for (int ell : {0, 2, 4}) {
                chanent::AlphaSchedule sched{ell};
                double v = chanent::cond_geo_sdp(mix, sched).value;
                out.push_back(csv_join({ps, "cond_geo",
                                        serial::format_significant(sched.alpha()),
                                        serial::format_significant(v)}));
            }
            return out;
        });
        for (auto& r : rows) text += r;
    } else {
        throw chanent::Error("bad_figure", "unknown figure id: " + which);
    }
    write_out(text, opt.out);
    return 0;
}

int run_suite(const Options& opt) {
    bool fast = opt.tier == "fast";
    auto results = chanent::selftest::run_all(fast, opt.seed);
    bool all_pass = true;
    json arr = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << "criterion " << r.id << " (" << r.name << "): "
                  << (r.pass ? "PASS" : "FAIL");
        if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
        std::cout << " (" << serial::format_significant(r.seconds, 3) << " s)\n";
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
    }
    if (!opt.out.empty()) {
        write_out(json{{"tier", fast ? "fast" : "full"}, {"results", arr}}.dump(2) + "\n",
                  opt.out);
    }
    std::cout << (all_pass ? "suite: PASS" : "suite: FAIL") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chanent: entropies and causality diagnostics of quantum channels"};
    app.require_subcommand(1);
    Options opt;

    auto* entropy = app.add_subcommand("entropy", "channel entropy functionals");
    entropy->require_subcommand(1);
    std::vector<std::string> functionals = {"cond-vn", "cond-min", "cond-geo", "cond-max",
                                            "ns",      "mi",       "cmi",      "mi-max"};
    for (const std::string& f : functionals) {
        add_common(entropy->add_subcommand(f, "compute " + f), opt, true);
    }

    auto* causality = app.add_subcommand("causality", "causality diagnostics");
    auto* check = causality->add_subcommand("check", "semicausality check");
    add_common(check, opt, true);
    check->add_option("--from", opt.from_label, "input party label")->required();
    check->add_option("--to", opt.to_label, "output party label")->required();

    auto* figure = app.add_subcommand("figure", "regenerate figure data as CSV");
    figure->require_subcommand(1);
    for (const std::string& f : {std::string("vn-swap-cnot"), std::string("sdp-swap"),
                                 std::string("sdp-cnot")}) {
        add_common(figure->add_subcommand(f, "figure " + f), opt, false);
    }

    auto* suite = app.add_subcommand("suite", "acceptance suite");
    auto* suite_run = suite->add_subcommand("run", "run the acceptance criteria");
    add_common(suite_run, opt, false);
    suite_run->add_option("--tier", opt.tier, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (entropy->parsed()) {
            return run_entropy(entropy->get_subcommands().front()->get_name(), opt);
        }
        if (causality->parsed()) return run_causality(opt);
        if (figure->parsed()) {
            return run_figure(figure->get_subcommands().front()->get_name(), opt);
        }
        if (suite->parsed()) return run_suite(opt);
    } catch (const chanent::Error& e) {
        json err = {{"code", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return classify_exit(e);
    } catch (const std::exception& e) {
        json err = {{"code", "internal_error"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
    return 0;
}
