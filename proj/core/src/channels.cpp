/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/channels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

namespace chanent {

long SystemDims::in_total() const {
    long t = 1;
    for (const auto& p : parties) t *= p.in_dim;
    return t;
}

long SystemDims::out_total() const {
    long t = 1;
    for (const auto& p : parties) t *= p.out_dim;
    return t;
}

std::vector<int> SystemDims::choi_factors() const {
    std::vector<int> f;
    f.reserve(2 * parties.size());
    for (const auto& p : parties) {
        f.push_back(p.in_dim);
        f.push_back(p.out_dim);
    }
    return f;
}

int SystemDims::index_of(const std::string& label) const {
    for (size_t i = 0; i < parties.size(); ++i) {
        if (parties[i].label == label) return static_cast<int>(i);
    }
    return -1;
}

void SystemDims::validate() const {
    if (parties.empty()) throw Error("bad_dims", "channel needs at least one party");
    std::set<std::string> seen;
    for (const auto& p : parties) {
        if (p.in_dim < 1 || p.out_dim < 1) {
            throw Error("bad_dims", "party '" + p.label + "' has dimension < 1");
        }
        if (p.label.empty() || !seen.insert(p.label).second) {
            throw Error("bad_dims", "party labels must be unique and nonempty");
        }
    }
}

SystemDims concat(const SystemDims& a, const SystemDims& b) {
    SystemDims out = a;
    for (const auto& p : b.parties) {
        Party q = p;
        while (out.index_of(q.label) >= 0) q.label += "'";
        out.parties.push_back(q);
    }
    return out;
}

namespace {

// permutation taking [R_1..R_n, O_1..O_n] to [R_1, O_1, R_2, O_2, ...]
std::vector<int> interleave_perm(int n) {
    std::vector<int> perm(2 * n);
    for (int p = 0; p < n; ++p) {
        perm[2 * p] = p;
        perm[2 * p + 1] = n + p;
    }
    return perm;
}

std::vector<int> blocked_dims(const SystemDims& d) {
    std::vector<int> dims;
    for (const auto& p : d.parties) dims.push_back(p.in_dim);
    for (const auto& p : d.parties) dims.push_back(p.out_dim);
    return dims;
}

}  // namespace

Channel::Channel(SystemDims dims, std::vector<Matrix> kraus, bool trace_preserving)
    : dims_(std::move(dims)), kraus_(std::move(kraus)), trace_preserving_(trace_preserving) {
    dims_.validate();
    if (kraus_.empty()) throw Error("bad_kraus", "channel needs at least one Kraus operator");
    for (const auto& k : kraus_) {
        if (k.rows() != dims_.out_total() || k.cols() != dims_.in_total()) {
            throw Error("bad_kraus", "Kraus operator shape does not match system dims");
        }
    }
    if (trace_preserving_) {
        Matrix acc = Matrix::Zero(dims_.in_total(), dims_.in_total());
        for (const auto& k : kraus_) acc += k.adjoint() * k;
        double defect =
            (acc - Matrix::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff();
        if (defect > 1e-9) {
            throw Error("not_trace_preserving",
                        "sum K^dag K deviates from identity by " + std::to_string(defect));
        }
    }
}

const ChoiOperator& Channel::choi() const {
    if (!choi_cache_) {
        auto holder = std::make_shared<ChoiOperator>(choi_of(*this));
        choi_cache_ = holder;
    }
    return *choi_cache_;
}

ChoiOperator choi_of(const Channel& c) {
    const long din = c.dims().in_total();
    const long dout = c.dims().out_total();
    Matrix gamma = Matrix::Zero(din * dout, din * dout);
    for (const auto& k : c.kraus()) {
        Vector v(din * dout);
        for (long i = 0; i < din; ++i) {
            v.segment(i * dout, dout) = k.col(i);
        }
        gamma.noalias() += v * v.adjoint();
    }
    const int n = c.dims().party_count();
    Matrix inter = permute_factors(gamma, blocked_dims(c.dims()), interleave_perm(n));
    return ChoiOperator{std::move(inter), c.dims()};
}

Channel channel_from_choi(const ChoiOperator& g) {
    g.dims.validate();
    const int n = g.dims.party_count();
    const long din = g.dims.in_total();
    const long dout = g.dims.out_total();
    if (g.matrix.rows() != din * dout) {
        throw Error("dim_mismatch", "Choi matrix does not match system dims");
    }
    // tr over outputs must give the identity on the reference
    std::vector<int> keep_refs;
    for (int p = 0; p < n; ++p) keep_refs.push_back(SystemDims::ref_factor(p));
    Matrix tr_out = partial_trace(g.matrix, g.dims.choi_factors(), keep_refs);
    double tp_defect = (tr_out - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
    if (tp_defect > 1e-7) {
        throw Error("not_trace_preserving",
                    "tr_out Choi deviates from identity by " + std::to_string(tp_defect));
    }

    // back to [R..., O...] block ordering: inverse of the interleave permutation
    std::vector<int> inv(2 * n);
    for (int p = 0; p < n; ++p) {
        inv[p] = 2 * p;
        inv[n + p] = 2 * p + 1;
    }
    Matrix blocked = permute_factors(g.matrix, g.dims.choi_factors(), inv);

    SpectralDecomposition d = eigh(blocked);
    double lmax = d.eigenvalues.cwiseAbs().maxCoeff();
    if (d.eigenvalues.minCoeff() < -1e-7 * (1.0 + lmax)) {
        throw Error("not_cp", "Choi operator is not positive semidefinite");
    }
    std::vector<Matrix> kraus;
    for (int i = 0; i < d.eigenvalues.size(); ++i) {
        double lam = d.eigenvalues[i];
        if (lam <= d.support_cutoff) continue;
        Vector v = std::sqrt(lam) * d.eigenvectors.col(i);
        Matrix k(dout, din);
        for (long c = 0; c < din; ++c) k.col(c) = v.segment(c * dout, dout);
        kraus.push_back(std::move(k));
    }
    if (kraus.empty()) throw Error("bad_choi", "Choi operator has empty support");
    return Channel(g.dims, std::move(kraus), true);
}

CptpReport validate_cptp(const Channel& c) {
    CptpReport r;
    const ChoiOperator& g = c.choi();
    r.choi_min_eigenvalue = min_eigenvalue(g.matrix);
    double lmax = g.matrix.cwiseAbs().maxCoeff();
    r.completely_positive = r.choi_min_eigenvalue >= -tol::cptp * (1.0 + lmax);

    Matrix acc = Matrix::Zero(c.dims().in_total(), c.dims().in_total());
    for (const auto& k : c.kraus()) acc += k.adjoint() * k;
    r.trace_defect = (acc - Matrix::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff();
    r.trace_preserving = r.trace_defect <= tol::cptp;
    r.ok = r.completely_positive && r.trace_preserving;
    return r;
}

Channel compose(const Channel& second, const Channel& first) {
    if (first.dims().party_count() != second.dims().party_count()) {
        throw Error("dim_mismatch", "compose: party counts differ");
    }
    SystemDims dims;
    for (int p = 0; p < first.dims().party_count(); ++p) {
        const Party& f = first.dims().parties[p];
        const Party& s = second.dims().parties[p];
        if (f.out_dim != s.in_dim) {
            throw Error("dim_mismatch", "compose: output of '" + f.label +
                                            "' does not feed input of '" + s.label + "'");
        }
        dims.parties.push_back(Party{f.label, f.in_dim, s.out_dim});
    }
    std::vector<Matrix> kraus;
    for (const auto& k2 : second.kraus())
        for (const auto& k1 : first.kraus()) kraus.push_back(k2 * k1);
    bool tp = first.trace_preserving_intended() && second.trace_preserving_intended();
    return Channel(dims, std::move(kraus), tp);
}

Channel tensor(const Channel& a, const Channel& b) {
    SystemDims dims = concat(a.dims(), b.dims());
    std::vector<Matrix> kraus;
    for (const auto& ka : a.kraus())
        for (const auto& kb : b.kraus()) kraus.push_back(tensor_product(ka, kb));
    bool tp = a.trace_preserving_intended() && b.trace_preserving_intended();
    return Channel(dims, std::move(kraus), tp);
}

Channel reduced_channel(const Channel& c, const std::vector<std::string>& drop) {
    if (drop.empty()) return c;
    std::vector<bool> dropped(c.dims().party_count(), false);
    for (const auto& label : drop) {
        int idx = c.dims().index_of(label);
        if (idx < 0) throw Error("bad_label", "unknown output label '" + label + "'");
        dropped[idx] = true;
    }
    SystemDims dims = c.dims();
    std::vector<int> out_dims;
    long dkeep = 1, ddrop = 1;
    for (int p = 0; p < dims.party_count(); ++p) {
        out_dims.push_back(dims.parties[p].out_dim);
        (dropped[p] ? ddrop : dkeep) *= dims.parties[p].out_dim;
    }
    const int n = dims.party_count();
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * out_dims[i + 1];

    // contraction isometries 1_keep (x) <t|_drop realized as explicit Kraus
    std::vector<Matrix> projectors;
    for (long t = 0; t < ddrop; ++t) {
        Matrix pt = Matrix::Zero(dkeep, c.dims().out_total());
        for (long o = 0; o < c.dims().out_total(); ++o) {
            long rem_drop = 0, kept_index = 0, mul_drop = 1, mul_keep = 1;
            for (int p = n - 1; p >= 0; --p) {
                int digit = static_cast<int>((o / stride[p]) % out_dims[p]);
                if (dropped[p]) {
                    rem_drop += digit * mul_drop;
                    mul_drop *= out_dims[p];
                } else {
                    kept_index += digit * mul_keep;
                    mul_keep *= out_dims[p];
                }
            }
            if (rem_drop == t) pt(kept_index, o) = 1.0;
        }
        projectors.push_back(std::move(pt));
    }
    for (int p = 0; p < n; ++p) {
        if (dropped[p]) dims.parties[p].out_dim = 1;
    }
    std::vector<Matrix> kraus;
    for (const auto& pt : projectors)
        for (const auto& k : c.kraus()) kraus.push_back(pt * k);
    return Channel(dims, std::move(kraus), c.trace_preserving_intended());
}

Matrix apply_to_state(const Channel& c, const Matrix& rho, long ref_dim) {
    const long din = c.dims().in_total();
    if (rho.rows() != rho.cols() || rho.rows() != ref_dim * din) {
        throw Error("dim_mismatch", "state dimension does not match reference x input");
    }
    const long dout = c.dims().out_total();
    Matrix out = Matrix::Zero(ref_dim * dout, ref_dim * dout);
    Matrix id_ref = Matrix::Identity(ref_dim, ref_dim);
    for (const auto& k : c.kraus()) {
        Matrix kk = tensor_product(id_ref, k);
        out.noalias() += kk * rho * kk.adjoint();
    }
    return out;
}

Matrix weyl_operator(int d, int x, int z) {
    Matrix w = Matrix::Zero(d, d);
    const double theta = 2.0 * M_PI / d;
    for (int j = 0; j < d; ++j) {
        Complex phase(std::cos(theta * z * j), std::sin(theta * z * j));
        w((j + x) % d, j) = phase;
    }
    return w;
}

namespace {

std::vector<Matrix> weyl_products(const std::vector<int>& dims) {
    std::vector<Matrix> out;
    long count = 1;
    for (int d : dims) count *= static_cast<long>(d) * d;
    out.reserve(count);
    std::vector<int> idx(dims.size(), 0);
    for (long c = 0; c < count; ++c) {
        long rem = c;
        Matrix w = Matrix::Identity(1, 1);
        for (size_t p = 0; p < dims.size(); ++p) {
            long dd = static_cast<long>(dims[p]) * dims[p];
            long local = rem % dd;
            rem /= dd;
            int x = static_cast<int>(local % dims[p]);
            int z = static_cast<int>(local / dims[p]);
            w = tensor_product(w, weyl_operator(dims[p], x, z));
        }
        out.push_back(std::move(w));
    }
    return out;
}

Channel unitary_on(const std::vector<int>& dims_list, const Matrix& u,
                   const SystemDims& like) {
    SystemDims d;
    for (size_t p = 0; p < dims_list.size(); ++p) {
        d.parties.push_back(Party{like.parties[p].label, dims_list[p], dims_list[p]});
    }
    return Channel(d, {u});
}

}  // namespace

TeleCovarianceReport tele_covariance_check(const Channel& c,
                                           const std::vector<CovariancePair>& group) {
    TeleCovarianceReport report;
    std::vector<int> in_dims, out_dims;
    for (const auto& p : c.dims().parties) {
        in_dims.push_back(p.in_dim);
        out_dims.push_back(p.out_dim);
    }

    std::vector<CovariancePair> elements = group;
    if (elements.empty()) {
        for (auto& w : weyl_products(in_dims)) {
            elements.push_back(CovariancePair{std::move(w), std::nullopt});
        }
    }

    const long dim = c.dims().choi_total();

    // deterministic fingerprint weights; |f(a) - f(b)| <= maxabs(a - b) * wsum,
    // so candidates can be pre-filtered by a scalar comparison
    Matrix fw(dim, dim);
    {
        std::mt19937_64 eng(0x5eed5eedULL);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) fw(i, j) = Complex(uni(eng), uni(eng));
    }
    const double wsum = fw.cwiseAbs().sum();
    auto fingerprint = [&](const Matrix& m) { return (m.array() * fw.array()).sum(); };

    std::vector<Matrix> candidates;
    std::vector<Matrix> candidate_chois;
    std::vector<Complex> candidate_fps;
    {
        for (auto& v : weyl_products(out_dims)) candidates.push_back(std::move(v));
        for (const auto& v : candidates) {
            Channel vchan = unitary_on(out_dims, v, c.dims());
            candidate_chois.push_back(choi_of(compose(vchan, c)).matrix);
            candidate_fps.push_back(fingerprint(candidate_chois.back()));
        }
    }
    double worst = 0.0;
    for (const auto& elem : elements) {
        const Matrix& u = elem.input_unitary;
        if (u.rows() != c.dims().in_total() ||
            (u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff() >
                1e-9) {
            throw Error("not_unitary", "covariance group element is not unitary");
        }
        Channel uchan = unitary_on(in_dims, u, c.dims());
        Matrix lhs = choi_of(compose(c, uchan)).matrix;

        double best = std::numeric_limits<double>::infinity();
        auto defect_for = [&](const Matrix& rhs) {
            double max_abs = (lhs - rhs).cwiseAbs().maxCoeff();
            if (dim * max_abs <= 1e-8) return max_abs;  // op-norm bounded by dim*maxabs
            return schatten_norm(lhs - rhs, std::numeric_limits<double>::infinity());
        };
        if (elem.output_unitary) {
            Channel vchan = unitary_on(out_dims, *elem.output_unitary, c.dims());
            best = defect_for(choi_of(compose(vchan, c)).matrix);
        } else {
            // |f(lhs) - f(rhs)| / wsum lower-bounds maxabs(lhs - rhs), which
            // lower-bounds the operator norm; scan candidates by that bound and
            // stop once it exceeds the best defect found so far
            Complex fl = fingerprint(lhs);
            std::vector<std::pair<double, int>> order(candidate_chois.size());
            for (size_t k = 0; k < candidate_chois.size(); ++k) {
                order[k] = {std::abs(fl - candidate_fps[k]) / wsum, static_cast<int>(k)};
            }
            std::sort(order.begin(), order.end());
            for (const auto& [lb, k] : order) {
                if (lb >= best) break;
                best = std::min(best, defect_for(candidate_chois[k]));
                if (best <= 1e-12) break;
            }
        }
        worst = std::max(worst, best);
        ++report.checked_elements;
    }
    report.worst_defect = worst;
    report.covariant = worst <= 1e-8;
    return report;
}

namespace builders {

Channel identity(int d, const std::string& label) {
    SystemDims dims{{Party{label, d, d}}};
    Channel c(dims, {Matrix::Identity(d, d)});
    c.set_name("id:d=" + std::to_string(d));
    return c;
}

Channel identity2(int d) {
    Channel c = tensor(identity(d, "A"), identity(d, "B"));
    c.set_name("id" + std::to_string(d) + "x" + std::to_string(d));
    return c;
}

Channel swap_gate(int d) {
    SystemDims dims{{Party{"A", d, d}, Party{"B", d, d}}};
    Matrix u = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) u(j * d + i, i * d + j) = 1.0;
    Channel c(dims, {u});
    c.set_name("swap:d=" + std::to_string(d));
    return c;
}

Channel cnot() {
    SystemDims dims{{Party{"A", 2, 2}, Party{"B", 2, 2}}};
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = 1;
    u(1, 1) = 1;
    u(3, 2) = 1;
    u(2, 3) = 1;
    Channel c(dims, {u});
    c.set_name("cnot");
    return c;
}

Channel unitary(const Matrix& u, SystemDims dims) {
    dims.validate();
    if (u.rows() != dims.in_total() || u.rows() != dims.out_total() || u.rows() != u.cols()) {
        throw Error("dim_mismatch", "unitary shape does not match system dims");
    }
    double defect =
        (u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff();
    if (defect > 1e-9) {
        throw Error("not_unitary", "U U^dag deviates from identity by " + std::to_string(defect));
    }
    return Channel(dims, {u});
}

Channel replacer(const Matrix& sigma, SystemDims dims) {
    dims.validate();
    if (sigma.rows() != dims.out_total()) {
        throw Error("dim_mismatch", "replacer target does not match output dims");
    }
    HermitianOperator s(sigma);
    if (!is_psd(s) || std::abs(sigma.trace().real() - 1.0) > 1e-9) {
        throw Error("not_state", "replacer target must be a density operator");
    }
    SpectralDecomposition d = eigh(s);
    std::vector<Matrix> kraus;
    const long din = dims.in_total();
    for (int i = 0; i < d.eigenvalues.size(); ++i) {
        if (d.eigenvalues[i] <= d.support_cutoff) continue;
        for (long j = 0; j < din; ++j) {
            Matrix k = Matrix::Zero(dims.out_total(), din);
            k.col(j) = std::sqrt(d.eigenvalues[i]) * d.eigenvectors.col(i);
            kraus.push_back(std::move(k));
        }
    }
    Channel c(dims, std::move(kraus));
    c.set_name("replacer");
    return c;
}

Channel completely_mixing_map(SystemDims dims) {
    dims.validate();
    std::vector<Matrix> kraus;
    for (long a = 0; a < dims.out_total(); ++a) {
        for (long j = 0; j < dims.in_total(); ++j) {
            Matrix k = Matrix::Zero(dims.out_total(), dims.in_total());
            k(a, j) = 1.0;
            kraus.push_back(std::move(k));
        }
    }
    Channel c(dims, std::move(kraus), /*trace_preserving=*/false);
    c.set_name("completely_mixing");
    return c;
}

Channel white_noise_mixture(const Channel& unitary_channel, double p) {
    if (p < 0.0 || p > 1.0) throw Error("bad_p", "mixture weight must lie in [0, 1]");
    const SystemDims& dims = unitary_channel.dims();
    if (unitary_channel.kraus().size() != 1) {
        throw Error("not_unitary", "white noise mixture expects a single-Kraus channel");
    }
    std::vector<Matrix> kraus;
    if (p > 0.0) kraus.push_back(std::sqrt(p) * unitary_channel.kraus()[0]);
    if (p < 1.0) {
        const long dout = dims.out_total();
        Matrix pi = Matrix::Identity(dout, dout) / static_cast<double>(dout);
        Channel rep = replacer(pi, dims);
        for (const auto& k : rep.kraus()) kraus.push_back(std::sqrt(1.0 - p) * k);
    }
    Channel c(dims, std::move(kraus));
    c.set_name("mix:u=" + unitary_channel.name() + ":p=" + std::to_string(p));
    return c;
}

Channel unitary_identity_mixture(const Channel& unitary_channel, double p) {
    if (p < 0.0 || p > 1.0) throw Error("bad_p", "mixture weight must lie in [0, 1]");
    const SystemDims& dims = unitary_channel.dims();
    if (dims.in_total() != dims.out_total() || unitary_channel.kraus().size() != 1) {
        throw Error("not_unitary", "unitary/identity mixture expects a square unitary channel");
    }
    std::vector<Matrix> kraus;
    if (p > 0.0) kraus.push_back(std::sqrt(p) * unitary_channel.kraus()[0]);
    if (p < 1.0) {
        kraus.push_back(std::sqrt(1.0 - p) *
                        Matrix::Identity(dims.out_total(), dims.in_total()));
    }
    Channel c(dims, std::move(kraus));
    c.set_name("umix:u=" + unitary_channel.name() + ":p=" + std::to_string(p));
    return c;
}

Channel depolarizing(double p, int d) {
    if (p < 0.0 || p > 1.0) throw Error("bad_p", "depolarizing weight must lie in [0, 1]");
    SystemDims dims{{Party{"A", d, d}}};
    std::vector<Matrix> kraus;
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
    if (p > 0.0) {
        Matrix pi = Matrix::Identity(d, d) / static_cast<double>(d);
        Channel rep = replacer(pi, dims);
        for (const auto& k : rep.kraus()) kraus.push_back(std::sqrt(p) * k);
    }
    Channel c(dims, std::move(kraus));
    c.set_name("depol:p=" + std::to_string(p));
    return c;
}

Channel weyl_mixture(const SystemDims& dims, const std::vector<double>& weights,
                     const std::vector<std::vector<std::pair<int, int>>>& indices) {
    dims.validate();
    if (weights.size() != indices.size() || weights.empty()) {
        throw Error("bad_mixture", "weights and Weyl index lists must align");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0) throw Error("bad_mixture", "mixture weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("bad_mixture", "mixture weights must sum to 1");
    }
    std::vector<Matrix> kraus;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (indices[i].size() != dims.parties.size()) {
            throw Error("bad_mixture", "one (x, z) pair per party required");
        }
        Matrix w = Matrix::Identity(1, 1);
        for (size_t p = 0; p < dims.parties.size(); ++p) {
            const Party& party = dims.parties[p];
            if (party.in_dim != party.out_dim) {
                throw Error("bad_mixture", "Weyl mixture requires square parties");
            }
            w = tensor_product(w, weyl_operator(party.in_dim, indices[i][p].first,
                                                indices[i][p].second));
        }
        if (weights[i] > 0) kraus.push_back(std::sqrt(weights[i]) * w);
    }
    Channel c(dims, std::move(kraus));
    c.set_name("weyl_mixture");
    return c;
}

}  // namespace builders

}  // namespace chanent
