/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chanent/random.hpp"
#include "chanent/sdp.hpp"

namespace chanent {

namespace {

double log2d(double x) { return std::log2(x); }

void require_party_count(const Channel& c, int lo, int hi, const char* what) {
    int n = c.dims().party_count();
    if (n < lo || n > hi) {
        throw Error("bad_arity", std::string(what) + " expects between " +
                                     std::to_string(lo) + " and " + std::to_string(hi) +
                                     " parties");
    }
}

bool gate_covariance(const Channel& c, bool allow_non_covariant) {
    TeleCovarianceReport rep = tele_covariance_check(c);
    if (!rep.covariant && !allow_non_covariant) {
        throw Error("not_tele_covariant",
                    "channel failed the tele-covariance check (worst defect " +
                        std::to_string(rep.worst_defect) + ")");
    }
    return rep.covariant;
}

std::vector<std::vector<int>> party_groups(const SystemDims& dims) {
    std::vector<std::vector<int>> groups;
    for (int p = 0; p < dims.party_count(); ++p) {
        groups.push_back({SystemDims::ref_factor(p), SystemDims::out_factor(p)});
    }
    return groups;
}

}  // namespace

double AlphaSchedule::alpha() const {
    if (ell < 0) throw Error("bad_schedule", "ell must be nonnegative");
    return 1.0 + std::ldexp(1.0, -ell);
}

EntropyReport cond_vn_telecov(const Channel& c, bool allow_non_covariant) {
    require_party_count(c, 1, 2, "cond_vn_telecov");
    bool covariant = gate_covariance(c, allow_non_covariant);
    const SystemDims& d = c.dims();
    std::vector<int> factors = d.choi_factors();
    Matrix phi = c.choi().state();
    std::vector<int> cond;
    if (d.party_count() == 2) cond = {2, 3};
    double s = state_cond_entropy(phi, factors, cond) - log2d(d.parties[0].in_dim);
    EntropyReport rep;
    rep.functional = "cond_vn";
    rep.value = s;
    rep.method = Method::ClosedForm;
    rep.bound_kind = covariant ? BoundKind::Exact : BoundKind::Upper;
    rep.dims = d;
    return rep;
}

double cond_vn_noisy_swap_formula(int d, double p) {
    if (d < 2 || p < 0.0 || p > 1.0) {
        throw Error("bad_args", "need d >= 2 and p in [0, 1]");
    }
    double d4 = std::pow(static_cast<double>(d), 4);
    double q = (1.0 - p) / d4;
    double a = p + q;
    auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return -xlog(a) - (d4 - 1.0) * xlog(q) - 3.0 * std::log2(static_cast<double>(d));
}

std::pair<double, double> cond_vn_bounds(const SystemDims& dims) {
    double a_in = 1, a_out = 1, b_in = 1, b_out = 1;
    if (!dims.parties.empty()) {
        a_in = dims.parties[0].in_dim;
        a_out = dims.parties[0].out_dim;
    }
    if (dims.party_count() >= 2) {
        b_in = dims.parties[1].in_dim;
        b_out = dims.parties[1].out_dim;
    }
    double lower = -log2d(std::min(a_out * b_out * b_out, a_in * b_in * b_out));
    double upper = log2d(a_out);
    return {lower, upper};
}

EntropyReport cond_min_sdp(const Channel& c) {
    require_party_count(c, 1, 2, "cond_min_sdp");
    const SystemDims& d = c.dims();
    const int in_b = d.party_count() == 2 ? d.parties[1].in_dim : 1;
    const int out_b = d.party_count() == 2 ? d.parties[1].out_dim : 1;
    const int n_b = in_b * out_b;
    const long n = d.choi_total();
    const int n_a = static_cast<int>(n / n_b);
    const Matrix& gamma = c.choi().matrix;

    sdp::SdpProblem p;
    int m = p.add_variable("M", n_b);
    // 1_{R_A A} (x) M - Gamma >= 0
    sdp::AffineExpr dom(static_cast<int>(n));
    dom.add_identity_kron_var(n_a, m, n_b, 0);
    dom.add_constant(-gamma);
    p.psd_constraints.push_back(dom);
    // M >= 0
    sdp::AffineExpr pos(n_b);
    pos.add_var_block(m, n_b, 0);
    p.psd_constraints.push_back(pos);
    // tr_B M = tr(M) 1_{R_B} / |B'|
    if (in_b > 1 || out_b > 1) {
        sdp::AffineExpr eq(in_b);
        eq.add_partial_trace_var(m, {in_b, out_b}, {0}, 0, 1.0);
        eq.add_trace_times_identity(m, n_b, -1.0 / in_b);
        p.eq_constraints.push_back(eq);
    }
    // minimize tr(M) / |B'|
    for (int i = 0; i < n_b; ++i) p.add_objective_term(m, i, i, 1.0 / in_b);

    sdp::SdpSolution s = sdp::solve(p);
    if (s.status == sdp::SolveStatus::Infeasible || s.objective <= 0.0) {
        throw Error("solver_failure", "conditional min-entropy program failed");
    }
    sdp::VerifyReport v = sdp::verify(p, s);
    EntropyReport rep;
    rep.functional = "cond_min";
    rep.value = -std::log2(s.objective);
    rep.method = Method::Sdp;
    rep.bound_kind = v.ok ? BoundKind::Exact : BoundKind::Lower;
    rep.dims = d;
    rep.solver_gap = s.duality_gap;
    rep.iterations = s.iterations;
    return rep;
}

EntropyReport cond_geo_sdp(const Channel& c, const AlphaSchedule& schedule,
                           Matrix* choi_m_out) {
    require_party_count(c, 1, 2, "cond_geo_sdp");
    const SystemDims& d = c.dims();
    const int ell = schedule.ell;
    const double alpha = schedule.alpha();
    const int in_b = d.party_count() == 2 ? d.parties[1].in_dim : 1;
    const int out_b = d.party_count() == 2 ? d.parties[1].out_dim : 1;
    const int n_b = in_b * out_b;
    const int n = static_cast<int>(d.choi_total());
    const int n_a = n / n_b;
    const int in_a = d.parties[0].in_dim;
    const Matrix& gamma = c.choi().matrix;

    std::vector<int> factors = d.choi_factors();
    std::vector<int> keep;
    for (int pi = 0; pi < d.party_count(); ++pi) keep.push_back(2 * pi);
    const int ref_dim = in_a * in_b;

    sdp::SdpProblem p;
    int gm = p.add_variable("GM", n_b);
    int y = p.add_variable("y", 1);

    if (ell == 0) {
        int pv = p.add_variable("P", n);
        // [[P, Gamma], [Gamma, 1 (x) GM]] >= 0
        sdp::AffineExpr e(2 * n);
        e.add_var_block(pv, n, 0);
        e.add_identity_kron_var(n_a, gm, n_b, n);
        Matrix cst = Matrix::Zero(2 * n, 2 * n);
        cst.block(0, n, n, n) = gamma;
        cst.block(n, 0, n, n) = gamma;
        e.add_constant(cst);
        p.psd_constraints.push_back(e);
        // y 1 - tr_{AB} P >= 0 on R_A R_B
        sdp::AffineExpr yc(ref_dim);
        yc.add_scalar_times_identity(y, 1.0);
        yc.add_partial_trace_var(pv, factors, keep, 0, -1.0);
        p.psd_constraints.push_back(yc);
    } else {
        // The chain blocks [[Gamma, Q_i], [Q_i, Q_{i-1}]] force every Q_i (and
        // the optimal P) onto the support of Gamma, so when Gamma is rank
        // deficient the full-space program has no strictly feasible point and
        // the interior-point method stalls. Restrict P and the chain variables
        // to supp(Gamma) up front: same optimum, restored strict feasibility,
        // and much smaller blocks for low-rank (e.g. unitary-mixture) channels.
        SpectralDecomposition sd = eigh(gamma);
        std::vector<int> idx;
        for (int i = 0; i < sd.eigenvalues.size(); ++i) {
            if (sd.eigenvalues[i] > sd.support_cutoff) idx.push_back(i);
        }
        const int r = static_cast<int>(idx.size());
        Matrix v(n, r);
        Matrix gr = Matrix::Zero(r, r);
        for (int k = 0; k < r; ++k) {
            v.col(k) = sd.eigenvectors.col(idx[k]);
            gr(k, k) = sd.eigenvalues[idx[k]];
        }

        int pv = p.add_variable("P", r);
        std::vector<int> q(ell + 1, -1);
        for (int i = 1; i <= ell; ++i) q[i] = p.add_variable("Q" + std::to_string(i), r);

        // [[P, Gr], [Gr, Q_ell]] >= 0, all on supp(Gamma)
        {
            sdp::AffineExpr e(2 * r);
            e.add_var_block(pv, r, 0);
            e.add_var_block(q[ell], r, r);
            Matrix cst = Matrix::Zero(2 * r, 2 * r);
            cst.block(0, r, r, r) = gr;
            cst.block(r, 0, r, r) = gr;
            e.add_constant(cst);
            p.psd_constraints.push_back(e);
        }
        // [[Gr, Q_i], [Q_i, Q_{i-1}]] >= 0 for i = 2..ell
        for (int i = 2; i <= ell; ++i) {
            sdp::AffineExpr e(2 * r);
            Matrix cst = Matrix::Zero(2 * r, 2 * r);
            cst.block(0, 0, r, r) = gr;
            e.add_constant(cst);
            e.add_var_offdiag(q[i], r, 0, r);
            e.add_var_block(q[i - 1], r, r);
            p.psd_constraints.push_back(e);
        }
        // [[Gr, Q_1 V^dag], [V Q_1, 1 (x) GM]] >= 0 couples the reduced chain
        // to the full-space Choi-state variable
        {
            sdp::AffineExpr e(r + n);
            Matrix cst = Matrix::Zero(r + n, r + n);
            cst.block(0, 0, r, r) = gr;
            e.add_constant(cst);
            e.add_identity_kron_var(n_a, gm, n_b, r);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    for (int m = 0; m < n; ++m) {
                        Complex c = std::conj(v(m, j));
                        if (std::abs(c) < 1e-15) continue;
                        e.add_term(q[1], i, r + m, i, j, c);
                        e.add_term(q[1], r + m, i, j, i, std::conj(c));
                    }
                }
            }
            p.psd_constraints.push_back(e);
        }
        // y 1 - tr_{AB} (V P V^dag) >= 0 on R_A R_B
        {
            sdp::AffineExpr e(ref_dim);
            e.add_scalar_times_identity(y, 1.0);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    Matrix w = partial_trace(v.col(i) * v.col(j).adjoint(), factors, keep);
                    for (int a = 0; a < ref_dim; ++a) {
                        for (int b = 0; b < ref_dim; ++b) {
                            if (std::abs(w(a, b)) < 1e-15) continue;
                            e.add_term(pv, a, b, i, j, -w(a, b));
                        }
                    }
                }
            }
            p.psd_constraints.push_back(e);
        }
    }
    // tr_B Gamma_M = 1_{R_B}
    {
        sdp::AffineExpr eq(in_b);
        eq.add_partial_trace_var(gm, {in_b, out_b}, {0}, 0, 1.0);
        eq.add_constant(-Matrix::Identity(in_b, in_b));
        p.eq_constraints.push_back(eq);
    }
    p.add_objective_term(y, 0, 0, 1.0);

    sdp::SdpSolution s = sdp::solve(p);
    if (s.status == sdp::SolveStatus::Infeasible || s.objective <= 0.0) {
        throw Error("solver_failure", "geometric-Renyi program failed");
    }
    sdp::VerifyReport v = sdp::verify(p, s);
    if (choi_m_out) *choi_m_out = s.values[gm];

    EntropyReport rep;
    rep.functional = "cond_geo(alpha=" + std::to_string(alpha) + ")";
    rep.value = -std::ldexp(std::log2(s.objective), ell);
    rep.method = Method::Sdp;
    rep.bound_kind = v.ok ? BoundKind::Exact : BoundKind::Lower;
    rep.dims = d;
    rep.solver_gap = s.duality_gap;
    rep.iterations = s.iterations;
    return rep;
}

double cond_geo_closed_form(const Channel& c, const Matrix& choi_m, double alpha) {
    const SystemDims& d = c.dims();
    const int n_b = static_cast<int>(choi_m.rows());
    const int n = static_cast<int>(d.choi_total());
    const int n_a = n / n_b;
    // clamp tiny negative eigenvalues from solver output
    SpectralDecomposition cm = eigh(choi_m);
    Matrix cleaned = cm.eigenvectors * cm.eigenvalues.cwiseMax(0.0).asDiagonal() *
                     cm.eigenvectors.adjoint();
    Matrix lifted = tensor_product(Matrix::Identity(n_a, n_a), cleaned);
    // G_{1-alpha}(Gamma, Q0) = G_alpha(Q0, Gamma); basing the mean on Q0 keeps
    // the generalized inverse consistent with the program's Schur complement
    // when Gamma is rank deficient.
    HermitianOperator g = weighted_geometric_mean(
        HermitianOperator(lifted), HermitianOperator(c.choi().matrix), alpha);
    std::vector<int> factors = d.choi_factors();
    std::vector<int> keep;
    for (int pi = 0; pi < d.party_count(); ++pi) keep.push_back(2 * pi);
    Matrix marg = partial_trace(g.matrix(), factors, keep);
    double norm = schatten_norm(marg, std::numeric_limits<double>::infinity());
    return -std::log2(norm) / (alpha - 1.0);
}

// ---------------------------------------------------------------------------
// NS-entropy: inf over pure psi of S(A | R B) at the channel output
// ---------------------------------------------------------------------------

namespace {

struct NsProblem {
    std::vector<Matrix> kraus_ext;  // (1_R (x) K)
    long d_r, d_in;
    std::vector<int> out_factors;   // [R, A_out, B_out]
    std::vector<int> rb;            // factors kept for the conditioning marginal
    int a_factor = 1;
};

NsProblem ns_setup(const Channel& c) {
    const SystemDims& d = c.dims();
    NsProblem np;
    np.d_in = d.in_total();
    np.d_r = np.d_in;  // |R| = |A'||B'|
    long out_a = d.parties[0].out_dim;
    long out_b = d.party_count() == 2 ? d.parties[1].out_dim : 1;
    np.out_factors = {static_cast<int>(np.d_r), static_cast<int>(out_a),
                      static_cast<int>(out_b)};
    np.rb = {0, 2};
    Matrix id_r = Matrix::Identity(np.d_r, np.d_r);
    for (const Matrix& k : c.kraus()) np.kraus_ext.push_back(tensor_product(id_r, k));
    return np;
}

Matrix ns_output(const NsProblem& np, const Vector& psi) {
    Matrix rho = Matrix::Zero(np.kraus_ext[0].rows(), np.kraus_ext[0].rows());
    for (const Matrix& k : np.kraus_ext) {
        Vector v = k * psi;
        rho.noalias() += v * v.adjoint();
    }
    return rho;
}

double ns_value(const NsProblem& np, const Vector& psi) {
    Matrix rho = ns_output(np, psi);
    return vn_entropy(rho) - vn_entropy(partial_trace(rho, np.out_factors, np.rb));
}

// gradient of ns_value with respect to conj(psi), up to tangent projection
Vector ns_gradient(const NsProblem& np, const Vector& psi) {
    Matrix rho = ns_output(np, psi);
    Matrix log_rho = matrix_log2(rho);
    Matrix rho_rb = partial_trace(rho, np.out_factors, np.rb);
    Matrix log_rb = matrix_log2(rho_rb);
    // lift log_rb from [R, B] to [R, A, B]
    int da = np.out_factors[1];
    Matrix lifted = tensor_product(log_rb, Matrix::Identity(da, da));  // [R, B, A]
    lifted = permute_factors(lifted, {np.out_factors[0], np.out_factors[2], da}, {0, 2, 1});
    Matrix g_op = -log_rho + lifted;
    Vector g = Vector::Zero(psi.size());
    for (const Matrix& k : np.kraus_ext) g.noalias() += k.adjoint() * (g_op * (k * psi));
    return g;
}

struct DescentResult {
    double value;
    Vector psi;
    int iterations = 0;
};

DescentResult ns_descend(const NsProblem& np, Vector psi, int max_iter, double ftol) {
    DescentResult res;
    double f = ns_value(np, psi);
    int stalls = 0;
    int it = 0;
    for (; it < max_iter; ++it) {
        Vector g = ns_gradient(np, psi);
        Vector gt = g - psi * psi.dot(g);
        double gn = gt.norm();
        if (gn < 1e-12) break;
        double step = 1.0 / std::max(1.0, gn);
        bool accepted = false;
        for (int h = 0; h < 40; ++h) {
            Vector trial = psi - step * gt;
            trial.normalize();
            double ft = ns_value(np, trial);
            if (ft < f - 1e-15) {
                if (f - ft < ftol) ++stalls; else stalls = 0;
                psi = std::move(trial);
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || stalls >= 4) break;
    }
    res.value = f;
    res.psi = std::move(psi);
    res.iterations = it;
    return res;
}

}  // namespace

EntropyReport ns_cond_entropy(const Channel& c, int restarts, std::uint64_t seed) {
    require_party_count(c, 1, 2, "ns_cond_entropy");
    NsProblem np = ns_setup(c);
    const long dim = np.d_r * np.d_in;

    double best = std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    Vector best_psi;
    int total_iters = 0;
    for (int r = 0; r < restarts; ++r) {
        rng::Engine eng(seed * 1000003ULL + static_cast<std::uint64_t>(r));
        Vector psi = rng::random_pure_state(eng, static_cast<int>(dim));
        DescentResult dr = ns_descend(np, std::move(psi), 250, 1e-10);
        total_iters += dr.iterations;
        best = std::min(best, dr.value);
        worst = std::max(worst, dr.value);
        if (dr.value <= best) best_psi = dr.psi;
    }
    // polish the best restart to high precision
    if (best_psi.size()) {
        DescentResult dr = ns_descend(np, best_psi, 4000, 1e-14);
        total_iters += dr.iterations;
        best = std::min(best, dr.value);
    }

    EntropyReport rep;
    rep.functional = "ns_cond";
    rep.value = best;
    rep.method = Method::Heuristic;
    rep.bound_kind = BoundKind::Upper;
    rep.dims = c.dims();
    rep.restart_spread = worst - best;
    rep.iterations = total_iters;
    return rep;
}

// ---------------------------------------------------------------------------
// Conditional max-entropy: cutting-plane outer SDP over the conditioning
// channel, heuristic inner search for the worst input
// ---------------------------------------------------------------------------

namespace {

struct MaxEntProblem {
    const Channel* chan;
    long d_r, d_in;
    int in_b = 1, out_b = 1;
    int n_b = 1;              // |B'||B| of the conditioning Choi
    Channel mix_and_hold_b;   // (R_A tensor id_{B'}), outputs on [A, B']
};

MaxEntProblem max_setup(const Channel& c) {
    MaxEntProblem mp;
    mp.chan = &c;
    const SystemDims& d = c.dims();
    mp.d_in = d.in_total();
    mp.d_r = mp.d_in;
    mp.in_b = d.party_count() == 2 ? d.parties[1].in_dim : 1;
    mp.out_b = d.party_count() == 2 ? d.parties[1].out_dim : 1;
    mp.n_b = mp.in_b * mp.out_b;
    SystemDims a_dims;
    a_dims.parties = {Party{"A", d.parties[0].in_dim, d.parties[0].out_dim}};
    Channel mixing_a = builders::completely_mixing_map(a_dims);
    mp.mix_and_hold_b = d.party_count() == 2
                            ? tensor(mixing_a, builders::identity(mp.in_b, "Bp"))
                            : mixing_a;
    return mp;
}

// Applies the map with Choi `gm` (on [in, out]) to `factor` of a state; linear
// in gm, so gm need not be PSD.
Matrix apply_choi_to_factor(const Matrix& state, const std::vector<int>& factors,
                            int factor, const Matrix& gm, int d_in, int d_out) {
    std::vector<int> out_factors = factors;
    out_factors[factor] = d_out;
    long left = 1, right = 1;
    for (int f = 0; f < factor; ++f) left *= factors[f];
    for (size_t f = factor + 1; f < factors.size(); ++f) right *= factors[f];
    long nout = left * d_out * right;
    Matrix out = Matrix::Zero(nout, nout);
    for (long l = 0; l < left; ++l)
        for (long l2 = 0; l2 < left; ++l2)
            for (int o = 0; o < d_out; ++o)
                for (int o2 = 0; o2 < d_out; ++o2)
                    for (long r = 0; r < right; ++r)
                        for (long r2 = 0; r2 < right; ++r2) {
                            Complex acc(0, 0);
                            for (int i = 0; i < d_in; ++i)
                                for (int i2 = 0; i2 < d_in; ++i2) {
                                    acc += gm(i * d_out + o, i2 * d_out + o2) *
                                           state((l * d_in + i) * right + r,
                                                 (l2 * d_in + i2) * right + r2);
                                }
                            out((l * d_out + o) * right + r,
                                (l2 * d_out + o2) * right + r2) = acc;
                        }
    return out;
}

// tr[ (id_R (x) R_A (x) M)(psi psi^dag) Pi_{N(psi)} ] for the Choi gm of M;
// linear in gm.
double max_overlap(const MaxEntProblem& mp, const Vector& psi, const Matrix& gm) {
    Matrix in = psi * psi.adjoint();
    Matrix rho = apply_to_state(*mp.chan, in, mp.d_r);
    Matrix pi = support_projector(HermitianOperator(rho)).matrix();
    // mixing on A, B' untouched: tau on [R, A, B']
    Matrix tau = apply_to_state(mp.mix_and_hold_b, in, mp.d_r);
    int out_a = mp.chan->dims().parties[0].out_dim;
    std::vector<int> tau_factors = {static_cast<int>(mp.d_r), out_a, mp.in_b};
    Matrix sig = apply_choi_to_factor(tau, tau_factors, 2, gm, mp.in_b, mp.out_b);
    return (sig * pi).trace().real();
}

}  // namespace

EntropyReport cond_max(const Channel& c, int restarts, std::uint64_t seed) {
    require_party_count(c, 1, 2, "cond_max");
    MaxEntProblem mp = max_setup(c);
    const long dim = mp.d_r * mp.d_in;
    rng::Engine eng(seed);

    // initial input set: maximally entangled + random states
    std::vector<Vector> inputs;
    {
        Vector me = Vector::Zero(dim);
        for (long i = 0; i < mp.d_in; ++i) me[i * mp.d_in + i] = 1.0;
        inputs.push_back(me / me.norm());
        for (int r = 0; r < 4; ++r)
            inputs.push_back(rng::random_pure_state(eng, static_cast<int>(dim)));
    }

    double t_best = 0.0;
    Matrix gm_best;
    double worst_seen = std::numeric_limits<double>::infinity();
    int rounds = 0;
    for (int round = 0; round < 12; ++round) {
        ++rounds;
        // outer SDP: maximize t s.t. overlap_j(GM) >= t for all collected inputs
        sdp::SdpProblem p;
        int gm = p.add_variable("GM", mp.n_b);
        int t = p.add_variable("t", 1);
        sdp::AffineExpr pos(mp.n_b);
        pos.add_var_block(gm, mp.n_b, 0);
        p.psd_constraints.push_back(pos);
        {
            int in_b = mp.in_b;
            int out_b = mp.out_b;
            sdp::AffineExpr eq(in_b);
            eq.add_partial_trace_var(gm, {in_b, out_b}, {0}, 0, 1.0);
            eq.add_constant(-Matrix::Identity(in_b, in_b));
            p.eq_constraints.push_back(eq);
        }
        for (const Vector& psi : inputs) {
            // overlap is linear in GM: evaluate it on the Hermitian basis
            sdp::AffineExpr e(1);
            Matrix basis = Matrix::Zero(mp.n_b, mp.n_b);
            for (int i = 0; i < mp.n_b; ++i)
                for (int j = i; j < mp.n_b; ++j) {
                    basis.setZero();
                    basis(i, j) += 0.5;
                    basis(j, i) += 0.5;
                    double re = max_overlap(mp, psi, basis);
                    basis.setZero();
                    basis(i, j) += Complex(0, 0.5);
                    basis(j, i) += Complex(0, -0.5);
                    double im = max_overlap(mp, psi, basis);
                    if (i == j) {
                        e.add_term(gm, 0, 0, i, i, re);
                    } else {
                        e.add_term(gm, 0, 0, i, j, Complex(re, im));
                        e.add_term(gm, 0, 0, j, i, Complex(re, -im));
                    }
                }
            e.add_scalar_times_identity(t, -1.0);
            p.psd_constraints.push_back(e);
        }
        p.sense = sdp::Sense::Maximize;
        p.add_objective_term(t, 0, 0, 1.0);
        sdp::SdpSolution s = sdp::solve(p);
        if (s.status == sdp::SolveStatus::Infeasible) {
            throw Error("solver_failure", "conditional max-entropy outer program failed");
        }
        t_best = s.objective;
        gm_best = s.values[gm];

        // inner search for the worst input at the current conditioning channel
        double worst = std::numeric_limits<double>::infinity();
        Vector worst_psi;
        for (int r = 0; r < restarts; ++r) {
            Vector psi = r == 0 ? inputs[0]
                                : rng::random_pure_state(eng, static_cast<int>(dim));
            double f = max_overlap(mp, psi, gm_best);
            double step = 0.3;
            for (int it = 0; it < 60 && step > 1e-6; ++it) {
                bool improved = false;
                for (int probe = 0; probe < 8; ++probe) {
                    Vector dir = rng::random_pure_state(eng, static_cast<int>(dim));
                    Vector trial = psi + step * dir;
                    trial.normalize();
                    double ft = max_overlap(mp, trial, gm_best);
                    if (ft < f - 1e-12) {
                        psi = std::move(trial);
                        f = ft;
                        improved = true;
                        break;
                    }
                }
                if (!improved) step *= 0.5;
            }
            if (f < worst) {
                worst = f;
                worst_psi = psi;
            }
        }
        worst_seen = worst;
        if (worst >= t_best - 1e-6) break;
        inputs.push_back(worst_psi);
    }

    double t_final = std::min(t_best, worst_seen);
    EntropyReport rep;
    rep.functional = "cond_max";
    rep.value = std::log2(std::max(t_final, 1e-300));
    rep.method = Method::Heuristic;
    rep.bound_kind = BoundKind::Upper;
    rep.dims = c.dims();
    rep.iterations = rounds;
    return rep;
}

// ---------------------------------------------------------------------------
// Mutual-information family
// ---------------------------------------------------------------------------

EntropyReport cmi_telecov(const Channel& c, bool allow_non_covariant) {
    require_party_count(c, 3, 3, "cmi_telecov");
    bool covariant = gate_covariance(c, allow_non_covariant);
    std::vector<int> factors = c.dims().choi_factors();
    Matrix phi = c.choi().state();
    // I[A;C|B] = I(R_A A ; C | R_B B R_C)
    double v = state_cmi(phi, factors, {0, 1}, {2, 3, 4}, {5});
    EntropyReport rep;
    rep.functional = "cmi";
    rep.value = v;
    rep.method = Method::ClosedForm;
    rep.bound_kind = covariant ? BoundKind::Exact : BoundKind::Upper;
    rep.dims = c.dims();
    return rep;
}

EntropyReport mi_telecov(const Channel& c, const std::vector<std::vector<int>>& groups) {
    bool covariant = gate_covariance(c, true);
    std::vector<int> factors = c.dims().choi_factors();
    std::vector<std::vector<int>> factor_groups;
    if (groups.empty()) {
        factor_groups = party_groups(c.dims());
    } else {
        for (const auto& g : groups) {
            std::vector<int> fg;
            for (int pi : g) {
                if (pi < 0 || pi >= c.dims().party_count()) {
                    throw Error("bad_group", "party index out of range");
                }
                fg.push_back(SystemDims::ref_factor(pi));
                fg.push_back(SystemDims::out_factor(pi));
            }
            factor_groups.push_back(std::move(fg));
        }
    }
    double v = state_multi_mutual_info(c.choi().state(), factors, factor_groups);
    EntropyReport rep;
    rep.functional = "mi";
    rep.value = v;
    rep.method = Method::ClosedForm;
    rep.bound_kind = covariant ? BoundKind::Exact : BoundKind::Lower;
    rep.dims = c.dims();
    return rep;
}

double mi_choi_lower_bound(const Channel& c) {
    return state_multi_mutual_info(c.choi().state(), c.dims().choi_factors(),
                                   party_groups(c.dims()));
}

EntropyReport mi_max_alternating(const Channel& c, int iters, std::uint64_t seed) {
    require_party_count(c, 2, 2, "mi_max_alternating");
    (void)seed;  // deterministic; seed kept for interface stability
    const SystemDims& d = c.dims();
    const int in_a = d.parties[0].in_dim, out_a = d.parties[0].out_dim;
    const int in_b = d.parties[1].in_dim, out_b = d.parties[1].out_dim;
    const int n_a = in_a * out_a, n_b = in_b * out_b;
    Matrix phi = c.choi().state();

    // one convex leg: with the other side's Choi state fixed, minimize t with
    // X = t * Gamma over X >= 0, tr_out X = t * 1, (X (x) sigma)/|in| >= Phi
    auto leg = [&](const Matrix& fixed_state, bool optimize_first, Matrix* out_state) {
        int nv = optimize_first ? n_a : n_b;
        int in_v = optimize_first ? in_a : in_b;
        int out_v = optimize_first ? out_a : out_b;
        sdp::SdpProblem p;
        int x = p.add_variable("X", nv);
        int t = p.add_variable("t", 1);
        sdp::AffineExpr pos(nv);
        pos.add_var_block(x, nv, 0);
        p.psd_constraints.push_back(pos);
        sdp::AffineExpr eq(in_v);
        eq.add_partial_trace_var(x, {in_v, out_v}, {0}, 0, 1.0);
        eq.add_scalar_times_identity(t, -1.0);
        p.eq_constraints.push_back(eq);
        sdp::AffineExpr dom(n_a * n_b);
        if (optimize_first) {
            dom.add_var_kron_constant(x, nv, fixed_state / in_v, 0);
        } else {
            dom.add_constant_kron_var(fixed_state / in_v, x, nv, 0);
        }
        dom.add_constant(-phi);
        p.psd_constraints.push_back(dom);
        p.add_objective_term(t, 0, 0, 1.0);
        sdp::SdpSolution s = sdp::solve(p);
        if (s.status == sdp::SolveStatus::Infeasible || s.objective <= 0.0) {
            throw Error("solver_failure", "max-mutual-information leg failed");
        }
        if (out_state) *out_state = s.values[x] / (s.objective * in_v);
        return std::log2(s.objective);
    };

    Matrix sigma2 = Matrix::Identity(n_b, n_b) / n_b;
    double value = std::numeric_limits<double>::infinity();
    int done = 0;
    for (int it = 0; it < iters; ++it) {
        ++done;
        Matrix sigma1;
        double v1 = leg(sigma2, true, &sigma1);
        double v2 = leg(sigma1, false, &sigma2);
        double v = std::min(v1, v2);
        if (std::abs(value - v) < 1e-6) {
            value = std::min(value, v);
            break;
        }
        value = std::min(value, v);
    }

    EntropyReport rep;
    rep.functional = "mi_max";
    rep.value = std::max(value, 0.0);
    rep.method = Method::Heuristic;
    rep.bound_kind = BoundKind::Upper;
    rep.dims = d;
    rep.iterations = done;
    return rep;
}

EntropyReport mi_based_cmi(const Channel& c, bool allow_non_covariant) {
    require_party_count(c, 3, 3, "mi_based_cmi");
    bool covariant = gate_covariance(c, allow_non_covariant);
    std::vector<int> factors = c.dims().choi_factors();
    Matrix phi = c.choi().state();
    // I[A;BC] on the full Choi state
    double i_abc = state_multi_mutual_info(phi, factors, {{0, 1}, {2, 3, 4, 5}});
    // I[A;B] on the marginal channel tr_C o N (factor 5 traced out)
    Matrix phi_marg = partial_trace(phi, factors, {0, 1, 2, 3, 4});
    std::vector<int> mfac = {factors[0], factors[1], factors[2], factors[3], factors[4]};
    double i_ab = state_multi_mutual_info(phi_marg, mfac, {{0, 1}, {2, 3, 4}});
    EntropyReport rep;
    rep.functional = "mi_based_cmi";
    rep.value = i_abc - i_ab;
    rep.method = Method::ClosedForm;
    rep.bound_kind = covariant ? BoundKind::Exact : BoundKind::Upper;
    rep.dims = c.dims();
    return rep;
}

double k_extendible_bound(const SystemDims& dims, int k) {
    if (k < 2) throw Error("bad_k", "k-extendibility bound needs k >= 2");
    double a_in = dims.parties[0].in_dim, a_out = dims.parties[0].out_dim;
    double b_in = dims.party_count() >= 2 ? dims.parties[1].in_dim : 1;
    double b_out = dims.party_count() >= 2 ? dims.parties[1].out_dim : 1;
    double first = (2.0 / k) * log2d(b_out) - log2d(a_out);
    double second = (1.0 / k) * (log2d(b_in) + log2d(b_out)) - log2d(a_in);
    return -std::min(first, second);
}

std::pair<double, double> quest_rates(const Channel& c, std::uint64_t seed) {
    double log_a = log2d(c.dims().parties[0].out_dim);
    double s_vn = cond_vn_telecov(c).value;
    double s_ns = ns_cond_entropy(c, 20, seed).value;
    return {-s_vn + log_a, -s_ns + log_a};
}

namespace {

double g2(double eps) {
    if (eps <= 0.0) return 0.0;
    return (1.0 + eps) * std::log2(1.0 + eps) - eps * std::log2(eps);
}

}  // namespace

double continuity_bound(double eps, const SystemDims& dims) {
    if (eps < 0.0 || eps > 1.0) throw Error("bad_eps", "epsilon must lie in [0, 1]");
    double a_in = dims.parties[0].in_dim, a_out = dims.parties[0].out_dim;
    return 2.0 * eps * log2d(a_in * a_out) + g2(eps);
}

double cmi_continuity_bound(double eps, const SystemDims& dims) {
    if (eps < 0.0 || eps > 1.0) throw Error("bad_eps", "epsilon must lie in [0, 1]");
    double a_in = dims.parties[0].in_dim, a_out = dims.parties[0].out_dim;
    double c_dim = dims.party_count() >= 3 ? dims.parties[2].out_dim : 1;
    double cap = std::min(a_in * a_out, c_dim);
    return 2.0 * eps * log2d(cap) + 2.0 * g2(eps);
}

}  // namespace chanent
