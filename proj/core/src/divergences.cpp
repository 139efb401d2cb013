/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/divergences.hpp"

#include <cmath>
#include <limits>

#include "chanent/sdp.hpp"

namespace chanent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// rho-weight outside supp(sigma); support violations are triggered only when
// this exceeds 1e-9 so that rank-deficient SDP output does not spuriously
// blow up.
double weight_outside_support(const Matrix& rho, const Matrix& sigma) {
    Matrix pi = support_projector(HermitianOperator(sigma)).matrix();
    Matrix q = Matrix::Identity(pi.rows(), pi.cols()) - pi;
    return std::abs((q * rho * q).trace().real());
}

DivergenceValue infinite(const char* method) {
    return DivergenceValue{kInf, true, method};
}

double entropy_of_eigs(const RealVector& eigs, double cutoff) {
    double s = 0.0;
    for (int i = 0; i < eigs.size(); ++i) {
        double lam = eigs[i];
        if (lam > cutoff) s -= lam * std::log2(lam);
    }
    return s;
}

}  // namespace

double vn_entropy(const Matrix& rho) {
    SpectralDecomposition d = eigh(rho);
    return entropy_of_eigs(d.eigenvalues, d.support_cutoff);
}

double state_cond_entropy(const Matrix& rho, const std::vector<int>& dims,
                          const std::vector<int>& cond) {
    if (cond.empty()) return vn_entropy(rho);
    return vn_entropy(rho) - vn_entropy(partial_trace(rho, dims, cond));
}

double state_mutual_info(const Matrix& rho, const std::vector<int>& dims,
                         const std::vector<int>& group_a,
                         const std::vector<int>& group_b) {
    return state_multi_mutual_info(rho, dims, {group_a, group_b});
}

double state_multi_mutual_info(const Matrix& rho, const std::vector<int>& dims,
                               const std::vector<std::vector<int>>& groups) {
    std::vector<bool> seen(dims.size(), false);
    double acc = -vn_entropy(rho);
    for (const auto& g : groups) {
        for (int f : g) {
            if (f < 0 || f >= static_cast<int>(dims.size()) || seen[f]) {
                throw Error("bad_split", "groups must partition the tensor factors");
            }
            seen[f] = true;
        }
        acc += vn_entropy(partial_trace(rho, dims, g));
    }
    for (bool s : seen) {
        if (!s) throw Error("bad_split", "groups must cover every tensor factor");
    }
    return acc;
}

double state_cmi(const Matrix& rho, const std::vector<int>& dims,
                 const std::vector<int>& a, const std::vector<int>& b,
                 const std::vector<int>& c) {
    auto join = [](std::vector<int> x, const std::vector<int>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    double sab = vn_entropy(partial_trace(rho, dims, join(a, b)));
    double sbc = vn_entropy(partial_trace(rho, dims, join(b, c)));
    double sb = b.empty() ? 0.0 : vn_entropy(partial_trace(rho, dims, b));
    double sabc = vn_entropy(partial_trace(rho, dims, join(join(a, b), c)));
    return sab + sbc - sb - sabc;
}

DivergenceValue umegaki(const Matrix& rho, const Matrix& sigma) {
    HermitianOperator hr(rho), hs(sigma);
    if (!is_psd(hr) || !is_psd(hs)) {
        throw Error("not_psd", "relative entropy requires PSD inputs");
    }
    if (weight_outside_support(rho, sigma) > 1e-9) return infinite("umegaki");
    double t1 = (rho * matrix_log2(rho)).trace().real();
    double t2 = (rho * matrix_log2(sigma)).trace().real();
    return DivergenceValue{t1 - t2, false, "umegaki"};
}

DivergenceValue d_max(const Matrix& rho, const Matrix& sigma) {
    if (weight_outside_support(rho, sigma) > 1e-9) return infinite("d_max");
    Matrix sih = matrix_inv_sqrt(sigma);
    double lam = schatten_norm(sih * rho * sih, std::numeric_limits<double>::infinity());
    return DivergenceValue{std::log2(lam), false, "d_max"};
}

DivergenceValue d_min(const Matrix& rho, const Matrix& sigma) {
    Matrix pi = support_projector(HermitianOperator(rho)).matrix();
    double overlap = (sigma * pi).trace().real();
    if (overlap <= 1e-12) return infinite("d_min");
    return DivergenceValue{-std::log2(overlap), false, "d_min"};
}

DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma, double alpha) {
    if (alpha <= 0.0 || alpha == 1.0) {
        throw Error("bad_alpha", "sandwiched Renyi requires alpha in (0,1) or (1,inf)");
    }
    if (alpha > 1.0 && weight_outside_support(rho, sigma) > 1e-9) {
        return infinite("sandwiched_renyi");
    }
    double e = (1.0 - alpha) / (2.0 * alpha);
    Matrix se = matrix_power(sigma, e);
    Matrix q = se * rho * se;
    // tr Q^alpha in the log domain so very large alpha does not overflow
    SpectralDecomposition qd = eigh(HermitianOperator(q));
    double lmax = qd.eigenvalues.maxCoeff();
    if (lmax <= 1e-300) return infinite("sandwiched_renyi");
    double scaled = 0.0;
    for (int i = 0; i < qd.eigenvalues.size(); ++i) {
        double l = qd.eigenvalues[i];
        if (l > lmax * tol::support_cutoff && l > 0.0) scaled += std::pow(l / lmax, alpha);
    }
    double log2_tr = alpha * std::log2(lmax) + std::log2(scaled);
    return DivergenceValue{log2_tr / (alpha - 1.0), false, "sandwiched_renyi"};
}

DivergenceValue geometric_renyi(const Matrix& rho, const Matrix& sigma, double alpha) {
    if (alpha <= 1.0 || alpha > 2.0) {
        throw Error("bad_alpha", "geometric Renyi implemented for alpha in (1,2]");
    }
    if (weight_outside_support(rho, sigma) > 1e-9) return infinite("geometric_renyi");
    // tr[ sigma^{1/2} (sigma^{-1/2} rho sigma^{-1/2})^alpha sigma^{1/2} ]
    //   = tr G_alpha(sigma, rho)
    HermitianOperator g =
        weighted_geometric_mean(HermitianOperator(sigma), HermitianOperator(rho), alpha);
    double tr = g.matrix().trace().real();
    if (tr <= 1e-300) return infinite("geometric_renyi");
    return DivergenceValue{std::log2(tr) / (alpha - 1.0), false, "geometric_renyi"};
}

DivergenceValue hypothesis_testing(const Matrix& rho, const Matrix& sigma, double eps) {
    if (eps < 0.0 || eps > 1.0) {
        throw Error("bad_eps", "epsilon must lie in [0, 1]");
    }
    const int n = static_cast<int>(rho.rows());
    sdp::SdpProblem p;
    int lam = p.add_variable("Lambda", n);
    // Lambda >= 0
    sdp::AffineExpr psd(n);
    psd.add_var_block(lam, n, 0);
    p.psd_constraints.push_back(psd);
    // 1 - Lambda >= 0
    sdp::AffineExpr ub(n);
    ub.add_constant(Matrix::Identity(n, n));
    ub.add_var_block(lam, n, 0, -1.0);
    p.psd_constraints.push_back(ub);
    // tr(Lambda rho) - (1 - eps) >= 0, as a 1x1 block
    sdp::AffineExpr lb(1);
    Matrix c(1, 1);
    c(0, 0) = -(1.0 - eps);
    lb.add_constant(c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lb.add_term(lam, 0, 0, i, j, rho(j, i));
    p.psd_constraints.push_back(lb);
    // minimize tr(Lambda sigma)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.add_objective_term(lam, i, j, sigma(j, i));

    sdp::SdpSolution s = sdp::solve(p, 1e-9);
    if (s.status == sdp::SolveStatus::Infeasible) {
        throw Error("solver_failure", "hypothesis-testing program reported infeasible");
    }
    // a zero optimum cannot be distinguished from solver noise at the gap
    // tolerance; values this small mean the divergence diverges
    if (s.objective <= 1e-7) return infinite("hypothesis_testing");
    return DivergenceValue{-std::log2(s.objective), false, "hypothesis_testing"};
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
    Matrix a = matrix_sqrt(rho) * matrix_sqrt(sigma);
    double f = schatten_norm(a, 1.0);
    return f * f;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    return schatten_norm(rho - sigma, 1.0);
}

double purified_distance(const Matrix& rho, const Matrix& sigma) {
    double f = std::clamp(fidelity(rho, sigma), 0.0, 1.0);
    return std::sqrt(1.0 - f);
}

double diamond_norm(const Matrix& choi_diff, int in_dim, int out_dim) {
    const int n = in_dim * out_dim;
    if (choi_diff.rows() != n || choi_diff.cols() != n) {
        throw Error("dim_mismatch", "Choi difference does not match in_dim * out_dim");
    }
    sdp::SdpProblem p;
    int y0 = p.add_variable("Y0", n);
    int y1 = p.add_variable("Y1", n);
    int t0 = p.add_variable("t0", 1);
    int t1 = p.add_variable("t1", 1);

    // [[Y0, -J], [-J^dag, Y1]] >= 0
    sdp::AffineExpr big(2 * n);
    big.add_var_block(y0, n, 0);
    big.add_var_block(y1, n, n);
    Matrix c = Matrix::Zero(2 * n, 2 * n);
    c.block(0, n, n, n) = -choi_diff;
    c.block(n, 0, n, n) = -choi_diff.adjoint();
    big.add_constant(c);
    p.psd_constraints.push_back(big);

    std::vector<int> factors = {in_dim, out_dim};
    for (auto [y, t] : {std::pair{y0, t0}, std::pair{y1, t1}}) {
        sdp::AffineExpr pos(n);
        pos.add_var_block(y, n, 0);
        p.psd_constraints.push_back(pos);
        // t * 1_in - tr_out Y >= 0
        sdp::AffineExpr cap(in_dim);
        cap.add_scalar_times_identity(t, 1.0);
        cap.add_partial_trace_var(y, factors, {0}, 0, -1.0);
        p.psd_constraints.push_back(cap);
    }
    p.add_objective_term(t0, 0, 0, 0.5);
    p.add_objective_term(t1, 0, 0, 0.5);

    sdp::SdpSolution s = sdp::solve(p);
    if (s.status == sdp::SolveStatus::Infeasible) {
        throw Error("solver_failure", "diamond-norm program reported infeasible");
    }
    return std::max(0.0, s.objective);
}

}  // namespace chanent
