/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_DIVERGENCES_HPP
#define CHANENT_DIVERGENCES_HPP

#include <string>
#include <vector>

#include "chanent/linalg.hpp"

namespace chanent {

/// Value in bits; +inf (with the flag set) signals a support violation under
/// the definition in use.
struct DivergenceValue {
    double value = 0.0;
    bool support_violation = false;
    std::string method;

    bool finite() const { return !support_violation && std::isfinite(value); }
};

/// All logarithms are base 2; entropies are in bits.

double vn_entropy(const Matrix& rho);

/// S(rest | cond) = S(rho) - S(marginal on `cond` factors).
double state_cond_entropy(const Matrix& rho, const std::vector<int>& dims,
                          const std::vector<int>& cond);

/// I(A;B) = S(A) + S(B) - S(AB); the two groups must partition the factors.
double state_mutual_info(const Matrix& rho, const std::vector<int>& dims,
                         const std::vector<int>& group_a, const std::vector<int>& group_b);

/// I(G1;...;Gn) = sum S(G_i) - S(rho) for a partition into groups.
double state_multi_mutual_info(const Matrix& rho, const std::vector<int>& dims,
                               const std::vector<std::vector<int>>& groups);

/// I(A;C|B) = S(AB) + S(BC) - S(B) - S(ABC).
double state_cmi(const Matrix& rho, const std::vector<int>& dims,
                 const std::vector<int>& a, const std::vector<int>& b,
                 const std::vector<int>& c);

DivergenceValue umegaki(const Matrix& rho, const Matrix& sigma);
DivergenceValue d_max(const Matrix& rho, const Matrix& sigma);
DivergenceValue d_min(const Matrix& rho, const Matrix& sigma);
DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma, double alpha);
DivergenceValue geometric_renyi(const Matrix& rho, const Matrix& sigma, double alpha);
/// epsilon-hypothesis-testing relative entropy, solved as a semidefinite
/// program: -log2 min tr(Lambda sigma) s.t. 0 <= Lambda <= 1, tr(Lambda rho) >= 1-eps.
DivergenceValue hypothesis_testing(const Matrix& rho, const Matrix& sigma, double eps);

double fidelity(const Matrix& rho, const Matrix& sigma);
/// Unnormalized ||rho - sigma||_1.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double purified_distance(const Matrix& rho, const Matrix& sigma);

/// Diamond norm of the map whose (unnormalized, [in, out]-ordered) Choi
/// operator difference is `choi_diff`, via the standard dual semidefinite
/// formulation.
double diamond_norm(const Matrix& choi_diff, int in_dim, int out_dim);

}  // namespace chanent

#endif
