/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_ENTROPIES_HPP
#define CHANENT_ENTROPIES_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "chanent/channels.hpp"
#include "chanent/divergences.hpp"

namespace chanent {

enum class Method { ClosedForm, Sdp, Heuristic };
enum class BoundKind { Exact, Upper, Lower };

struct EntropyReport {
    std::string functional;
    double value = 0.0;
    Method method = Method::ClosedForm;
    BoundKind bound_kind = BoundKind::Exact;
    SystemDims dims;
    // diagnostics
    double solver_gap = 0.0;
    double restart_spread = 0.0;
    int iterations = 0;
};

/// alpha = 1 + 2^{-ell}, always in (1, 2].
struct AlphaSchedule {
    int ell = 0;
    double alpha() const;
};

/// Conditional von Neumann entropy of a tele-covariant bipartite channel via
/// its Choi state: S[A|B] = S(R_A A | R_B B)_Phi - log2|A'|. With
/// `allow_non_covariant` the same value is returned for any channel but
/// flagged as an upper bound.
EntropyReport cond_vn_telecov(const Channel& c, bool allow_non_covariant = false);

/// Closed form for the white-noise SWAP mixture (p = weight of the unitary).
double cond_vn_noisy_swap_formula(int d, double p);

/// Dimensional bounds (lower, upper) on the conditional entropy.
std::pair<double, double> cond_vn_bounds(const SystemDims& dims);

/// Conditional min-entropy via its semidefinite program.
EntropyReport cond_min_sdp(const Channel& c);

/// Conditional geometric Renyi entropy at alpha = 1 + 2^{-ell} via the chained
/// block program; returns the certified value and, through `choi_m_out`, the
/// optimizer's conditioning Choi operator when requested.
EntropyReport cond_geo_sdp(const Channel& c, const AlphaSchedule& schedule,
                           Matrix* choi_m_out = nullptr);

/// Closed form -(1/(alpha-1)) log2 || tr_AB G_{1-alpha}(Gamma, 1 (x) Gamma_M) ||_inf
/// at a fixed conditioning Choi operator; cross-checks the ell = 0 program.
double cond_geo_closed_form(const Channel& c, const Matrix& choi_m, double alpha);

/// Conditional max-entropy, heuristic inner-sup/outer-inf search.
EntropyReport cond_max(const Channel& c, int restarts = 6, std::uint64_t seed = 42);

/// NS-entropy S^{not->}[A|B] = inf over pure psi of S(A|RB) at the output,
/// |R| = |A'||B'|; seeded restarts + projected gradient descent. The reported
/// value upper-bounds the infimum.
EntropyReport ns_cond_entropy(const Channel& c, int restarts = 20,
                              std::uint64_t seed = 42);

/// Conditional mutual information I[A;C|B] of a tele-covariant tripartite
/// channel (parties ordered A, B, C) via its Choi state.
EntropyReport cmi_telecov(const Channel& c, bool allow_non_covariant = false);

/// Multipartite mutual information of a tele-covariant channel; groups list
/// party indices (default: every party its own group).
EntropyReport mi_telecov(const Channel& c,
                         const std::vector<std::vector<int>>& groups = {});

/// Choi-state mutual information, a lower bound valid for any channel.
double mi_choi_lower_bound(const Channel& c);

/// Max-mutual information of a bipartite channel by alternating minimization
/// over product conditioning channels; heuristic upper bound.
EntropyReport mi_max_alternating(const Channel& c, int iters = 40,
                                 std::uint64_t seed = 42);

/// MI-based conditional mutual information Delta[A;C|B] = I[A;BC] - I[A;B].
EntropyReport mi_based_cmi(const Channel& c, bool allow_non_covariant = false);

/// Lower bound on the conditional entropy of k-extendible tele-covariant
/// channels: -min{(2/k)log|B| - log|A|, (1/k)log|B'||B| - log|A'|}.
double k_extendible_bound(const SystemDims& dims, int k);

/// Stein-setting rate pair (R_a, R_b) = (-S[A|B] + log|A|, -S^{not->} + log|A|).
std::pair<double, double> quest_rates(const Channel& c, std::uint64_t seed = 42);

/// AFW-type continuity bounds: 2 eps log|A'||A| + g2(eps), and the CMI variant
/// 2 eps log min{|A'||A|, |C|} + 2 g2(eps), with g2(e) = (1+e)log(1+e) - e log e.
double continuity_bound(double eps, const SystemDims& dims);
double cmi_continuity_bound(double eps, const SystemDims& dims);

}  // namespace chanent

#endif
