/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_CAUSALITY_HPP
#define CHANENT_CAUSALITY_HPP

#include <optional>
#include <string>

#include "chanent/channels.hpp"
#include "chanent/entropies.hpp"

namespace chanent {

struct CausalityReport {
    std::string from_in;
    std::string to_out;
    bool semicausal = false;
    /// || tr_A Gamma - 1_{R_A} (x) X ||_inf at the best factor X.
    double defect = 0.0;
    /// S[A|B] compared against -log|A| when the witness path is used.
    std::optional<double> witness_value;
    std::optional<double> witness_threshold;
    bool witness_fired = false;
};

/// Tests whether signaling from input `from_in` to the outputs of the other
/// party is impossible: tr_A Gamma factors as 1_{R_A} (x) X.
CausalityReport semicausal_check(const Channel& c, const std::string& from_in,
                                 const std::string& to_out);

/// Entropic signaling witness: fires iff the exact conditional entropy
/// satisfies S[A|B] < -log|A|; only closed-form values are used.
CausalityReport signaling_witness(const Channel& c);

struct MarkovReport {
    bool markov = false;
    bool approx_markov = false;
    double cmi = 0.0;
    double tol = 0.0;
};

/// A tripartite channel is Markov when I[A;C|B] vanishes.
MarkovReport markov_check(const Channel& c, double tol = 1e-7);

/// Petz recovery map for extending a state on EF conditioned on F:
///   X |-> sigma_EF^{1/2} (1_E (x) sigma_F^{-1/2} X sigma_F^{-1/2}) sigma_EF^{1/2}
/// given sigma_EF on factors [E, F] (dims d_e, d_f). The returned channel maps
/// F to E (x) F and is trace preserving on supp(sigma_F).
Channel petz_recovery(const Matrix& sigma_ef, int d_e, int d_f);

struct PetzReport {
    double fidelity = 0.0;
    double cmi = 0.0;
    double bound = 0.0;  // 2^{-cmi}
    bool meets_bound = false;
};

/// Applies the B -> (B, C) Petz map built from the Choi state of a tripartite
/// channel to its AB marginal and reports the recovery fidelity against the
/// full Choi state, alongside 2^{-CMI} (informational; the bound is for a
/// universal recovery map and is not asserted here).
PetzReport petz_recovery_report(const Channel& c);

}  // namespace chanent

#endif
