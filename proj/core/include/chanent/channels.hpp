/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_CHANNELS_HPP
#define CHANENT_CHANNELS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chanent/linalg.hpp"

namespace chanent {

/// One party of a multipartite channel: input system (primed in the usual
/// notation) and output system. A trivial side has dimension 1.
struct Party {
    std::string label;
    int in_dim = 1;
    int out_dim = 1;

    bool operator==(const Party&) const = default;
};

/// Labeled input/output dimensions with the tensor-factor ordering contract.
/// The Choi operator lives on factors [R_1, O_1, R_2, O_2, ...] where R_i is a
/// reference copy of party i's input and O_i its output; reference systems
/// precede their outputs.
struct SystemDims {
    std::vector<Party> parties;

    int party_count() const { return static_cast<int>(parties.size()); }
    long in_total() const;
    long out_total() const;
    long choi_total() const { return in_total() * out_total(); }

    /// Factor dimension list of the Choi operator, interleaved order.
    std::vector<int> choi_factors() const;
    /// Choi factor indices of party p's reference (2p) and output (2p+1).
    static int ref_factor(int party) { return 2 * party; }
    static int out_factor(int party) { return 2 * party + 1; }

    int index_of(const std::string& label) const;  // -1 when absent
    void validate() const;

    bool operator==(const SystemDims&) const = default;
};

SystemDims concat(const SystemDims& a, const SystemDims& b);

/// Choi operator in the unnormalized convention Gamma^N = N(Gamma), stored on
/// the interleaved factor ordering of SystemDims.
struct ChoiOperator {
    Matrix matrix;
    SystemDims dims;

    /// Choi state Phi^N = Gamma^N / |in|.
    Matrix state() const { return matrix / static_cast<double>(dims.in_total()); }
};

/// Completely positive map stored as a Kraus list. `trace_preserving` is false
/// only for deliberately non-CPTP objects such as the completely mixing map.
class Channel {
public:
    Channel() = default;
    Channel(SystemDims dims, std::vector<Matrix> kraus, bool trace_preserving = true);

    const SystemDims& dims() const { return dims_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    bool trace_preserving_intended() const { return trace_preserving_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    // Write-once Choi cache; recomputation is idempotent so the race is benign.
    const ChoiOperator& choi() const;

private:
    SystemDims dims_;
    std::vector<Matrix> kraus_;
    bool trace_preserving_ = true;
    std::string name_;
    mutable std::shared_ptr<const ChoiOperator> choi_cache_;
};

struct CptpReport {
    bool ok = false;
    bool completely_positive = false;
    bool trace_preserving = false;
    double choi_min_eigenvalue = 0.0;
    double trace_defect = 0.0;  // || tr_out Gamma - 1_R ||_inf
};

ChoiOperator choi_of(const Channel& c);
Channel channel_from_choi(const ChoiOperator& g);
CptpReport validate_cptp(const Channel& c);

Channel compose(const Channel& second, const Channel& first);
Channel tensor(const Channel& a, const Channel& b);

/// tr_drop composed with c, as a Channel; dropped outputs become trivial.
Channel reduced_channel(const Channel& c, const std::vector<std::string>& drop);

/// Applies the channel: rho lives on R (x) in with an optional reference
/// factor of dimension ref_dim on which the map acts as the identity.
Matrix apply_to_state(const Channel& c, const Matrix& rho, long ref_dim = 1);

struct TeleCovarianceReport {
    bool covariant = false;
    double worst_defect = 0.0;
    int checked_elements = 0;
};

/// A covariance group element: input unitary (on in_total) with, optionally,
/// a known output correction. When corrections are absent they are searched
/// among products of Weyl operators on the outputs.
struct CovariancePair {
    Matrix input_unitary;
    std::optional<Matrix> output_unitary;
};

/// Checks tele-covariance against the supplied group; by default the group is
/// the product discrete Weyl-Heisenberg set on each input party and candidate
/// corrections are products of output Weyl operators.
TeleCovarianceReport tele_covariance_check(const Channel& c,
                                           const std::vector<CovariancePair>& group = {});

/// Discrete Weyl operator X^x Z^z on dimension d.
Matrix weyl_operator(int d, int x, int z);

namespace builders {

Channel identity(int d, const std::string& label = "A");
/// Two-party identity gate id (x) id.
Channel identity2(int d = 2);
Channel swap_gate(int d = 2);
Channel cnot();
Channel unitary(const Matrix& u, SystemDims dims);
/// rho |-> tr(rho) sigma on the given dims (sigma on the output space).
Channel replacer(const Matrix& sigma, SystemDims dims);
/// The completely mixing map R: X |-> tr(X) 1 (completely positive but not
/// trace preserving; Choi operator is the identity). Flagged non-CPTP.
Channel completely_mixing_map(SystemDims dims);
/// (1-p) replacer-to-pi + p U(.)U^dag for a unitary channel U.
Channel white_noise_mixture(const Channel& unitary_channel, double p);
/// p U(.)U^dag + (1-p) id, a mixture of two unitary gates.
Channel unitary_identity_mixture(const Channel& unitary_channel, double p);
/// Single-party depolarizing: (1-p) id + p replacer-to-pi.
Channel depolarizing(double p, int d = 2);
/// Mixture of products of Weyl operators (a Pauli channel for d = 2); always
/// tele-covariant. `weights[i]` multiplies the Weyl product indexed by
/// `indices[i]` (one (x, z) pair per party).
Channel weyl_mixture(const SystemDims& dims, const std::vector<double>& weights,
                     const std::vector<std::vector<std::pair<int, int>>>& indices);

}  // namespace builders

}  // namespace chanent

#endif
