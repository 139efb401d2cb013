/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/causality.hpp"

#include <cmath>
#include <limits>

#include "chanent/divergences.hpp"

namespace chanent {

CausalityReport semicausal_check(const Channel& c, const std::string& from_in,
                                 const std::string& to_out) {
    const SystemDims& d = c.dims();
    if (d.party_count() != 2) {
        throw Error("bad_arity", "semicausal_check expects a bipartite channel");
    }
    int p = d.index_of(from_in);
    int q = d.index_of(to_out);
    if (p < 0 || q < 0) {
        throw Error("label_not_found", "unknown party label in semicausality query");
    }
    if (p == q) {
        throw Error("bad_labels", "from/to must name distinct parties");
    }

    std::vector<int> factors = d.choi_factors();
    const int out_p = SystemDims::out_factor(p);
    std::vector<int> keep;
    for (int f = 0; f < static_cast<int>(factors.size()); ++f) {
        if (f != out_p) keep.push_back(f);
    }
    Matrix m = partial_trace(c.choi().matrix, factors, keep);
    // position of R_p inside the reduced factor list (kept factors stay ordered)
    int rp_pos = 0;
    std::vector<int> mfac;
    for (size_t i = 0; i < keep.size(); ++i) {
        mfac.push_back(factors[keep[i]]);
        if (keep[i] == SystemDims::ref_factor(p)) rp_pos = static_cast<int>(i);
    }
    const int d_rp = mfac[rp_pos];
    std::vector<int> keep_x;
    for (int i = 0; i < static_cast<int>(mfac.size()); ++i) {
        if (i != rp_pos) keep_x.push_back(i);
    }
    Matrix x = partial_trace(m, mfac, keep_x) / static_cast<double>(d_rp);
    // rebuild 1_{R_p} (x) X in the reduced ordering
    long left = 1, right = 1;
    for (int i = 0; i < rp_pos; ++i) left *= mfac[i];
    for (size_t i = rp_pos + 1; i < mfac.size(); ++i) right *= mfac[i];
    // X lives on [left, right]; lift identity into the middle slot
    Matrix lifted;
    if (left == 1) {
        lifted = tensor_product(Matrix::Identity(d_rp, d_rp), x);
    } else if (right == 1) {
        lifted = tensor_product(x, Matrix::Identity(d_rp, d_rp));
    } else {
        Matrix t = tensor_product(x, Matrix::Identity(d_rp, d_rp));  // [L, R, Rp]
        lifted = permute_factors(t, {static_cast<int>(left), static_cast<int>(right), d_rp},
                                 {0, 2, 1});
    }
    double defect =
        schatten_norm(m - lifted, std::numeric_limits<double>::infinity());

    CausalityReport rep;
    rep.from_in = from_in;
    rep.to_out = to_out;
    rep.defect = defect;
    rep.semicausal = defect <= 1e-8;
    return rep;
}

CausalityReport signaling_witness(const Channel& c) {
    const SystemDims& d = c.dims();
    if (d.party_count() != 2) {
        throw Error("bad_arity", "signaling_witness expects a bipartite channel");
    }
    EntropyReport e = cond_vn_telecov(c);  // throws unless the value is exact
    double threshold = -std::log2(static_cast<double>(d.parties[0].out_dim));
    CausalityReport rep =
        semicausal_check(c, d.parties[0].label, d.parties[1].label);
    rep.witness_value = e.value;
    rep.witness_threshold = threshold;
    rep.witness_fired = e.value < threshold - 1e-9;
    return rep;
}

MarkovReport markov_check(const Channel& c, double tol) {
    EntropyReport e = cmi_telecov(c);
    MarkovReport rep;
    rep.cmi = e.value;
    rep.tol = tol;
    rep.markov = e.value <= tol;
    rep.approx_markov = rep.markov;
    return rep;
}

Channel petz_recovery(const Matrix& sigma_ef, int d_e, int d_f) {
    if (sigma_ef.rows() != static_cast<long>(d_e) * d_f) {
        throw Error("dim_mismatch", "sigma_EF does not match d_e * d_f");
    }
    HermitianOperator s_ef(sigma_ef);
    if (!is_psd(s_ef)) throw Error("not_psd", "sigma_EF must be PSD");
    Matrix s_f = partial_trace(sigma_ef, {d_e, d_f}, {1});
    Matrix root = matrix_sqrt(s_ef.matrix());
    Matrix f_isqrt = matrix_inv_sqrt(s_f);
    std::vector<Matrix> kraus;
    for (int e = 0; e < d_e; ++e) {
        Matrix embed = Matrix::Zero(d_e * d_f, d_f);
        embed.block(e * d_f, 0, d_f, d_f) = f_isqrt;
        kraus.push_back(root * embed);
    }
    SystemDims dims;
    dims.parties = {Party{"F", d_f, d_e * d_f}};
    // trace preserving only on supp(sigma_F); skip the global TP validation
    Channel ch(dims, std::move(kraus), false);
    ch.set_name("petz");
    return ch;
}

PetzReport petz_recovery_report(const Channel& c) {
    const SystemDims& d = c.dims();
    if (d.party_count() != 3) {
        throw Error("bad_arity", "petz_recovery_report expects a tripartite channel");
    }
    std::vector<int> f = d.choi_factors();
    Matrix phi = c.choi().state();
    // reorder to [A-group, C, B-group] with B-group = (R_B, B, R_C)
    Matrix phi_p = permute_factors(phi, f, {0, 1, 5, 2, 3, 4});
    int d_a = f[0] * f[1];
    int d_c = f[5];
    int d_b = f[2] * f[3] * f[4];
    std::vector<int> pfac = {d_a, d_c, d_b};
    Matrix sigma_cb = partial_trace(phi_p, pfac, {1, 2});
    Channel recovery = petz_recovery(sigma_cb, d_c, d_b);
    Matrix marginal = partial_trace(phi_p, pfac, {0, 2});
    Matrix recovered = apply_to_state(recovery, marginal, d_a);

    PetzReport rep;
    rep.fidelity = fidelity(recovered, phi_p);
    rep.cmi = state_cmi(phi, f, {0, 1}, {2, 3, 4}, {5});
    rep.bound = std::exp2(-rep.cmi);
    rep.meets_bound = rep.fidelity >= rep.bound - 1e-9;
    return rep;
}

}  // namespace chanent
