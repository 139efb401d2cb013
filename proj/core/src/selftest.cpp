/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "chanent/causality.hpp"
#include "chanent/entropies.hpp"
#include "chanent/random.hpp"
#include "chanent/serialization.hpp"

namespace chanent::selftest {

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

std::string fmt(double v) { return serial::format_significant(v, 6); }

SystemDims one_party(const std::string& label, int d) {
    SystemDims dims;
    dims.parties = {Party{label, d, d}};
    return dims;
}

Channel random_product_bipartite(rng::Engine& eng) {
    Channel a = rng::random_weyl_mixture(eng, one_party("A", 2));
    Channel b = rng::random_weyl_mixture(eng, one_party("B", 2));
    return tensor(a, b);
}

// --------------------------------------------------------------------------

void swap_cond_entropy(Check& c, bool) {
    for (int d : {2, 3}) {
        auto t0 = std::chrono::steady_clock::now();
        double v = cond_vn_telecov(builders::swap_gate(d)).value;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        double want = -3.0 * std::log2(static_cast<double>(d));
        c.require(std::abs(v - want) <= 1e-9,
                  "swap(d=" + std::to_string(d) + ") value " + fmt(v) + " != " + fmt(want));
        c.require(secs < 1.0, "swap(d=" + std::to_string(d) + ") took " + fmt(secs) + " s");
    }
}

void identity_reference(Check& c, bool) {
    double v = cond_vn_telecov(builders::identity2(2)).value;
    c.require(std::abs(v + 1.0) <= 1e-9, "id2x2 value " + fmt(v) + " != -1");
}

void noisy_swap_curve(Check& c, bool fast) {
    const int points = fast ? 21 : 101;
    Channel swap = builders::swap_gate(2);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        double p = static_cast<double>(i) / (points - 1);
        double got = cond_vn_telecov(builders::white_noise_mixture(swap, p)).value;
        double want = cond_vn_noisy_swap_formula(2, p);
        worst = std::max(worst, std::abs(got - want));
    }
    c.require(worst <= 1e-8, "curve mismatch up to " + fmt(worst));
    c.require(std::abs(cond_vn_noisy_swap_formula(2, 1.0) + 3.0) <= 1e-12,
              "pure-SWAP endpoint != -3");
    c.require(std::abs(cond_vn_noisy_swap_formula(2, 0.0) - 1.0) <= 1e-12,
              "full-mixing endpoint != +1");
}

void cnot_endpoint(Check& c, bool) {
    Channel cnot = builders::cnot();
    double v = cond_vn_telecov(cnot).value;
    c.require(std::abs(v + 2.0) <= 1e-9, "cnot value " + fmt(v) + " != -2");
    // independent oracle: the Choi state is pure, so the value is
    // -S(R_B B) - log2|A'| with S(R_B B) the operator-Schmidt entropy of CNOT
    Matrix phi = cnot.choi().state();
    std::vector<int> f = cnot.dims().choi_factors();
    double purity_defect = std::abs((phi * phi).trace().real() - 1.0);
    c.require(purity_defect <= 1e-12, "cnot Choi state is not pure");
    double s_rb = vn_entropy(partial_trace(phi, f, {2, 3}));
    c.require(std::abs(s_rb - 1.0) <= 1e-9,
              "operator-Schmidt entropy " + fmt(s_rb) + " != 1");
}

void min_entropy_sdp(Check& c, bool) {
    struct Case {
        const char* spec;
        double want;
    } cases[] = {{"replacer:maxmix", 1.0}, {"id2x2", -1.0}};
    for (const auto& k : cases) {
        auto t0 = std::chrono::steady_clock::now();
        EntropyReport r = cond_min_sdp(serial::build_channel(k.spec));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        c.require(std::abs(r.value - k.want) <= 1e-5,
                  std::string(k.spec) + " value " + fmt(r.value) + " != " + fmt(k.want));
        c.require(r.solver_gap <= 1e-6,
                  std::string(k.spec) + " duality gap " + fmt(r.solver_gap));
        c.require(secs < 10.0, std::string(k.spec) + " took " + fmt(secs) + " s");
    }
}

void geometric_ordering(Check& c, bool fast) {
    const int points = fast ? 3 : 11;
    std::vector<int> ells = fast ? std::vector<int>{0, 2} : std::vector<int>{0, 2, 4};
    for (const char* base : {"swap:d=2", "cnot"}) {
        Channel u = serial::build_channel(base);
        for (int i = 0; i < points; ++i) {
            double p = static_cast<double>(i) / (points - 1);
            Channel mix = builders::unitary_identity_mixture(u, p);
            double prev = cond_min_sdp(mix).value;
            for (int ell : ells) {
                Matrix gm;
                EntropyReport r = cond_geo_sdp(mix, AlphaSchedule{ell}, &gm);
                c.require(r.value >= prev - 1e-5,
                          std::string(base) + " p=" + fmt(p) + " ordering violated at ell=" +
                              std::to_string(ell) + " (" + fmt(r.value) + " < " +
                              fmt(prev) + ")");
                prev = r.value;
                if (ell == 0) {
                    double closed = cond_geo_closed_form(mix, gm, 2.0);
                    c.require(std::abs(closed - r.value) <= 1e-5,
                              std::string(base) + " p=" + fmt(p) + " ell=0 closed form " +
                                  fmt(closed) + " vs sdp " + fmt(r.value));
                }
            }
        }
    }
}

void witness_soundness(Check& c, bool fast) {
    for (const char* spec : {"swap:d=2", "cnot"}) {
        CausalityReport r = signaling_witness(serial::build_channel(spec));
        c.require(r.witness_fired, std::string(spec) + " witness did not fire");
        c.require(r.defect > 1e-6,
                  std::string(spec) + " fired but semicausality defect is only " +
                      fmt(r.defect));
    }
    const int count = fast ? 20 : 100;
    rng::Engine eng(20240817);
    int fired = 0;
    for (int i = 0; i < count; ++i) {
        Channel prod = random_product_bipartite(eng);
        CausalityReport r = signaling_witness(prod);
        if (r.witness_fired) ++fired;
    }
    c.require(fired == 0, std::to_string(fired) + " false firings on product channels");
}

void semicausal_equality(Check& c, bool fast) {
    const int count = fast ? 5 : 20;
    const int restarts = fast ? 8 : 20;
    rng::Engine eng(911);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        Channel nb = rng::random_weyl_mixture(eng, one_party("B", 2));
        Channel ch = tensor(builders::identity(2, "A"), nb);
        double vn = cond_vn_telecov(ch).value;
        double ns = ns_cond_entropy(ch, restarts, 1000 + i).value;
        worst = std::max(worst, std::abs(vn - ns));
    }
    c.require(worst <= 1e-3, "worst |cond_vn - ns| = " + fmt(worst));
    Channel swap = builders::swap_gate(2);
    double gap = std::abs(cond_vn_telecov(swap).value -
                          ns_cond_entropy(swap, restarts, 7).value);
    c.require(gap >= 1.9, "swap gap " + fmt(gap) + " < 1.9");
    c.note("swap gap " + fmt(gap));
}

void strong_subadditivity(Check& c, bool fast) {
    const int count = fast ? 10 : 50;
    rng::Engine eng(5150);
    SystemDims tri;
    tri.parties = {Party{"A", 2, 2}, Party{"B", 2, 2}, Party{"C", 2, 2}};
    double min_cmi = 0.0, worst_eq = 0.0;
    for (int i = 0; i < count; ++i) {
        Channel ch = rng::random_weyl_mixture(eng, tri, 6);
        double cmi = cmi_telecov(ch).value;
        double delta = mi_based_cmi(ch).value;
        min_cmi = std::min(min_cmi, cmi);
        worst_eq = std::max(worst_eq, std::abs(cmi - delta));
    }
    c.require(min_cmi >= -1e-7, "CMI dipped to " + fmt(min_cmi));
    c.require(worst_eq <= 1e-6, "definitions differ by up to " + fmt(worst_eq));
}

void stein_rates(Check& c, bool) {
    for (int d : {2, 3}) {
        auto [ra, rb] = quest_rates(builders::swap_gate(d));
        double gap = ra - rb;
        double want = 2.0 * std::log2(static_cast<double>(d));
        c.require(std::abs(gap - want) <= 1e-8,
                  "swap(d=" + std::to_string(d) + ") rate gap " + fmt(gap) + " != " +
                      fmt(want));
    }
}

void divergence_properties(Check& c, bool fast) {
    const int count = fast ? 30 : 200;
    rng::Engine eng(31337);
    int violations = 0;
    std::string first;
    auto flag = [&](bool bad, const std::string& what) {
        if (bad) {
            ++violations;
            if (first.empty()) first = what;
        }
    };
    const double tol = 1e-8;
    for (int i = 0; i < count; ++i) {
        std::uniform_int_distribution<int> dd(2, 4);
        int d = dd(eng);
        Matrix rho = rng::random_state(eng, d);
        Matrix sig = rng::random_state(eng, d);

        double du = umegaki(rho, sig).value;
        double dmin = d_min(rho, sig).value;
        double dmax = d_max(rho, sig).value;
        double ds = sandwiched_renyi(rho, sig, 1.5).value;
        double dg = geometric_renyi(rho, sig, 1.5).value;

        // ordering chain
        flag(dmin > du + tol, "D_min > D");
        flag(du > ds + tol, "D > sandwiched(1.5)");
        flag(ds > dg + tol, "sandwiched > geometric");
        flag(dg > dmax + tol, "geometric > D_max");

        // monotonicity in alpha
        double s06 = sandwiched_renyi(rho, sig, 0.6).value;
        double s12 = sandwiched_renyi(rho, sig, 1.2).value;
        double s25 = sandwiched_renyi(rho, sig, 2.5).value;
        flag(s06 > s12 + tol, "alpha monotonicity 0.6 vs 1.2");
        flag(s12 > ds + tol, "alpha monotonicity 1.2 vs 1.5");
        flag(ds > s25 + tol, "alpha monotonicity 1.5 vs 2.5");

        // data processing under a random channel
        Channel ch = rng::random_channel(eng, one_party("A", d));
        Matrix crho = apply_to_state(ch, rho);
        Matrix csig = apply_to_state(ch, sig);
        flag(umegaki(crho, csig).value > du + tol, "DPI umegaki");
        flag(d_max(crho, csig).value > dmax + tol, "DPI d_max");
        flag(d_min(crho, csig).value > dmin + tol, "DPI d_min");
        flag(sandwiched_renyi(crho, csig, 0.6).value > s06 + tol, "DPI sandwiched 0.6");
        flag(sandwiched_renyi(crho, csig, 1.5).value > ds + tol, "DPI sandwiched 1.5");
        flag(geometric_renyi(crho, csig, 1.5).value > dg + tol, "DPI geometric");
    }
    c.require(violations == 0,
              std::to_string(violations) + " violations, first: " + first);
}

void petz_criterion(Check& c, bool fast) {
    const int count = fast ? 5 : 20;
    rng::Engine eng(2718);
    double worst_fid = 1.0;
    for (int i = 0; i < count; ++i) {
        Channel a = rng::random_channel(eng, one_party("A", 2));
        Channel b = rng::random_channel(eng, one_party("B", 2));
        Channel cc = rng::random_channel(eng, one_party("C", 2));
        Channel prod = tensor(tensor(a, b), cc);
        PetzReport r = petz_recovery_report(prod);
        worst_fid = std::min(worst_fid, r.fidelity);
    }
    c.require(worst_fid >= 1.0 - 1e-7,
              "Markov-product recovery fidelity dropped to " + fmt(worst_fid));
    // informational: non-Markov instances
    SystemDims tri;
    tri.parties = {Party{"A", 2, 2}, Party{"B", 2, 2}, Party{"C", 2, 2}};
    Channel nm = rng::random_weyl_mixture(eng, tri, 6);
    PetzReport r = petz_recovery_report(nm);
    c.note("non-Markov sample: fidelity " + fmt(r.fidelity) + ", 2^-CMI " +
           fmt(r.bound));
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&, bool)> fn;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "swap conditional entropy", swap_cond_entropy},
        {2, "identity-gate reference", identity_reference},
        {3, "noisy-SWAP curve", noisy_swap_curve},
        {4, "cnot endpoint", cnot_endpoint},
        {5, "conditional min-entropy SDP", min_entropy_sdp},
        {6, "geometric-Renyi ordering", geometric_ordering},
        {7, "signaling witness soundness", witness_soundness},
        {8, "semicausal equality", semicausal_equality},
        {9, "strong subadditivity", strong_subadditivity},
        {10, "Stein rates", stein_rates},
        {11, "divergence property suite", divergence_properties},
        {12, "Petz recovery", petz_criterion},
    };
    return list;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

CriterionResult run_one(int id, bool fast, std::uint64_t) {
    for (const Criterion& cr : criteria()) {
        if (cr.id != id) continue;
        CriterionResult res;
        res.id = cr.id;
        res.name = cr.name;
        Check check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.fn(check, fast);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.pass = check.pass;
        res.detail = check.detail.str();
        return res;
    }
    throw Error("bad_criterion", "no acceptance criterion with id " + std::to_string(id));
}

std::vector<CriterionResult> run_all(bool fast, std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (const Criterion& cr : criteria()) out.push_back(run_one(cr.id, fast, seed));
    return out;
}

}  // namespace chanent::selftest
