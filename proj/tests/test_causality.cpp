/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include "chanent/causality.hpp"
#include "chanent/random.hpp"

using namespace chanent;

TEST_CASE("semicausality of product channels") {
    // tensor() primes duplicate labels, so the parties are A and A'
    Channel prod = tensor(builders::identity(2), builders::depolarizing(0.4, 2));
    CausalityReport ab = semicausal_check(prod, "A", "A'");
    CausalityReport ba = semicausal_check(prod, "A'", "A");
    CHECK(ab.semicausal);
    CHECK(ba.semicausal);
    CHECK(ab.defect < 1e-10);
}

TEST_CASE("swap and cnot signal") {
    Channel sw = builders::swap_gate(2);
    CHECK_FALSE(semicausal_check(sw, "A", "B").semicausal);
    CHECK_FALSE(semicausal_check(sw, "B", "A").semicausal);
    CHECK(semicausal_check(sw, "A", "B").defect > 1e-3);

    // cnot signals control-to-target and, in the quantum case, target-to-control
    Channel cn = builders::cnot();
    CHECK_FALSE(semicausal_check(cn, "A", "B").semicausal);
    CHECK_FALSE(semicausal_check(cn, "B", "A").semicausal);
}

TEST_CASE("entropic signaling witness") {
    CausalityReport sw = signaling_witness(builders::swap_gate(2));
    CHECK(sw.witness_fired);
    REQUIRE(sw.witness_value.has_value());
    CHECK(*sw.witness_value == doctest::Approx(-3.0));
    CHECK(*sw.witness_threshold == doctest::Approx(-1.0));

    CHECK(signaling_witness(builders::cnot()).witness_fired);
    // identity gate sits exactly at the threshold and must not fire
    CHECK_FALSE(signaling_witness(builders::identity2(2)).witness_fired);
    // product channels never fire
    Channel prod = tensor(builders::depolarizing(0.2, 2), builders::identity(2));
    CHECK_FALSE(signaling_witness(prod).witness_fired);
}

TEST_CASE("witness firing implies a semicausality defect") {
    rng::Engine eng(53);
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}}};
    for (int i = 0; i < 10; ++i) {
        Channel c = rng::random_weyl_mixture(eng, dims);
        CausalityReport w = signaling_witness(c);
        if (w.witness_fired) {
            CHECK(semicausal_check(c, "A", "B").defect > 1e-6);
        }
    }
}

TEST_CASE("markov check on tripartite products") {
    Channel markov = tensor(tensor(builders::identity(2), builders::depolarizing(0.3, 2)),
                            builders::identity(2));
    MarkovReport m = markov_check(markov);
    CHECK(m.markov);
    CHECK(m.cmi == doctest::Approx(0.0).epsilon(1e-9));

    rng::Engine eng(59);
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}, {"C", 2, 2}}};
    Channel c = rng::random_weyl_mixture(eng, dims);
    MarkovReport r = markov_check(c);
    CHECK(r.cmi >= -1e-9);
}

TEST_CASE("petz recovery is exact on markov channels") {
    Channel markov = tensor(tensor(builders::depolarizing(0.2, 2), builders::identity(2)),
                            builders::depolarizing(0.7, 2));
    PetzReport rep = petz_recovery_report(markov);
    CHECK(rep.fidelity >= 1.0 - 1e-9);
    CHECK(rep.cmi == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.meets_bound);
}

TEST_CASE("petz recovery map is well formed") {
    rng::Engine eng(61);
    Matrix sigma = rng::random_state(eng, 4);
    Channel petz = petz_recovery(sigma, 2, 2);
    // recovers sigma itself from its F marginal
    Matrix sigma_f = partial_trace(sigma, {2, 2}, {1});
    Matrix rec = apply_to_state(petz, sigma_f);
    CHECK((rec - sigma).cwiseAbs().maxCoeff() < 1e-9);
    // trace preserving on the support of sigma_f
    rng::Engine eng2(62);
    Matrix rho = rng::random_state(eng2, 2);
    CHECK(apply_to_state(petz, rho).trace().real() == doctest::Approx(1.0).epsilon(1e-8));
}
