/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>

#include "chanent/entropies.hpp"
#include "chanent/random.hpp"
#include "chanent/serialization.hpp"

using namespace chanent;

TEST_CASE("conditional entropy of unitary gates") {
    EntropyReport sw = cond_vn_telecov(builders::swap_gate(2));
    CHECK(sw.value == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(sw.bound_kind == BoundKind::Exact);

    EntropyReport sw3 = cond_vn_telecov(builders::swap_gate(3));
    CHECK(sw3.value == doctest::Approx(-3.0 * std::log2(3.0)).epsilon(1e-10));

    CHECK(cond_vn_telecov(builders::identity2(2)).value == doctest::Approx(-1.0));
    CHECK(cond_vn_telecov(builders::cnot()).value == doctest::Approx(-2.0));
}

TEST_CASE("non tele-covariant channels need the explicit opt-in") {
    Matrix t = Matrix::Identity(2, 2);
    t(1, 1) = std::exp(Complex(0, M_PI / 4.0));
    Matrix u = Matrix::Identity(4, 4);
    u.block(2, 2, 2, 2) = t;
    Channel c = builders::unitary(u, SystemDims{{{"A", 2, 2}, {"B", 2, 2}}});
    CHECK_THROWS_AS(cond_vn_telecov(c), Error);
    EntropyReport r = cond_vn_telecov(c, true);
    CHECK(r.bound_kind == BoundKind::Upper);
}

TEST_CASE("noisy swap closed form") {
    CHECK(cond_vn_noisy_swap_formula(2, 1.0) == doctest::Approx(-3.0));
    CHECK(cond_vn_noisy_swap_formula(2, 0.0) == doctest::Approx(1.0));
    // agrees with the Choi-state evaluation of the actual mixture
    for (double p : {0.25, 0.5, 0.9}) {
        Channel c = builders::white_noise_mixture(builders::swap_gate(2), p);
        CHECK(cond_vn_telecov(c).value ==
              doctest::Approx(cond_vn_noisy_swap_formula(2, p)).epsilon(1e-10));
    }
}

TEST_CASE("dimensional bounds") {
    auto [lo, hi] = cond_vn_bounds(SystemDims{{{"A", 2, 2}, {"B", 2, 2}}});
    CHECK(lo == doctest::Approx(-3.0));
    CHECK(hi == doctest::Approx(1.0));
    CHECK(cond_vn_telecov(builders::swap_gate(2)).value >= lo - 1e-12);
}

TEST_CASE("conditional min-entropy program") {
    EntropyReport rep = cond_min_sdp(serial::build_channel("replacer:maxmix"));
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(rep.bound_kind == BoundKind::Exact);
    CHECK(rep.solver_gap <= 1e-6);

    EntropyReport id = cond_min_sdp(builders::identity2(2));
    CHECK(id.value == doctest::Approx(-1.0).epsilon(1e-5));

    // min-entropy lower-bounds the von Neumann value
    Channel cn = builders::cnot();
    CHECK(cond_min_sdp(cn).value <= cond_vn_telecov(cn).value + 1e-6);
}

TEST_CASE("geometric renyi program at the coarsest level") {
    Channel c = builders::unitary_identity_mixture(builders::swap_gate(2), 0.5);
    AlphaSchedule sched{0};  // alpha = 2
    Matrix choi_m;
    EntropyReport rep = cond_geo_sdp(c, sched, &choi_m);
    double closed = cond_geo_closed_form(c, choi_m, sched.alpha());
    CHECK(rep.value == doctest::Approx(closed).epsilon(1e-5));
    // sandwiched by min-entropy and the Choi-state upper bound (the mixture of
    // swap and identity is not tele-covariant, hence the explicit opt-in)
    CHECK(cond_min_sdp(c).value <= rep.value + 1e-5);
    CHECK(rep.value <= cond_vn_telecov(c, true).value + 1e-4);
}

TEST_CASE("conditional max-entropy heuristic") {
    EntropyReport rep = cond_max(serial::build_channel("replacer:maxmix"), 4, 42);
    CHECK(rep.value == doctest::Approx(1.0).epsilon(0.05));
    // dominates the von Neumann value
    Channel cn = builders::cnot();
    CHECK(cond_max(cn, 4, 42).value >= cond_vn_telecov(cn).value - 0.05);
}

TEST_CASE("no-signaling-constrained entropy") {
    EntropyReport sw = ns_cond_entropy(builders::swap_gate(2), 8, 42);
    CHECK(sw.value == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(ns_cond_entropy(builders::identity2(2), 6, 42).value ==
          doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(ns_cond_entropy(serial::build_channel("replacer:maxmix"), 6, 42).value ==
          doctest::Approx(1.0).epsilon(1e-6));
    // never below the unconstrained conditional entropy
    Channel cn = builders::cnot();
    CHECK(ns_cond_entropy(cn, 6, 42).value >= cond_vn_telecov(cn).value - 1e-8);
}

TEST_CASE("channel mutual information") {
    CHECK(mi_telecov(builders::swap_gate(2)).value == doctest::Approx(4.0));
    CHECK(mi_telecov(builders::cnot()).value == doctest::Approx(2.0));
    // product channels carry no cross mutual information
    Channel prod = tensor(builders::identity(2), builders::depolarizing(0.5, 2));
    CHECK(mi_telecov(prod).value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(mi_choi_lower_bound(prod) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("tripartite conditional mutual information") {
    Channel prod = tensor(tensor(builders::identity(2), builders::depolarizing(0.3, 2)),
                          builders::identity(2));
    EntropyReport cmi = cmi_telecov(prod);
    CHECK(cmi.value == doctest::Approx(0.0).epsilon(1e-9));
    // random tripartite Weyl mixtures: nonnegative, and equal to the MI-based form
    rng::Engine eng(47);
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}, {"C", 2, 2}}};
    for (int i = 0; i < 3; ++i) {
        Channel c = rng::random_weyl_mixture(eng, dims);
        double v = cmi_telecov(c).value;
        CHECK(v >= -1e-9);
        CHECK(mi_based_cmi(c).value == doctest::Approx(v).epsilon(1e-8));
    }
}

TEST_CASE("max mutual information by alternation") {
    Channel prod = tensor(builders::depolarizing(0.5, 2), builders::depolarizing(0.5, 2));
    EntropyReport rep = mi_max_alternating(prod, 5, 42);
    CHECK(std::abs(rep.value) < 1e-3);
    // upper-bounds the Choi mutual information for the swap gate
    Channel sw = builders::swap_gate(2);
    CHECK(mi_max_alternating(sw, 6, 42).value >= mi_telecov(sw).value - 1e-4);
}

TEST_CASE("rate pair and gap") {
    auto [ra, rb] = quest_rates(builders::swap_gate(2));
    CHECK(ra == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(rb == doctest::Approx(2.0).epsilon(1e-6));
    // product channel has no gap
    auto [pa, pb] = quest_rates(builders::identity2(2));
    CHECK(pa == doctest::Approx(pb).epsilon(1e-6));
}

TEST_CASE("auxiliary bounds") {
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}}};
    // k-extendibility bound weakens monotonically with k
    double prev = k_extendible_bound(dims, 2);
    for (int k = 3; k <= 6; ++k) {
        double cur = k_extendible_bound(dims, k);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    // continuity bounds vanish at eps = 0 and grow monotonically
    CHECK(continuity_bound(0.0, dims) == doctest::Approx(0.0));
    CHECK(cmi_continuity_bound(0.0, dims) == doctest::Approx(0.0));
    CHECK(continuity_bound(0.1, dims) > 0.0);
    CHECK(continuity_bound(0.2, dims) > continuity_bound(0.1, dims));
}
