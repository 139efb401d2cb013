/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>
#include <limits>

#include "chanent/channels.hpp"
#include "chanent/divergences.hpp"
#include "chanent/random.hpp"

using namespace chanent;

namespace {

Matrix max_entangled(int d) {
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
    return v * v.adjoint();
}

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("von Neumann entropy") {
    CHECK(vn_entropy(diag2(1.0, 0.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(vn_entropy(diag2(0.5, 0.5)) == doctest::Approx(1.0));
    CHECK(vn_entropy(Matrix::Identity(8, 8) / 8.0) == doctest::Approx(3.0));
}

TEST_CASE("state conditional entropy and mutual information") {
    Matrix phi = max_entangled(2);
    CHECK(state_cond_entropy(phi, {2, 2}, {1}) == doctest::Approx(-1.0));
    CHECK(state_mutual_info(phi, {2, 2}, {0}, {1}) == doctest::Approx(2.0));
    rng::Engine eng(23);
    Matrix a = rng::random_state(eng, 2);
    Matrix b = rng::random_state(eng, 3);
    Matrix ab = tensor_product(a, b);
    CHECK(state_mutual_info(ab, {2, 3}, {0}, {1}) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(state_cond_entropy(ab, {2, 3}, {1}) == doctest::Approx(vn_entropy(a)));
    // groups must partition the factors
    CHECK_THROWS_AS(state_multi_mutual_info(ab, {2, 3}, {{0}, {0, 1}}), Error);
}

TEST_CASE("conditional mutual information of a markov state vanishes") {
    rng::Engine eng(29);
    Matrix ab = rng::random_state(eng, 4);
    Matrix c = rng::random_state(eng, 2);
    Matrix abc = tensor_product(ab, c);
    // A-C are independent given anything in a product across the B|C cut
    CHECK(state_cmi(abc, {2, 2, 2}, {0}, {1}, {2}) == doctest::Approx(0.0).epsilon(1e-9));
    // CMI is nonnegative (strong subadditivity) on random tripartite states
    Matrix rho = rng::random_state(eng, 8);
    CHECK(state_cmi(rho, {2, 2, 2}, {0}, {1}, {2}) >= -1e-9);
}

TEST_CASE("umegaki relative entropy") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    CHECK(umegaki(pi2, pi2).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(umegaki(diag2(1.0, 0.0), pi2).value == doctest::Approx(1.0));
    Matrix phi = max_entangled(2);
    CHECK(umegaki(phi, Matrix::Identity(4, 4) / 4.0).value == doctest::Approx(2.0));
    // support violation -> +inf
    DivergenceValue dv = umegaki(pi2, diag2(1.0, 0.0));
    CHECK(dv.support_violation);
    CHECK_FALSE(dv.finite());
}

TEST_CASE("d_max and d_min") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    Matrix e0 = diag2(1.0, 0.0);
    CHECK(d_max(e0, pi2).value == doctest::Approx(1.0));
    CHECK(d_min(e0, pi2).value == doctest::Approx(1.0));
    CHECK(d_max(pi2, e0).support_violation);
    // orthogonal supports: d_min infinite
    CHECK(d_min(e0, diag2(0.0, 1.0)).support_violation);
    // ordering D_min <= D <= D_max on random pairs
    rng::Engine eng(31);
    for (int i = 0; i < 5; ++i) {
        Matrix r = rng::random_state(eng, 3);
        Matrix s = rng::random_state(eng, 3);
        double lo = d_min(r, s).value;
        double mid = umegaki(r, s).value;
        double hi = d_max(r, s).value;
        CHECK(lo <= mid + 1e-8);
        CHECK(mid <= hi + 1e-8);
    }
}

TEST_CASE("sandwiched renyi divergence") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    CHECK(sandwiched_renyi(pi2, pi2, 2.0).value == doctest::Approx(0.0).epsilon(1e-10));
    // classical commuting case matches the scalar formula
    Matrix r = diag2(0.75, 0.25);
    double alpha = 2.0;
    double expect = (1.0 / (alpha - 1.0)) *
                    std::log2(std::pow(0.75, alpha) * std::pow(0.5, 1.0 - alpha) +
                              std::pow(0.25, alpha) * std::pow(0.5, 1.0 - alpha));
    CHECK(sandwiched_renyi(r, pi2, alpha).value == doctest::Approx(expect));
    // alpha -> infinity approaches d_max
    CHECK(sandwiched_renyi(r, pi2, 2000.0).value ==
          doctest::Approx(d_max(r, pi2).value).epsilon(1e-3));
    // monotone nondecreasing in alpha
    rng::Engine eng(37);
    Matrix a = rng::random_state(eng, 3);
    Matrix b = rng::random_state(eng, 3);
    double prev = -std::numeric_limits<double>::infinity();
    for (double al : {0.5, 0.9, 1.2, 1.5, 2.0, 4.0}) {
        double v = sandwiched_renyi(a, b, al).value;
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    CHECK_THROWS_AS(sandwiched_renyi(a, b, 1.0), Error);
}

TEST_CASE("geometric renyi divergence") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    CHECK(geometric_renyi(pi2, pi2, 1.5).value == doctest::Approx(0.0).epsilon(1e-10));
    // commuting case equals the Petz/classical value
    Matrix r = diag2(0.75, 0.25);
    double alpha = 1.5;
    double expect = (1.0 / (alpha - 1.0)) *
                    std::log2(std::pow(0.75, alpha) * std::pow(0.5, 1.0 - alpha) +
                              std::pow(0.25, alpha) * std::pow(0.5, 1.0 - alpha));
    CHECK(geometric_renyi(r, pi2, alpha).value == doctest::Approx(expect));
    // geometric dominates sandwiched at the same alpha
    rng::Engine eng(41);
    Matrix a = rng::random_state(eng, 3);
    Matrix b = rng::random_state(eng, 3);
    CHECK(geometric_renyi(a, b, 1.5).value >= sandwiched_renyi(a, b, 1.5).value - 1e-8);
}

TEST_CASE("hypothesis testing relative entropy") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    Matrix e0 = diag2(1.0, 0.0);
    // for pure rho at eps = 0 this equals d_min
    CHECK(hypothesis_testing(e0, pi2, 0.0).value ==
          doctest::Approx(d_min(e0, pi2).value).epsilon(1e-5));
    // rho = sigma at eps = 1/2 gives exactly 1 bit
    CHECK(hypothesis_testing(pi2, pi2, 0.5).value == doctest::Approx(1.0).epsilon(1e-5));
    // orthogonal supports diverge
    CHECK(hypothesis_testing(e0, diag2(0.0, 1.0), 0.0).support_violation);
}

TEST_CASE("fidelity and distances") {
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    Matrix e0 = diag2(1.0, 0.0);
    CHECK(fidelity(pi2, pi2) == doctest::Approx(1.0));
    CHECK(fidelity(e0, pi2) == doctest::Approx(0.5));
    CHECK(fidelity(e0, diag2(0.0, 1.0)) == doctest::Approx(0.0).epsilon(1e-10));
    // trace distance is unnormalized
    CHECK(trace_distance(e0, diag2(0.0, 1.0)) == doctest::Approx(2.0));
    CHECK(purified_distance(e0, diag2(0.0, 1.0)) == doctest::Approx(1.0));
    // Fuchs-van-de-Graaf sandwich on random states (normalized trace distance)
    rng::Engine eng(43);
    Matrix a = rng::random_state(eng, 3);
    Matrix b = rng::random_state(eng, 3);
    double t = trace_distance(a, b) / 2.0;
    double f = fidelity(a, b);
    CHECK(1.0 - std::sqrt(f) <= t + 1e-9);
    CHECK(t <= std::sqrt(1.0 - f) + 1e-9);
}

TEST_CASE("diamond norm") {
    // identical channels have distance zero
    Channel id = builders::identity(2);
    Matrix zero = Matrix::Zero(4, 4);
    CHECK(diamond_norm(zero, 2, 2) == doctest::Approx(0.0).epsilon(1e-6));
    // depolarizing vs identity: the optimum is attained on the maximally
    // entangled input, so the SDP value must match that evaluation.
    Channel dep = builders::depolarizing(0.6, 2);
    Matrix diff = dep.choi().matrix - id.choi().matrix;
    double dia = diamond_norm(diff, 2, 2);
    double lower = trace_distance(dep.choi().state(), id.choi().state());
    CHECK(dia >= lower - 1e-7);
    CHECK(dia == doctest::Approx(lower).epsilon(1e-5));
}
