/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>

#include "chanent/channels.hpp"
#include "chanent/random.hpp"

using namespace chanent;

namespace {

Matrix max_entangled_unnorm(int d) {
    // Unnormalized |Gamma><Gamma| with |Gamma> = sum_i |ii>.
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
    return v * v.adjoint();
}

}  // namespace

TEST_CASE("identity channel Choi operator") {
    Channel id = builders::identity(2);
    const ChoiOperator& g = id.choi();
    CHECK((g.matrix - max_entangled_unnorm(2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(g.matrix.trace().real() - 2.0) < 1e-12);
    CHECK(std::abs(g.state().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("completely mixing map Choi is the identity") {
    SystemDims dims{{{"A", 2, 2}}};
    Channel r = builders::completely_mixing_map(dims);
    CHECK_FALSE(r.trace_preserving_intended());
    CHECK((r.choi().matrix - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("swap gate Choi is rank one with trace d^2") {
    Channel sw = builders::swap_gate(2);
    SpectralDecomposition sd = eigh(sw.choi().matrix);
    CHECK(sd.rank() == 1);
    CHECK(std::abs(sw.choi().matrix.trace().real() - 4.0) < 1e-12);
    // swap acts as phi (x) psi -> psi (x) phi
    rng::Engine eng(7);
    Matrix a = rng::random_state(eng, 2);
    Matrix b = rng::random_state(eng, 2);
    Matrix out = apply_to_state(sw, tensor_product(a, b));
    CHECK((out - tensor_product(b, a)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cptp validation") {
    Channel id = builders::identity(3);
    CptpReport rep = validate_cptp(id);
    CHECK(rep.ok);
    CHECK(rep.completely_positive);
    CHECK(rep.trace_preserving);
    // A single Kraus 1/2 loses trace; the strict constructor rejects it when
    // trace preservation is claimed, and the report flags it otherwise.
    SystemDims dims{{{"A", 2, 2}}};
    CHECK_THROWS_AS(Channel(dims, {Matrix::Identity(2, 2) / 2.0}), Error);
    Channel lossy(dims, {Matrix::Identity(2, 2) / 2.0}, false);
    CptpReport rl = validate_cptp(lossy);
    CHECK_FALSE(rl.trace_preserving);
    CHECK(rl.trace_defect == doctest::Approx(0.75));
}

TEST_CASE("channel to Choi round trip") {
    rng::Engine eng(11);
    SystemDims dims{{{"A", 2, 3}}};
    Channel c = rng::random_channel(eng, dims);
    Channel back = channel_from_choi(c.choi());
    CHECK((back.choi().matrix - c.choi().matrix).cwiseAbs().maxCoeff() < 1e-9);
    // transpose map has a non-positive Choi operator and is rejected
    ChoiOperator bad;
    bad.dims = SystemDims{{{"A", 2, 2}}};
    bad.matrix = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) bad.matrix(i * 2 + j, j * 2 + i) = 1.0;
    CHECK_THROWS_AS(channel_from_choi(bad), Error);
}

TEST_CASE("compose and tensor") {
    rng::Engine eng(13);
    SystemDims d1{{{"A", 2, 2}}};
    Channel c1 = rng::random_channel(eng, d1);
    Channel c2 = rng::random_channel(eng, d1);
    Channel cc = compose(c2, c1);
    Matrix rho = rng::random_state(eng, 2);
    Matrix direct = apply_to_state(c2, apply_to_state(c1, rho));
    CHECK((apply_to_state(cc, rho) - direct).cwiseAbs().maxCoeff() < 1e-12);

    Channel t = tensor(builders::identity(2), builders::depolarizing(0.5, 2));
    CHECK(t.dims().party_count() == 2);
    CHECK(validate_cptp(t).ok);
}

TEST_CASE("reduced channel Choi is a partial trace") {
    Channel sw = builders::swap_gate(2);
    Channel red = reduced_channel(sw, {"B"});
    Matrix expect =
        partial_trace(sw.choi().matrix, sw.choi().dims.choi_factors(), {0, 1, 2});
    CHECK((red.choi().matrix - expect).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(red.dims().parties[1].out_dim == 1);
}

TEST_CASE("mixture builders") {
    Channel sw = builders::swap_gate(2);
    // p = 1 in the white-noise mixture is the pure unitary
    Channel m1 = builders::white_noise_mixture(sw, 1.0);
    CHECK((m1.choi().matrix - sw.choi().matrix).cwiseAbs().maxCoeff() < 1e-12);
    // p = 0 is the replacer to the maximally mixed state: Choi = 1/|out| * 1 * |in|
    Channel m0 = builders::white_noise_mixture(sw, 0.0);
    CHECK((m0.choi().state() - Matrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() <
          1e-12);
    // unitary-identity mixture at p = 0 is the identity gate
    Channel u0 = builders::unitary_identity_mixture(sw, 0.0);
    CHECK((u0.choi().matrix - builders::identity2(2).choi().matrix).cwiseAbs().maxCoeff() <
          1e-12);
    // full depolarizing outputs the maximally mixed state
    Channel dep = builders::depolarizing(1.0, 2);
    rng::Engine eng(17);
    Matrix rho = rng::random_state(eng, 2);
    CHECK((apply_to_state(dep, rho) - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("weyl operators") {
    Matrix x = weyl_operator(2, 1, 0);
    Matrix z = weyl_operator(2, 0, 1);
    CHECK(std::abs(x(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(z(1, 1) + 1.0) < 1e-15);
    // unitarity in d = 3
    Matrix w = weyl_operator(3, 1, 2);
    CHECK((w * w.adjoint() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("tele-covariance detection") {
    CHECK(tele_covariance_check(builders::swap_gate(2)).covariant);
    CHECK(tele_covariance_check(builders::cnot()).covariant);
    CHECK(tele_covariance_check(builders::identity(3)).covariant);
    Channel noisy = builders::white_noise_mixture(builders::swap_gate(2), 0.3);
    CHECK(tele_covariance_check(noisy).covariant);

    // the T-like gate conjugates X outside the Weyl set, so it is not covariant
    Matrix t = Matrix::Identity(2, 2);
    t(1, 1) = std::exp(Complex(0, M_PI / 4.0));
    Channel tg = builders::unitary(t, SystemDims{{{"A", 2, 2}}});
    CHECK_FALSE(tele_covariance_check(tg).covariant);
}

TEST_CASE("weyl mixtures are tele-covariant") {
    rng::Engine eng(19);
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}}};
    for (int trial = 0; trial < 3; ++trial) {
        Channel c = rng::random_weyl_mixture(eng, dims);
        CHECK(validate_cptp(c).ok);
        CHECK(tele_covariance_check(c).covariant);
    }
}
