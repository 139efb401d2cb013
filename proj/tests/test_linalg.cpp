/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>

#include "chanent/linalg.hpp"
#include "chanent/random.hpp"

using namespace chanent;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix max_entangled(int d) {
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
    return v * v.adjoint();
}

}  // namespace

TEST_CASE("tensor product basics") {
    Matrix a = pauli_x();
    Matrix b = pauli_z();
    Matrix t = tensor_product(a, b);
    REQUIRE(t.rows() == 4);
    CHECK(std::abs(t(0, 2) - 1.0) < 1e-15);
    CHECK(std::abs(t(1, 3) + 1.0) < 1e-15);
    CHECK(std::abs(t(0, 0)) < 1e-15);
    // trace multiplicativity
    rng::Engine eng(1);
    Matrix r1 = rng::random_state(eng, 3);
    Matrix r2 = rng::random_state(eng, 4);
    CHECK(std::abs(tensor_product(r1, r2).trace() - r1.trace() * r2.trace()) < 1e-12);
}

TEST_CASE("partial trace") {
    rng::Engine eng(2);
    Matrix a = rng::random_state(eng, 2);
    Matrix b = rng::random_state(eng, 3);
    Matrix ab = tensor_product(a, b);
    Matrix ta = partial_trace(ab, {2, 3}, {0});
    Matrix tb = partial_trace(ab, {2, 3}, {1});
    CHECK((ta - a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((tb - b).cwiseAbs().maxCoeff() < 1e-12);
    // tracing a maximally entangled state gives the maximally mixed marginal
    Matrix phi = max_entangled(2);
    Matrix m = partial_trace(phi, {2, 2}, {0});
    CHECK((m - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    // keep order is the relative order of kept factors
    Matrix c = rng::random_state(eng, 2);
    Matrix abc = tensor_product(tensor_product(a, b), c);
    Matrix ac = partial_trace(abc, {2, 3, 2}, {0, 2});
    CHECK((ac - tensor_product(a, c)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("permute factors") {
    rng::Engine eng(3);
    Matrix a = rng::random_state(eng, 2);
    Matrix b = rng::random_state(eng, 3);
    Matrix ab = tensor_product(a, b);
    Matrix ba = permute_factors(ab, {2, 3}, {1, 0});
    CHECK((ba - tensor_product(b, a)).cwiseAbs().maxCoeff() < 1e-12);
    // permutation round trip on an entangled state
    Matrix phi = max_entangled(3);
    Matrix p = permute_factors(phi, {3, 3}, {1, 0});
    Matrix pp = permute_factors(p, {3, 3}, {1, 0});
    CHECK((pp - phi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectral decomposition and support") {
    Matrix z = pauli_z();
    SpectralDecomposition sd = eigh(z);
    CHECK(sd.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sd.eigenvalues(1) == doctest::Approx(1.0));
    // rank-deficient projector
    Matrix p = Matrix::Zero(3, 3);
    p(0, 0) = 1.0;
    SpectralDecomposition sp = eigh(p);
    CHECK(sp.rank() == 1);
}

TEST_CASE("matrix functions on support") {
    // log of the maximally mixed state
    Matrix pi2 = Matrix::Identity(2, 2) / 2.0;
    Matrix l = matrix_log2(pi2);
    CHECK((l + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // f(0) := 0 convention: log2 of a projector is zero on its support
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    CHECK(matrix_log2(p).cwiseAbs().maxCoeff() < 1e-12);
    // sqrt squares back
    rng::Engine eng(4);
    Matrix rho = rng::random_state(eng, 4);
    Matrix s = matrix_sqrt(rho);
    CHECK((s * s - rho).cwiseAbs().maxCoeff() < 1e-10);
    // negative eigenvalue outside the tolerance throws
    Matrix neg = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(matrix_log2(neg), Error);
}

TEST_CASE("weighted geometric mean") {
    // commuting case reduces to the scalar formula
    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = 2.0;
    x(1, 1) = 1.0;
    Matrix y = Matrix::Zero(2, 2);
    y(0, 0) = 8.0;
    y(1, 1) = 1.0;
    Matrix g = weighted_geometric_mean(HermitianOperator(x), HermitianOperator(y), 0.5).matrix();
    CHECK(g(0, 0).real() == doctest::Approx(4.0));
    CHECK(g(1, 1).real() == doctest::Approx(1.0));
    // G_0 = X, G_1 = Y
    rng::Engine eng(5);
    Matrix a = rng::random_state(eng, 3);
    Matrix b = rng::random_state(eng, 3);
    CHECK((weighted_geometric_mean(HermitianOperator(a), HermitianOperator(b), 0.0).matrix() - a)
              .cwiseAbs().maxCoeff() < 1e-10);
    CHECK((weighted_geometric_mean(HermitianOperator(a), HermitianOperator(b), 1.0).matrix() - b)
              .cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("schatten norms") {
    Matrix z = pauli_z();
    CHECK(schatten_norm(z, 1.0) == doctest::Approx(2.0));
    CHECK(schatten_norm(z, 2.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(schatten_norm(z, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("psd checks") {
    CHECK(is_psd(HermitianOperator(Matrix::Identity(3, 3))));
    CHECK_FALSE(is_psd(HermitianOperator(-Matrix::Identity(2, 2))));
    CHECK(min_eigenvalue(pauli_z()) == doctest::Approx(-1.0));
}

TEST_CASE("random generators are deterministic and well formed") {
    rng::Engine e1(42), e2(42);
    Matrix u1 = rng::haar_unitary(e1, 4);
    Matrix u2 = rng::haar_unitary(e2, 4);
    CHECK((u1 - u2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u1 * u1.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    Matrix rho = rng::random_state(e1, 5);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK(is_psd(HermitianOperator(rho), 1e-12));
}
