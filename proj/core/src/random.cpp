/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/random.hpp"

#include <Eigen/QR>

namespace chanent::rng {

Matrix gaussian_matrix(Engine& eng, int rows, int cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(eng), n(eng));
    return m;
}

Matrix haar_unitary(Engine& eng, int d) {
    Matrix g = gaussian_matrix(eng, d, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix phases so the distribution is Haar, not just uniform-ish
    for (int i = 0; i < d; ++i) {
        Complex rd = r(i, i);
        q.col(i) *= std::abs(rd) > 0 ? rd / std::abs(rd) : Complex(1, 0);
    }
    return q;
}

Vector random_pure_state(Engine& eng, int d) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = Complex(n(eng), n(eng));
    return v / v.norm();
}

Matrix random_state(Engine& eng, int d) {
    Matrix g = gaussian_matrix(eng, d, d);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Channel random_channel(Engine& eng, const SystemDims& dims, int env_dim) {
    const int din = static_cast<int>(dims.in_total());
    const int dout = static_cast<int>(dims.out_total());
    if (env_dim <= 0) env_dim = din * dout;
    if (dout * env_dim < din) env_dim = din;
    // isometry V: in -> out (x) env via QR of a tall Ginibre matrix
    Matrix g = gaussian_matrix(eng, dout * env_dim, din);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix v = Matrix(qr.householderQ()).leftCols(din);
    std::vector<Matrix> kraus;
    for (int e = 0; e < env_dim; ++e) {
        Matrix k(dout, din);
        for (int o = 0; o < dout; ++o) k.row(o) = v.row(o * env_dim + e);
        kraus.push_back(std::move(k));
    }
    return Channel(dims, std::move(kraus));
}

Channel random_weyl_mixture(Engine& eng, const SystemDims& dims, int terms) {
    const int np = dims.party_count();
    if (terms <= 0) terms = 2 * np + 2;
    std::vector<double> weights(terms);
    std::vector<std::vector<std::pair<int, int>>> indices(terms);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    double total = 0.0;
    for (int t = 0; t < terms; ++t) {
        weights[t] = gamma(eng) + 1e-6;
        total += weights[t];
        for (int p = 0; p < np; ++p) {
            int d = dims.parties[p].in_dim;
            std::uniform_int_distribution<int> u(0, d - 1);
            indices[t].push_back({u(eng), u(eng)});
        }
    }
    for (double& w : weights) w /= total;
    return builders::weyl_mixture(dims, weights, indices);
}

}  // namespace chanent::rng
