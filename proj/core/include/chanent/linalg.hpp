/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_LINALG_HPP
#define CHANENT_LINALG_HPP

#include <vector>

#include "chanent/common.hpp"

namespace chanent {

/// Square complex matrix checked (and symmetrized) to be Hermitian.
class HermitianOperator {
public:
    HermitianOperator() = default;

    /// Validates the Hermiticity defect and stores (H + H^dag)/2.
    explicit HermitianOperator(const Matrix& m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }
    double hermiticity_defect() const { return defect_; }

private:
    Matrix mat_;
    double defect_ = 0.0;
};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
/// Eigenvector phases are fixed so the first significant component of each
/// column is real positive; ties in eigenvalues therefore resolve
/// deterministically across runs.
struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns
    double support_cutoff = 0.0;

    /// Count of eigenvalues above the support cutoff (in absolute value).
    int rank() const;
};

enum class MatrixFunction { Log2, Sqrt, Power, InvSqrt };

Matrix tensor_product(const Matrix& a, const Matrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

/// Partial trace over the complement of `keep` (indices into `dims`).
/// The kept factors stay in their original relative order.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);
HermitianOperator partial_trace(const HermitianOperator& h, const std::vector<int>& dims,
                                const std::vector<int>& keep);

/// Reorders tensor factors: position i of the result holds old factor perm[i].
Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm);

SpectralDecomposition eigh(const HermitianOperator& h);
SpectralDecomposition eigh(const Matrix& h);

/// Spectral matrix function V f(Lambda) V^dag. Eigenvalues below the support
/// cutoff are treated as exact zeros, with f(0) := 0 for Sqrt/Power/InvSqrt
/// and Log2 restricted to the support. Negative eigenvalues beyond tolerance
/// are a domain error for Sqrt/Log2/InvSqrt.
HermitianOperator matrix_function(const HermitianOperator& h, MatrixFunction f,
                                  double power_exponent = 1.0);

Matrix matrix_log2(const Matrix& h);
Matrix matrix_sqrt(const Matrix& h);
Matrix matrix_inv_sqrt(const Matrix& h);
Matrix matrix_power(const Matrix& h, double alpha);

/// Weighted matrix geometric mean
///   G_alpha(X, Y) = X^{1/2} (X^{-1/2} Y X^{-1/2})^alpha X^{1/2}
/// with pseudo-inverses on supports. Inputs must be PSD within tolerance.
HermitianOperator weighted_geometric_mean(const HermitianOperator& x,
                                          const HermitianOperator& y, double alpha);

/// Schatten p-norm, p in [1, inf]; pass std::numeric_limits<double>::infinity()
/// for the operator norm.
double schatten_norm(const Matrix& m, double p);

/// Projector onto the support of a PSD operator.
HermitianOperator support_projector(const HermitianOperator& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& h);

bool is_psd(const HermitianOperator& h, double tolerance = tol::neg_eig);

}  // namespace chanent

#endif
