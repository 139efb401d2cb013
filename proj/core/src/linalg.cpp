/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace chanent {

namespace {

void check_finite(const Matrix& m) {
    if (!m.allFinite()) {
        throw Error("nonfinite", "matrix contains NaN or Inf entries");
    }
}

double support_cut(const RealVector& eigs) {
    double lmax = 0.0;
    for (int i = 0; i < eigs.size(); ++i) lmax = std::max(lmax, std::abs(eigs[i]));
    return tol::support_cutoff * lmax;
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m) {
    check_finite(m);
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw Error("not_square", "Hermitian operator must be a square matrix");
    }
    defect_ = (m - m.adjoint()).cwiseAbs().maxCoeff();
    double scale = 1.0 + m.cwiseAbs().maxCoeff();
    if (defect_ > tol::hermiticity * scale) {
        throw Error("not_hermitian",
                    "Hermiticity defect " + std::to_string(defect_) + " exceeds tolerance");
    }
    mat_ = 0.5 * (m + m.adjoint());
}

int SpectralDecomposition::rank() const {
    int r = 0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues[i]) > support_cutoff) ++r;
    }
    return r;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor_product(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw Error("bad_dims", "factor dimension must be >= 1");
        total *= d;
    }
    if (total != m.rows() || m.rows() != m.cols()) {
        throw Error("dim_mismatch", "product of factor dims (" + std::to_string(total) +
                                        ") does not match matrix dimension " +
                                        std::to_string(m.rows()));
    }
    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) {
            throw Error("bad_factor", "keep index " + std::to_string(k) + " out of range");
        }
        kept[k] = true;
    }

    std::vector<int> keep_idx, drop_idx;
    for (int i = 0; i < n; ++i) (kept[i] ? keep_idx : drop_idx).push_back(i);

    long dkeep = 1, ddrop = 1;
    for (int i : keep_idx) dkeep *= dims[i];
    for (int i : drop_idx) ddrop *= dims[i];

    // strides for row-major composite index (factor 0 is most significant)
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    auto flat = [&](const std::vector<int>& idx_set, long composite,
                    std::vector<int>& digits) {
        for (int pos = static_cast<int>(idx_set.size()) - 1; pos >= 0; --pos) {
            digits[pos] = static_cast<int>(composite % dims[idx_set[pos]]);
            composite /= dims[idx_set[pos]];
        }
    };

    Matrix out = Matrix::Zero(dkeep, dkeep);
    std::vector<int> kd(keep_idx.size()), kd2(keep_idx.size()), dd(drop_idx.size());
    for (long r = 0; r < dkeep; ++r) {
        flat(keep_idx, r, kd);
        for (long c = 0; c < dkeep; ++c) {
            flat(keep_idx, c, kd2);
            Complex acc(0, 0);
            for (long t = 0; t < ddrop; ++t) {
                flat(drop_idx, t, dd);
                long row = 0, col = 0;
                for (size_t i = 0; i < keep_idx.size(); ++i) {
                    row += kd[i] * stride[keep_idx[i]];
                    col += kd2[i] * stride[keep_idx[i]];
                }
                for (size_t i = 0; i < drop_idx.size(); ++i) {
                    row += dd[i] * stride[drop_idx[i]];
                    col += dd[i] * stride[drop_idx[i]];
                }
                acc += m(row, col);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

HermitianOperator partial_trace(const HermitianOperator& h, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
    return HermitianOperator(partial_trace(h.matrix(), dims, keep));
}

Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n) {
        throw Error("bad_perm", "permutation length does not match factor count");
    }
    long total = 1;
    for (int d : dims) total *= d;
    if (total != m.rows() || m.rows() != m.cols()) {
        throw Error("dim_mismatch", "factor dims do not match matrix dimension");
    }
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    // map: new composite index -> old composite index
    std::vector<long> map(total);
    std::vector<int> digits(n);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (int pos = n - 1; pos >= 0; --pos) {
            digits[pos] = static_cast<int>(rem % dims[perm[pos]]);
            rem /= dims[perm[pos]];
        }
        long old = 0;
        for (int pos = 0; pos < n; ++pos) old += digits[pos] * stride[perm[pos]];
        map[idx] = old;
    }
    Matrix out(total, total);
    for (long r = 0; r < total; ++r)
        for (long c = 0; c < total; ++c) out(r, c) = m(map[r], map[c]);
    return out;
}

SpectralDecomposition eigh(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
    if (solver.info() != Eigen::Success) {
        throw Error("eigh_failed", "self-adjoint eigensolver did not converge");
    }
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    out.support_cutoff = support_cut(out.eigenvalues);
    // phase fixing: first significant component of each column real positive
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.eigenvectors.rows(); ++r) {
            Complex v = out.eigenvectors(r, c);
            if (std::abs(v) > 1e-8) {
                out.eigenvectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return out;
}

SpectralDecomposition eigh(const HermitianOperator& h) { return eigh(h.matrix()); }

HermitianOperator matrix_function(const HermitianOperator& h, MatrixFunction f,
                                  double power_exponent) {
    SpectralDecomposition d = eigh(h);
    const double cut = d.support_cutoff;
    const double lmax = d.eigenvalues.size() ? d.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    RealVector fv(d.eigenvalues.size());
    for (int i = 0; i < d.eigenvalues.size(); ++i) {
        double lam = d.eigenvalues[i];
        if (std::abs(lam) <= cut) {
            fv[i] = 0.0;  // support convention, f(0) := 0
            continue;
        }
        if (lam < 0 && f != MatrixFunction::Power) {
            if (lam < -tol::neg_eig * lmax) {
                throw Error("negative_eigenvalue",
                            "eigenvalue " + std::to_string(lam) + " outside function domain");
            }
            fv[i] = 0.0;
            continue;
        }
        switch (f) {
            case MatrixFunction::Log2: fv[i] = std::log2(lam); break;
            case MatrixFunction::Sqrt: fv[i] = std::sqrt(lam); break;
            case MatrixFunction::InvSqrt: fv[i] = 1.0 / std::sqrt(lam); break;
            case MatrixFunction::Power:
                if (lam < 0) {
                    if (lam < -tol::neg_eig * lmax) {
                        throw Error("negative_eigenvalue",
                                    "negative eigenvalue under non-integer power");
                    }
                    fv[i] = 0.0;
                } else {
                    fv[i] = std::pow(lam, power_exponent);
                }
                break;
        }
    }
    Matrix out = d.eigenvectors * fv.asDiagonal() * d.eigenvectors.adjoint();
    return HermitianOperator(0.5 * (out + out.adjoint()));
}

Matrix matrix_log2(const Matrix& h) {
    return matrix_function(HermitianOperator(h), MatrixFunction::Log2).matrix();
}
Matrix matrix_sqrt(const Matrix& h) {
    return matrix_function(HermitianOperator(h), MatrixFunction::Sqrt).matrix();
}
Matrix matrix_inv_sqrt(const Matrix& h) {
    return matrix_function(HermitianOperator(h), MatrixFunction::InvSqrt).matrix();
}
Matrix matrix_power(const Matrix& h, double alpha) {
    return matrix_function(HermitianOperator(h), MatrixFunction::Power, alpha).matrix();
}

HermitianOperator weighted_geometric_mean(const HermitianOperator& x,
                                          const HermitianOperator& y, double alpha) {
    if (!is_psd(x) || !is_psd(y)) {
        throw Error("not_psd", "weighted geometric mean requires PSD inputs");
    }
    Matrix xh = matrix_sqrt(x.matrix());
    Matrix xih = matrix_inv_sqrt(x.matrix());
    Matrix inner = matrix_power(xih * y.matrix() * xih, alpha);
    Matrix g = xh * inner * xh;
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

double schatten_norm(const Matrix& m, double p) {
    if (p < 1.0) throw Error("bad_p", "Schatten norm requires p >= 1");
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (std::isinf(p)) return s.size() ? s.maxCoeff() : 0.0;
    double acc = 0.0;
    for (int i = 0; i < s.size(); ++i) acc += std::pow(s[i], p);
    return std::pow(acc, 1.0 / p);
}

HermitianOperator support_projector(const HermitianOperator& h) {
    SpectralDecomposition d = eigh(h);
    RealVector pv(d.eigenvalues.size());
    for (int i = 0; i < d.eigenvalues.size(); ++i) {
        pv[i] = d.eigenvalues[i] > d.support_cutoff ? 1.0 : 0.0;
    }
    Matrix out = d.eigenvectors * pv.asDiagonal() * d.eigenvectors.adjoint();
    return HermitianOperator(0.5 * (out + out.adjoint()));
}

double min_eigenvalue(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_psd(const HermitianOperator& h, double tolerance) {
    double lmax = h.matrix().cwiseAbs().maxCoeff();
    return min_eigenvalue(h.matrix()) >= -tolerance * (1.0 + lmax);
}

}  // namespace chanent
