/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_SDP_HPP
#define CHANENT_SDP_HPP

#include <string>
#include <vector>

#include "chanent/common.hpp"

namespace chanent::sdp {

/// Hermitian matrix variable (dim = 1 gives a real scalar).
struct VariableSpec {
    std::string name;
    int dim = 1;
    bool hermitian = true;
};

/// expr(row, col) += coeff * X_var(vrow, vcol)
struct LinearTerm {
    int var;
    int row, col;
    int vrow, vcol;
    Complex coeff;
};

/// Affine Hermitian-valued expression: constant + sum of linear terms.
/// Used both for PSD constraints (expr >= 0) and equalities (expr == 0).
class AffineExpr {
public:
    AffineExpr() = default;
    explicit AffineExpr(int dim) : dim_(dim), constant_(Matrix::Zero(dim, dim)) {}

    int dim() const { return dim_; }
    const Matrix& constant() const { return constant_; }
    const std::vector<LinearTerm>& terms() const { return terms_; }

    void add_constant(const Matrix& c);
    void add_term(int var, int row, int col, int vrow, int vcol, Complex coeff);

    /// expr += scale * X placed at the diagonal block starting at `offset`.
    void add_var_block(int var, int vdim, int offset, Complex scale = 1.0);
    /// expr += scale * X at block (row_off, col_off) and its adjoint mirrored
    /// (Hermitian X assumed).
    void add_var_offdiag(int var, int vdim, int row_off, int col_off, Complex scale = 1.0);
    /// expr += scale * (1_{id_dim} (x) X) at the diagonal block `offset`.
    void add_identity_kron_var(int id_dim, int var, int vdim, int offset,
                               Complex scale = 1.0);
    /// expr += scale * (X (x) K) for a constant square matrix K.
    void add_var_kron_constant(int var, int vdim, const Matrix& k, int offset,
                               Complex scale = 1.0);
    /// expr += scale * (K (x) X) for a constant square matrix K.
    void add_constant_kron_var(const Matrix& k, int var, int vdim, int offset,
                               Complex scale = 1.0);
    /// expr += scale * partial trace of X (factorized by `factors`, keeping
    /// `keep`) at the diagonal block `offset`.
    void add_partial_trace_var(int var, const std::vector<int>& factors,
                               const std::vector<int>& keep, int offset,
                               Complex scale = 1.0);
    /// expr += scale * tr(X) * identity.
    void add_trace_times_identity(int var, int vdim, Complex scale = 1.0);
    /// expr += scale * x * identity for a scalar variable.
    void add_scalar_times_identity(int var, Complex scale = 1.0);

private:
    int dim_ = 0;
    Matrix constant_;
    std::vector<LinearTerm> terms_;
};

enum class Sense { Minimize, Maximize };

struct SdpProblem {
    std::vector<VariableSpec> variables;
    std::vector<AffineExpr> psd_constraints;
    std::vector<AffineExpr> eq_constraints;
    std::vector<LinearTerm> objective;  // row/col unused; coeff * X(vrow, vcol)
    double objective_constant = 0.0;
    Sense sense = Sense::Minimize;

    int add_variable(const std::string& name, int dim, bool hermitian = true);
    void add_objective_term(int var, int vrow, int vcol, Complex coeff);
};

enum class SolveStatus { Optimal, Infeasible, MaxIter };

struct SdpSolution {
    std::vector<Matrix> values;  // per variable
    double objective = 0.0;
    double duality_gap = 0.0;
    double max_constraint_violation = 0.0;
    SolveStatus status = SolveStatus::MaxIter;
    int iterations = 0;
    /// Dual PSD blocks in the realified space, one per PSD constraint, kept so
    /// the gap can be recomputed without solver internals.
    std::vector<RealMatrix> dual_blocks_real;
};

SdpSolution solve(const SdpProblem& p, double tol = 1e-7, int max_iter = 200);

struct VerifyReport {
    bool ok = false;
    double max_psd_violation = 0.0;   // most negative eigenvalue across PSD exprs
    double max_eq_violation = 0.0;
    double recomputed_gap = 0.0;
    double recomputed_objective = 0.0;
};

VerifyReport verify(const SdpProblem& p, const SdpSolution& s);

/// [[Re H, -Im H], [Im H, Re H]]; PSD iff H is, with doubled spectrum.
RealMatrix realify_hermitian(const Matrix& h);

/// Realified view of the problem: one real symmetric LMI
///   G_b(x) = G0_b + sum_k x_k Gk_b  >= 0  per PSD constraint block b,
/// over the real parameter vector x of all Hermitian variables, with real
/// scalar equality rows. Exposed for tests and for the solver.
struct RealifiedProblem {
    struct Triplet {
        int row, col;
        double value;
    };
    struct Block {
        RealMatrix constant;
        // per parameter index: sparse symmetric coefficient matrix
        std::vector<std::vector<Triplet>> coeffs;
    };
    int param_count = 0;
    std::vector<int> var_param_offset;  // first parameter of each variable
    std::vector<Block> blocks;
    // equality rows: sparse coefficients + rhs (A x = rhs)
    std::vector<std::vector<std::pair<int, double>>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<double> objective;  // minimized
    double objective_constant = 0.0;
    double sense_flip = 1.0;  // -1 when the original problem maximizes
};

RealifiedProblem realify(const SdpProblem& p);

/// Reconstructs Hermitian variable matrices from a real parameter vector.
std::vector<Matrix> devectorize(const SdpProblem& p, const RealVector& params);

}  // namespace chanent::sdp

#endif
