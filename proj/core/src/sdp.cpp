/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "chanent/sdp.hpp"

#include "chanent/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace chanent::sdp {

// ---------------------------------------------------------------------------
// AffineExpr builders
// ---------------------------------------------------------------------------

void AffineExpr::add_constant(const Matrix& c) {
    if (c.rows() != dim_ || c.cols() != dim_) {
        throw Error("dim_mismatch", "constant block does not match expression dimension");
    }
    constant_ += c;
}

void AffineExpr::add_term(int var, int row, int col, int vrow, int vcol, Complex coeff) {
    terms_.push_back(LinearTerm{var, row, col, vrow, vcol, coeff});
}

void AffineExpr::add_var_block(int var, int vdim, int offset, Complex scale) {
    for (int i = 0; i < vdim; ++i)
        for (int j = 0; j < vdim; ++j) add_term(var, offset + i, offset + j, i, j, scale);
}

void AffineExpr::add_var_offdiag(int var, int vdim, int row_off, int col_off,
                                 Complex scale) {
    for (int i = 0; i < vdim; ++i)
        for (int j = 0; j < vdim; ++j) {
            add_term(var, row_off + i, col_off + j, i, j, scale);
            add_term(var, col_off + j, row_off + i, j, i, std::conj(scale));
        }
}

void AffineExpr::add_identity_kron_var(int id_dim, int var, int vdim, int offset,
                                       Complex scale) {
    for (int a = 0; a < id_dim; ++a)
        for (int i = 0; i < vdim; ++i)
            for (int j = 0; j < vdim; ++j)
                add_term(var, offset + a * vdim + i, offset + a * vdim + j, i, j, scale);
}

void AffineExpr::add_var_kron_constant(int var, int vdim, const Matrix& k, int offset,
                                       Complex scale) {
    const int kd = static_cast<int>(k.rows());
    for (int i = 0; i < vdim; ++i)
        for (int j = 0; j < vdim; ++j)
            for (int a = 0; a < kd; ++a)
                for (int b = 0; b < kd; ++b) {
                    Complex c = scale * k(a, b);
                    if (c != Complex(0, 0)) {
                        add_term(var, offset + i * kd + a, offset + j * kd + b, i, j, c);
                    }
                }
}

void AffineExpr::add_constant_kron_var(const Matrix& k, int var, int vdim, int offset,
                                       Complex scale) {
    const int kd = static_cast<int>(k.rows());
    for (int a = 0; a < kd; ++a)
        for (int b = 0; b < kd; ++b) {
            Complex c = scale * k(a, b);
            if (c == Complex(0, 0)) continue;
            for (int i = 0; i < vdim; ++i)
                for (int j = 0; j < vdim; ++j) {
                    add_term(var, offset + a * vdim + i, offset + b * vdim + j, i, j, c);
                }
        }
}

void AffineExpr::add_partial_trace_var(int var, const std::vector<int>& factors,
                                       const std::vector<int>& keep, int offset,
                                       Complex scale) {
    const int n = static_cast<int>(factors.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) kept[k] = true;
    std::vector<int> keep_idx, drop_idx;
    for (int i = 0; i < n; ++i) (kept[i] ? keep_idx : drop_idx).push_back(i);
    long dkeep = 1, ddrop = 1;
    for (int i : keep_idx) dkeep *= factors[i];
    for (int i : drop_idx) ddrop *= factors[i];
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1];

    auto digits_of = [&](const std::vector<int>& idx_set, long comp, std::vector<int>& d) {
        for (int pos = static_cast<int>(idx_set.size()) - 1; pos >= 0; --pos) {
            d[pos] = static_cast<int>(comp % factors[idx_set[pos]]);
            comp /= factors[idx_set[pos]];
        }
    };
    std::vector<int> kr(keep_idx.size()), kc(keep_idx.size()), dd(drop_idx.size());
    for (long r = 0; r < dkeep; ++r) {
        digits_of(keep_idx, r, kr);
        for (long c = 0; c < dkeep; ++c) {
            digits_of(keep_idx, c, kc);
            for (long t = 0; t < ddrop; ++t) {
                digits_of(drop_idx, t, dd);
                long vr = 0, vc = 0;
                for (size_t i = 0; i < keep_idx.size(); ++i) {
                    vr += kr[i] * stride[keep_idx[i]];
                    vc += kc[i] * stride[keep_idx[i]];
                }
                for (size_t i = 0; i < drop_idx.size(); ++i) {
                    vr += dd[i] * stride[drop_idx[i]];
                    vc += dd[i] * stride[drop_idx[i]];
                }
                add_term(var, offset + static_cast<int>(r), offset + static_cast<int>(c),
                         static_cast<int>(vr), static_cast<int>(vc), scale);
            }
        }
    }
}

void AffineExpr::add_trace_times_identity(int var, int vdim, Complex scale) {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < vdim; ++j) add_term(var, i, i, j, j, scale);
}

void AffineExpr::add_scalar_times_identity(int var, Complex scale) {
    for (int i = 0; i < dim_; ++i) add_term(var, i, i, 0, 0, scale);
}

int SdpProblem::add_variable(const std::string& name, int dim, bool hermitian) {
    if (!hermitian) {
        throw Error("unsupported", "only Hermitian matrix variables are supported");
    }
    variables.push_back(VariableSpec{name, dim, hermitian});
    return static_cast<int>(variables.size()) - 1;
}

void SdpProblem::add_objective_term(int var, int vrow, int vcol, Complex coeff) {
    objective.push_back(LinearTerm{var, 0, 0, vrow, vcol, coeff});
}

// ---------------------------------------------------------------------------
// Realification
// ---------------------------------------------------------------------------

RealMatrix realify_hermitian(const Matrix& h) {
    const int m = static_cast<int>(h.rows());
    RealMatrix out(2 * m, 2 * m);
    out.topLeftCorner(m, m) = h.real();
    out.bottomRightCorner(m, m) = h.real();
    out.topRightCorner(m, m) = -h.imag();
    out.bottomLeftCorner(m, m) = h.imag();
    return out;
}

namespace {

// Hermitian parametrization: dim diag params, then (re, im) per pair i<j.
int params_of_dim(int n) { return n * n; }

struct ParamRef {
    int local;      // local parameter index within the variable
    Complex coeff;  // d X(vrow, vcol) / d param
};

// X(vr, vc) as a linear function of the variable's local parameters.
void entry_params(int n, int vr, int vc, ParamRef out[2], int& count) {
    if (vr == vc) {
        out[0] = ParamRef{vr, Complex(1, 0)};
        count = 1;
        return;
    }
    int i = std::min(vr, vc), j = std::max(vr, vc);
    // rank of pair (i, j) in lexicographic order
    int rank = i * n - i * (i + 1) / 2 + (j - i - 1);
    int re = n + 2 * rank, im = n + 2 * rank + 1;
    if (vr < vc) {
        out[0] = ParamRef{re, Complex(1, 0)};
        out[1] = ParamRef{im, Complex(0, 1)};
    } else {
        out[0] = ParamRef{re, Complex(1, 0)};
        out[1] = ParamRef{im, Complex(0, -1)};
    }
    count = 2;
}

void add_realified(std::vector<RealifiedProblem::Triplet>& trips, int m, int r, int c,
                   Complex v) {
    if (v.real() != 0.0) {
        trips.push_back({r, c, v.real()});
        trips.push_back({r + m, c + m, v.real()});
    }
    if (v.imag() != 0.0) {
        trips.push_back({r, c + m, -v.imag()});
        trips.push_back({r + m, c, v.imag()});
    }
}

}  // namespace

RealifiedProblem realify(const SdpProblem& p) {
    RealifiedProblem rp;
    rp.var_param_offset.resize(p.variables.size());
    int off = 0;
    for (size_t v = 0; v < p.variables.size(); ++v) {
        rp.var_param_offset[v] = off;
        off += params_of_dim(p.variables[v].dim);
    }
    rp.param_count = off;
    rp.sense_flip = p.sense == Sense::Maximize ? -1.0 : 1.0;
    rp.objective_constant = p.objective_constant;

    // objective vector (flipped so the internal problem always minimizes)
    rp.objective.assign(rp.param_count, 0.0);
    for (const auto& t : p.objective) {
        const int n = p.variables[t.var].dim;
        ParamRef refs[2];
        int count = 0;
        entry_params(n, t.vrow, t.vcol, refs, count);
        for (int k = 0; k < count; ++k) {
            Complex c = t.coeff * refs[k].coeff;
            if (std::abs(c.imag()) > 1e-9 * (1.0 + std::abs(c.real()))) {
                throw Error("complex_objective", "objective is not real on Hermitian domain");
            }
            rp.objective[rp.var_param_offset[t.var] + refs[k].local] +=
                rp.sense_flip * c.real();
        }
    }

    // PSD blocks
    for (const auto& expr : p.psd_constraints) {
        RealifiedProblem::Block block;
        const int m = expr.dim();
        Matrix cst = expr.constant();
        double herm_defect = (cst - cst.adjoint()).cwiseAbs().maxCoeff();
        // accumulate complex coefficient matrices per parameter, sparse
        std::map<int, std::map<std::pair<int, int>, Complex>> coeff;
        for (const auto& t : expr.terms()) {
            const int n = p.variables[t.var].dim;
            ParamRef refs[2];
            int count = 0;
            entry_params(n, t.vrow, t.vcol, refs, count);
            for (int k = 0; k < count; ++k) {
                int param = rp.var_param_offset[t.var] + refs[k].local;
                coeff[param][{t.row, t.col}] += t.coeff * refs[k].coeff;
            }
        }
        block.constant = realify_hermitian(0.5 * (cst + cst.adjoint()));
        block.coeffs.assign(rp.param_count, {});
        for (auto& [param, entries] : coeff) {
            // Hermiticity check of the coefficient matrix
            for (auto& [rc, v] : entries) {
                auto mirror = entries.find({rc.second, rc.first});
                Complex mv = mirror == entries.end() ? Complex(0, 0) : mirror->second;
                herm_defect = std::max(herm_defect, std::abs(v - std::conj(mv)));
            }
            auto& trips = block.coeffs[param];
            for (auto& [rc, v] : entries) add_realified(trips, m, rc.first, rc.second, v);
        }
        if (herm_defect > 1e-9) {
            throw Error("not_hermitian",
                        "PSD constraint expression is not Hermitian (defect " +
                            std::to_string(herm_defect) + ")");
        }
        rp.blocks.push_back(std::move(block));
    }

    // equality rows, scalarized entrywise over real and imaginary parts
    for (const auto& expr : p.eq_constraints) {
        const int m = expr.dim();
        std::map<std::pair<int, int>, std::map<int, Complex>> entries;
        for (const auto& t : expr.terms()) {
            const int n = p.variables[t.var].dim;
            ParamRef refs[2];
            int count = 0;
            entry_params(n, t.vrow, t.vcol, refs, count);
            for (int k = 0; k < count; ++k) {
                int param = rp.var_param_offset[t.var] + refs[k].local;
                entries[{t.row, t.col}][param] += t.coeff * refs[k].coeff;
            }
        }
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                auto it = entries.find({r, c});
                Complex cst = expr.constant()(r, c);
                std::vector<std::pair<int, double>> re_row, im_row;
                if (it != entries.end()) {
                    for (auto& [param, v] : it->second) {
                        if (v.real() != 0.0) re_row.push_back({param, v.real()});
                        if (v.imag() != 0.0) im_row.push_back({param, v.imag()});
                    }
                }
                if (!re_row.empty() || std::abs(cst.real()) > 0) {
                    rp.eq_rows.push_back(std::move(re_row));
                    rp.eq_rhs.push_back(-cst.real());
                }
                if (!im_row.empty() || std::abs(cst.imag()) > 0) {
                    rp.eq_rows.push_back(std::move(im_row));
                    rp.eq_rhs.push_back(-cst.imag());
                }
            }
    }
    return rp;
}

std::vector<Matrix> devectorize(const SdpProblem& p, const RealVector& params) {
    std::vector<Matrix> out;
    int off = 0;
    for (const auto& spec : p.variables) {
        const int n = spec.dim;
        Matrix x = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) x(i, i) = params[off + i];
        int k = off + n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double re = params[k++];
                double im = params[k++];
                x(i, j) = Complex(re, im);
                x(j, i) = Complex(re, -im);
            }
        out.push_back(std::move(x));
        off += params_of_dim(n);
    }
    return out;
}

namespace {

RealVector vectorize(const SdpProblem& p, const std::vector<Matrix>& values) {
    int total = 0;
    for (const auto& spec : p.variables) total += params_of_dim(spec.dim);
    RealVector params(total);
    int off = 0;
    for (size_t v = 0; v < p.variables.size(); ++v) {
        const int n = p.variables[v].dim;
        for (int i = 0; i < n; ++i) params[off + i] = values[v](i, i).real();
        int k = off + n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                params[k++] = values[v](i, j).real();
                params[k++] = values[v](i, j).imag();
            }
        off += params_of_dim(n);
    }
    return params;
}

// ---------------------------------------------------------------------------
// Structural elimination of equality rows
// ---------------------------------------------------------------------------

struct Substitution {
    int param;
    double constant;
    std::vector<std::pair<int, double>> expr;  // param -> coefficient
};

struct EliminatedProblem {
    RealifiedProblem rp;               // blocks/objective rewritten in place
    std::vector<Substitution> subs;    // in elimination order
    std::vector<int> compact_to_full;  // remaining parameter indices
    std::vector<int> full_to_compact;  // -1 for eliminated
    bool infeasible = false;
};

void add_scaled_triplets(std::vector<RealifiedProblem::Triplet>& dst,
                         const std::vector<RealifiedProblem::Triplet>& src, double scale) {
    for (const auto& t : src) dst.push_back({t.row, t.col, t.value * scale});
}

EliminatedProblem eliminate_equalities(RealifiedProblem rp) {
    EliminatedProblem ep;
    std::vector<std::map<int, double>> rows;
    std::vector<double> rhs = rp.eq_rhs;
    for (const auto& r : rp.eq_rows) {
        std::map<int, double> row;
        for (auto& [p, v] : r) row[p] += v;
        rows.push_back(std::move(row));
    }
    std::vector<bool> eliminated(rp.param_count, false);
    std::vector<bool> done(rows.size(), false);

    for (size_t pass = 0; pass < rows.size(); ++pass) {
        // pick the unprocessed row with the fewest surviving entries
        int best = -1;
        size_t best_size = std::numeric_limits<size_t>::max();
        for (size_t r = 0; r < rows.size(); ++r) {
            if (done[r]) continue;
            if (rows[r].size() < best_size) {
                best = static_cast<int>(r);
                best_size = rows[r].size();
            }
        }
        if (best < 0) break;
        done[best] = true;
        auto& row = rows[best];
        // drop numerically zero coefficients
        for (auto it = row.begin(); it != row.end();) {
            it = std::abs(it->second) < 1e-12 ? row.erase(it) : std::next(it);
        }
        if (row.empty()) {
            if (std::abs(rhs[best]) > 1e-8) ep.infeasible = true;
            continue;
        }
        // pivot on the entry of largest magnitude
        int pivot = -1;
        double pmag = 0.0;
        for (auto& [p, v] : row) {
            if (std::abs(v) > pmag) {
                pivot = p;
                pmag = std::abs(v);
            }
        }
        double pv = row[pivot];
        Substitution sub;
        sub.param = pivot;
        sub.constant = rhs[best] / pv;
        for (auto& [p, v] : row) {
            if (p != pivot) sub.expr.push_back({p, -v / pv});
        }
        eliminated[pivot] = true;

        // substitute into remaining rows
        for (size_t r = 0; r < rows.size(); ++r) {
            if (done[r]) continue;
            auto it = rows[r].find(pivot);
            if (it == rows[r].end()) continue;
            double c = it->second;
            rows[r].erase(it);
            rhs[r] -= c * sub.constant;
            for (auto& [p, v] : sub.expr) rows[r][p] += c * v;
        }
        // substitute into blocks
        for (auto& block : rp.blocks) {
            auto& trips = block.coeffs[pivot];
            if (trips.empty()) continue;
            if (sub.constant != 0.0) {
                for (const auto& t : trips) {
                    block.constant(t.row, t.col) += sub.constant * t.value;
                }
            }
            for (auto& [p, v] : sub.expr) add_scaled_triplets(block.coeffs[p], trips, v);
            trips.clear();
        }
        ep.subs.push_back(std::move(sub));
    }

    // objective substitution, applied in elimination order
    for (const auto& sub : ep.subs) {
        double oc = rp.objective[sub.param];
        if (oc == 0.0) continue;
        rp.objective[sub.param] = 0.0;
        rp.objective_constant += rp.sense_flip * oc * sub.constant;
        for (auto& [p, v] : sub.expr) rp.objective[p] += oc * v;
    }

    ep.full_to_compact.assign(rp.param_count, -1);
    for (int p = 0; p < rp.param_count; ++p) {
        if (!eliminated[p]) {
            ep.full_to_compact[p] = static_cast<int>(ep.compact_to_full.size());
            ep.compact_to_full.push_back(p);
        }
    }
    ep.rp = std::move(rp);
    return ep;
}

// ---------------------------------------------------------------------------
// NT primal-dual path-following solver for the LMI
//   minimize c^T x   s.t.   G0_b + sum_k x_k Gk_b >= 0  for every block b
// ---------------------------------------------------------------------------

struct LmiBlock {
    RealMatrix C;                                           // = G0
    std::vector<std::vector<RealifiedProblem::Triplet>> A;  // A_k = -G_k, compact index
    std::vector<int> active;                                // compact params present
    int n = 0;
};

double sparse_inner(const std::vector<RealifiedProblem::Triplet>& a, const RealMatrix& m) {
    double acc = 0.0;
    for (const auto& t : a) acc += t.value * m(t.col, t.row);
    return acc;
}

RealMatrix sandwich_sparse(const RealMatrix& w, const std::vector<RealifiedProblem::Triplet>& a) {
    // W * A * W for sparse A, assembled from rank-one outer products
    const int n = static_cast<int>(w.rows());
    RealMatrix u = RealMatrix::Zero(n, n);
    for (const auto& t : a) {
        u.noalias() += t.value * w.col(t.row) * w.row(t.col);
    }
    return u;
}

RealMatrix symm(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

// W S W = X
RealMatrix nt_scaling(const RealMatrix& x, const RealMatrix& s) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> ex(x);
    RealVector xe = ex.eigenvalues().cwiseMax(1e-14);
    RealMatrix xh =
        ex.eigenvectors() * xe.cwiseSqrt().asDiagonal() * ex.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<RealMatrix> eb(symm(xh * s * xh));
    RealVector be = eb.eigenvalues().cwiseMax(1e-16);
    RealMatrix bmh = eb.eigenvectors() * be.cwiseSqrt().cwiseInverse().asDiagonal() *
                     eb.eigenvectors().transpose();
    return symm(xh * bmh * xh);
}

double max_step(const RealMatrix& m, const RealMatrix& dm) {
    Eigen::LLT<RealMatrix> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    RealMatrix l = llt.matrixL();
    RealMatrix inner = l.triangularView<Eigen::Lower>().solve(dm.transpose());
    RealMatrix innert = inner.transpose();
    inner = l.triangularView<Eigen::Lower>().solve(innert);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(symm(inner), Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-14) return 1e6;
    return -1.0 / lmin;
}

struct LmiResult {
    RealVector x;
    double internal_objective = 0.0;
    double gap = 0.0;
    SolveStatus status = SolveStatus::MaxIter;
    int iterations = 0;
    std::vector<RealMatrix> dual_blocks;
};

LmiResult solve_lmi(const std::vector<LmiBlock>& blocks, const RealVector& c, double tol,
                    int max_iter) {
    const int m = static_cast<int>(c.size());
    const size_t nb = blocks.size();
    LmiResult res;
    res.x = RealVector::Zero(m);
    if (m == 0) {
        // nothing to optimize; feasibility of the constants only
        res.status = SolveStatus::Optimal;
        for (const auto& b : blocks) {
            Eigen::SelfAdjointEigenSolver<RealMatrix> es(b.C, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-7) res.status = SolveStatus::Infeasible;
            res.dual_blocks.push_back(RealMatrix::Zero(b.n, b.n));
        }
        return res;
    }

    // b-tilde of the standard pair (min c^T x <-> max btilde^T y with A = -G)
    RealVector btilde = -c;

    long ntot = 0;
    for (const auto& b : blocks) ntot += b.n;

    std::vector<RealMatrix> X, S;
    double cscale = 0.0;
    for (const auto& b : blocks) cscale = std::max(cscale, b.C.cwiseAbs().maxCoeff());
    double init = std::max(10.0, cscale);
    for (const auto& b : blocks) {
        X.push_back(init * RealMatrix::Identity(b.n, b.n));
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(b.C, Eigen::EigenvaluesOnly);
        double shift = std::max(init, -1.5 * es.eigenvalues().minCoeff() + 1.0);
        S.push_back(b.C + shift * RealMatrix::Identity(b.n, b.n));
    }
    RealVector y = RealVector::Zero(m);

    double bscale = 1.0 + btilde.cwiseAbs().maxCoeff();
    const double feas_tol = 1e-7;

    for (int iter = 0; iter < max_iter; ++iter) {
        res.iterations = iter + 1;
        // residuals
        double mu = 0.0;
        for (size_t b = 0; b < nb; ++b) mu += (X[b].array() * S[b].array()).sum();
        double gap = mu;
        mu /= static_cast<double>(ntot);

        RealVector r = btilde;
        for (size_t b = 0; b < nb; ++b) {
            for (int k : blocks[b].active) r[k] -= sparse_inner(blocks[b].A[k], X[b]);
        }
        std::vector<RealMatrix> Rd(nb);
        double rd_norm = 0.0;
        for (size_t b = 0; b < nb; ++b) {
            RealMatrix ay = RealMatrix::Zero(blocks[b].n, blocks[b].n);
            for (int k : blocks[b].active) {
                for (const auto& t : blocks[b].A[k]) ay(t.row, t.col) += y[k] * t.value;
            }
            Rd[b] = blocks[b].C - S[b] - ay;
            rd_norm = std::max(rd_norm, Rd[b].cwiseAbs().maxCoeff());
        }
        double obj = c.dot(y);
        res.internal_objective = obj;
        res.gap = gap;

        bool feasible = r.cwiseAbs().maxCoeff() <= feas_tol * bscale &&
                        rd_norm <= feas_tol * (1.0 + cscale);
        if (std::getenv("CHANENT_SDP_TRACE")) {
            double xmin = 1e300, smin = 1e300;
            for (size_t b = 0; b < nb; ++b) {
                Eigen::SelfAdjointEigenSolver<RealMatrix> ex(X[b], Eigen::EigenvaluesOnly);
                Eigen::SelfAdjointEigenSolver<RealMatrix> es2(S[b], Eigen::EigenvaluesOnly);
                xmin = std::min(xmin, ex.eigenvalues().minCoeff());
                smin = std::min(smin, es2.eigenvalues().minCoeff());
            }
            std::fprintf(stderr,
                         "it=%d mu=%.3e gap=%.3e rp=%.3e rd=%.3e obj=%.8f xmin=%.3e smin=%.3e\n",
                         iter, mu, gap, r.cwiseAbs().maxCoeff(), rd_norm, obj, xmin, smin);
        }
        if (feasible && std::abs(gap) <= tol * (1.0 + std::abs(obj))) {
            res.status = SolveStatus::Optimal;
            break;
        }
        if (!std::isfinite(mu) || mu > 1e14 || y.cwiseAbs().maxCoeff() > 1e12) {
            res.status = SolveStatus::Infeasible;
            break;
        }

        // NT scaling and Schur complement
        std::vector<RealMatrix> W(nb), Sinv(nb);
        for (size_t b = 0; b < nb; ++b) {
            W[b] = nt_scaling(X[b], S[b]);
            Eigen::SelfAdjointEigenSolver<RealMatrix> es(S[b]);
            Sinv[b] = es.eigenvectors() *
                      es.eigenvalues().cwiseMax(1e-16).cwiseInverse().asDiagonal() *
                      es.eigenvectors().transpose();
        }
        RealMatrix M = RealMatrix::Zero(m, m);
        for (size_t b = 0; b < nb; ++b) {
            for (int i : blocks[b].active) {
                RealMatrix u = sandwich_sparse(W[b], blocks[b].A[i]);
                for (int j : blocks[b].active) {
                    if (j > i) continue;
                    M(i, j) += sparse_inner(blocks[b].A[j], u);
                }
            }
        }
        M = M.selfadjointView<Eigen::Lower>();
        // small ridge for safety
        M.diagonal().array() += 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
        Eigen::LDLT<RealMatrix> mf(M);

        auto compute_direction = [&](double sigma_mu, RealVector& dy,
                                     std::vector<RealMatrix>& dS,
                                     std::vector<RealMatrix>& dX) {
            RealVector h = RealVector::Zero(m);
            std::vector<RealMatrix> E(nb);
            for (size_t b = 0; b < nb; ++b) {
                E[b] = sigma_mu * Sinv[b] - X[b] - symm(W[b] * Rd[b] * W[b]);
                for (int k : blocks[b].active) h[k] += sparse_inner(blocks[b].A[k], E[b]);
            }
            h = (r - h).eval();
            dy = mf.solve(h);
            dS.resize(nb);
            dX.resize(nb);
            for (size_t b = 0; b < nb; ++b) {
                RealMatrix ady = RealMatrix::Zero(blocks[b].n, blocks[b].n);
                for (int k : blocks[b].active) {
                    for (const auto& t : blocks[b].A[k]) ady(t.row, t.col) += dy[k] * t.value;
                }
                dS[b] = Rd[b] - ady;
                dX[b] = symm(sigma_mu * Sinv[b] - X[b] - W[b] * dS[b] * W[b]);
            }
        };

        // predictor
        RealVector dy;
        std::vector<RealMatrix> dS, dX;
        compute_direction(0.0, dy, dS, dX);
        double ap = 1e6, ad = 1e6;
        for (size_t b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dX[b]));
            ad = std::min(ad, max_step(S[b], dS[b]));
        }
        ap = std::min(1.0, 0.95 * ap);
        ad = std::min(1.0, 0.95 * ad);
        double mu_aff = 0.0;
        for (size_t b = 0; b < nb; ++b) {
            mu_aff += ((X[b] + ap * dX[b]).array() * (S[b] + ad * dS[b]).array()).sum();
        }
        mu_aff /= static_cast<double>(ntot);
        double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 1e-8, 1.0);

        // corrector
        compute_direction(sigma * mu, dy, dS, dX);
        ap = 1e6;
        ad = 1e6;
        for (size_t b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dX[b]));
            ad = std::min(ad, max_step(S[b], dS[b]));
        }
        ap = std::min(1.0, 0.98 * ap);
        ad = std::min(1.0, 0.98 * ad);

        for (size_t b = 0; b < nb; ++b) {
            X[b] += ap * dX[b];
            S[b] += ad * dS[b];
        }
        y += ad * dy;
    }

    res.x = y;
    res.dual_blocks = X;
    return res;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, double tol, int max_iter) {
    RealifiedProblem rp = realify(p);
    EliminatedProblem ep = eliminate_equalities(std::move(rp));
    SdpSolution sol;
    if (ep.infeasible) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }

    const int mc = static_cast<int>(ep.compact_to_full.size());
    RealVector c = RealVector::Zero(mc);
    for (int k = 0; k < mc; ++k) c[k] = ep.rp.objective[ep.compact_to_full[k]];

    std::vector<LmiBlock> blocks;
    for (const auto& rb : ep.rp.blocks) {
        LmiBlock lb;
        lb.n = static_cast<int>(rb.constant.rows());
        lb.C = rb.constant;
        lb.A.assign(mc, {});
        for (int full = 0; full < ep.rp.param_count; ++full) {
            int k = ep.full_to_compact[full];
            if (k < 0 || rb.coeffs[full].empty()) continue;
            // A_k = -G_k
            for (const auto& t : rb.coeffs[full]) lb.A[k].push_back({t.row, t.col, -t.value});
        }
        for (int k = 0; k < mc; ++k) {
            if (!lb.A[k].empty()) lb.active.push_back(k);
        }
        blocks.push_back(std::move(lb));
    }

    LmiResult lr = solve_lmi(blocks, c, tol, max_iter);

    // reconstruct the full parameter vector
    RealVector full = RealVector::Zero(ep.rp.param_count);
    for (int k = 0; k < mc; ++k) full[ep.compact_to_full[k]] = lr.x[k];
    for (auto it = ep.subs.rbegin(); it != ep.subs.rend(); ++it) {
        double v = it->constant;
        for (auto& [q, cq] : it->expr) v += cq * full[q];
        full[it->param] = v;
    }

    sol.values = devectorize(p, full);
    sol.status = lr.status;
    sol.iterations = lr.iterations;
    sol.duality_gap = std::abs(lr.gap);
    sol.dual_blocks_real = lr.dual_blocks;

    // report the objective from the original (pre-elimination) coefficients
    RealifiedProblem orig = realify(p);
    double internal = 0.0;
    for (int k = 0; k < orig.param_count; ++k) internal += orig.objective[k] * full[k];
    sol.objective = orig.sense_flip * internal + p.objective_constant;

    // constraint violations at the returned point
    double viol = 0.0;
    for (const auto& expr : p.psd_constraints) {
        Matrix z = expr.constant();
        for (const auto& t : expr.terms()) {
            z(t.row, t.col) += t.coeff * sol.values[t.var](t.vrow, t.vcol);
        }
        viol = std::max(viol, -min_eigenvalue(z));
    }
    for (const auto& expr : p.eq_constraints) {
        Matrix z = expr.constant();
        for (const auto& t : expr.terms()) {
            z(t.row, t.col) += t.coeff * sol.values[t.var](t.vrow, t.vcol);
        }
        viol = std::max(viol, z.cwiseAbs().maxCoeff());
    }
    sol.max_constraint_violation = viol;
    return sol;
}

VerifyReport verify(const SdpProblem& p, const SdpSolution& s) {
    VerifyReport rep;
    double psd_viol = 0.0, eq_viol = 0.0;
    for (const auto& expr : p.psd_constraints) {
        Matrix z = expr.constant();
        for (const auto& t : expr.terms()) {
            z(t.row, t.col) += t.coeff * s.values[t.var](t.vrow, t.vcol);
        }
        psd_viol = std::max(psd_viol, -min_eigenvalue(z));
    }
    for (const auto& expr : p.eq_constraints) {
        Matrix z = expr.constant();
        for (const auto& t : expr.terms()) {
            z(t.row, t.col) += t.coeff * s.values[t.var](t.vrow, t.vcol);
        }
        eq_viol = std::max(eq_viol, z.cwiseAbs().maxCoeff());
    }
    rep.max_psd_violation = psd_viol;
    rep.max_eq_violation = eq_viol;

    RealifiedProblem rp = realify(p);
    RealVector params = vectorize(p, s.values);
    double obj = 0.0;
    for (int k = 0; k < rp.param_count; ++k) obj += rp.objective[k] * params[k];
    rep.recomputed_objective = rp.sense_flip * obj + p.objective_constant;

    // gap via stored dual blocks: sum_b tr(Z_b X_b) with Z_b evaluated here
    double gap = 0.0;
    if (s.dual_blocks_real.size() == rp.blocks.size()) {
        for (size_t b = 0; b < rp.blocks.size(); ++b) {
            const auto& rb = rp.blocks[b];
            RealMatrix z = rb.constant;
            for (int k = 0; k < rp.param_count; ++k) {
                for (const auto& t : rb.coeffs[k]) z(t.row, t.col) += params[k] * t.value;
            }
            if (z.rows() == s.dual_blocks_real[b].rows()) {
                gap += (z.array() * s.dual_blocks_real[b].array()).sum();
            }
        }
    }
    rep.recomputed_gap = std::abs(gap);

    rep.ok = s.status == SolveStatus::Optimal && psd_viol <= 1e-7 && eq_viol <= 1e-6 &&
             rep.recomputed_gap <= 1e-5 * (1.0 + std::abs(rep.recomputed_objective)) &&
             std::abs(rep.recomputed_objective - s.objective) <=
                 1e-6 * (1.0 + std::abs(s.objective));
    return rep;
}

}  // namespace chanent::sdp
