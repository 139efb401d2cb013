/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>

#include "chanent/sdp.hpp"

using namespace chanent;
using namespace chanent::sdp;

TEST_CASE("scalar lmi: smallest t with t1 >= diag(1,3)") {
    SdpProblem p;
    int t = p.add_variable("t", 1);
    AffineExpr e(2);
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = -1.0;
    c(1, 1) = -3.0;
    e.add_constant(c);
    e.add_scalar_times_identity(t, 1.0);
    p.psd_constraints.push_back(e);
    p.add_objective_term(t, 0, 0, 1.0);
    p.sense = Sense::Minimize;
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(verify(p, s).ok);
}

TEST_CASE("min trace X subject to X >= max entangled state") {
    Matrix phi = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) phi(i * 2 + i, j * 2 + j) = 0.5;
    SdpProblem p;
    int x = p.add_variable("X", 4);
    AffineExpr dom(4);
    dom.add_var_block(x, 4, 0);
    p.psd_constraints.push_back(dom);
    AffineExpr e(4);
    e.add_constant(-phi);
    e.add_var_block(x, 4, 0);
    p.psd_constraints.push_back(e);
    for (int i = 0; i < 4; ++i) p.add_objective_term(x, i, i, 1.0);
    p.sense = Sense::Minimize;
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equality constraints: fixed-trace feasibility") {
    // maximize <Z, X> with X >= 0, tr X = 1, Z = diag(1, -1): optimum 1.
    SdpProblem p;
    int x = p.add_variable("X", 2);
    AffineExpr dom(2);
    dom.add_var_block(x, 2, 0);
    p.psd_constraints.push_back(dom);
    AffineExpr eq(1);
    eq.add_term(x, 0, 0, 0, 0, 1.0);
    eq.add_term(x, 0, 0, 1, 1, 1.0);
    Matrix rhs = Matrix::Zero(1, 1);
    rhs(0, 0) = -1.0;
    eq.add_constant(rhs);
    p.eq_constraints.push_back(eq);
    p.add_objective_term(x, 0, 0, 1.0);
    p.add_objective_term(x, 1, 1, -1.0);
    p.sense = Sense::Maximize;
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(s.values[x](0, 0).real() - 1.0) < 1e-6);
}

TEST_CASE("complex hermitian variable") {
    // minimize t with t1 >= H for H with complex off-diagonal entries;
    // optimum is the top eigenvalue of H.
    Matrix h(2, 2);
    h << 1.0, Complex(0.0, -2.0), Complex(0.0, 2.0), 1.0;
    SdpProblem p;
    int t = p.add_variable("t", 1);
    AffineExpr e(2);
    e.add_constant(-h);
    e.add_scalar_times_identity(t, 1.0);
    p.psd_constraints.push_back(e);
    p.add_objective_term(t, 0, 0, 1.0);
    p.sense = Sense::Minimize;
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("partial trace and kron builders") {
    // min tr(M) with 1 (x) M >= Gamma_id: for the unnormalized rank-one Choi
    // operator of the qubit identity (trace 2, pure with Schmidt weights 1/2)
    // the optimum is 2 (sum of root Schmidt weights)^2 = 4.
    Matrix gamma = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gamma(i * 2 + i, j * 2 + j) = 1.0;
    SdpProblem p;
    int m = p.add_variable("M", 2);
    AffineExpr dom(2);
    dom.add_var_block(m, 2, 0);
    p.psd_constraints.push_back(dom);
    AffineExpr e(4);
    e.add_constant(-gamma);
    e.add_identity_kron_var(2, m, 2, 0);
    p.psd_constraints.push_back(e);
    for (int i = 0; i < 2; ++i) p.add_objective_term(m, i, i, 1.0);
    p.sense = Sense::Minimize;
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("infeasible problem is flagged") {
    // X >= 0 and -1 - X >= 0 cannot both hold.
    SdpProblem p;
    int x = p.add_variable("X", 2);
    AffineExpr dom(2);
    dom.add_var_block(x, 2, 0);
    p.psd_constraints.push_back(dom);
    AffineExpr e(2);
    e.add_constant(-Matrix::Identity(2, 2));
    e.add_var_block(x, 2, 0, -1.0);
    p.psd_constraints.push_back(e);
    p.add_objective_term(x, 0, 0, 1.0);
    SdpSolution s = solve(p, 1e-8, 100);
    CHECK(s.status != SolveStatus::Optimal);
}

TEST_CASE("solver is deterministic") {
    Matrix h(3, 3);
    h << 2.0, Complex(0.3, 0.1), 0.0, Complex(0.3, -0.1), 1.0, Complex(0.0, 0.5), 0.0,
        Complex(0.0, -0.5), 0.7;
    auto build = [&]() {
        SdpProblem p;
        int t = p.add_variable("t", 1);
        AffineExpr e(3);
        e.add_constant(-h);
        e.add_scalar_times_identity(t, 1.0);
        p.psd_constraints.push_back(e);
        p.add_objective_term(t, 0, 0, 1.0);
        return p;
    };
    SdpProblem p1 = build();
    SdpProblem p2 = build();
    SdpSolution s1 = solve(p1, 1e-9);
    SdpSolution s2 = solve(p2, 1e-9);
    CHECK(s1.objective == s2.objective);
    CHECK(s1.iterations == s2.iterations);
}

TEST_CASE("verify reports violations honestly") {
    SdpProblem p;
    int t = p.add_variable("t", 1);
    AffineExpr e(2);
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = -1.0;
    c(1, 1) = -3.0;
    e.add_constant(c);
    e.add_scalar_times_identity(t, 1.0);
    p.psd_constraints.push_back(e);
    p.add_objective_term(t, 0, 0, 1.0);
    SdpSolution s = solve(p, 1e-9);
    REQUIRE(s.status == SolveStatus::Optimal);
    // corrupt the solution and confirm the check fails
    s.values[t](0, 0) = 2.0;
    VerifyReport rep = verify(p, s);
    CHECK_FALSE(rep.ok);
    CHECK(rep.max_psd_violation > 0.5);
}

TEST_CASE("non-hermitian data is rejected") {
    SdpProblem p;
    int x = p.add_variable("X", 2);
    AffineExpr e(2);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;  // not hermitian
    e.add_constant(bad);
    e.add_var_block(x, 2, 0);
    p.psd_constraints.push_back(e);
    p.add_objective_term(x, 0, 0, 1.0);
    CHECK_THROWS_AS(solve(p), Error);
}
