// SPDX-License-Identifier: Apache-2.0
//
// masec - ergodic secrecy rate analysis and optimization for movable-antenna arrays
// Copyright (C) 2026 The masec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <gtest/gtest.h>

#include "support.hpp"

#include "masec/linalg.hpp"

using namespace masec;
using masec::fixture::random_cmat;
using masec::fixture::random_fp_input;

namespace
{

// Straight transcription of the map in physical units, no rescaling.
struct OracleMap
{
    double delta = 0.0;
    double delta_tilde = 0.0;
    CMat gamma;
    CMat gamma_tilde;
    RVec phi;
    RVec phi_tilde;
};

OracleMap oracle_map(const FixedPointInput &in, double delta, double delta_tilde)
{
    const double s2 = in.noise_power;
    const int M = in.size();
    OracleMap o;
    o.phi = (RVec::Ones(M) + delta_tilde * in.d_row).cwiseInverse();
    o.phi_tilde = (RVec::Ones(M) + delta * in.d_col).cwiseInverse();
    const CMat Phi = o.phi.cast<cd>().asDiagonal();
    const CMat PhiT = o.phi_tilde.cast<cd>().asDiagonal();
    const CMat B = in.b_mean;
    o.gamma = (s2 * CMat(Phi.inverse()) + B * PhiT * B.adjoint()).inverse();
    o.gamma_tilde = (s2 * CMat(PhiT.inverse()) + B.adjoint() * Phi * B).inverse();
    o.delta = (in.d_row.cast<cd>().asDiagonal() * o.gamma).trace().real() / M;
    o.delta_tilde = (in.d_col.cast<cd>().asDiagonal() * o.gamma_tilde).trace().real() / M;
    return o;
}

std::pair<double, double> oracle_solve(const FixedPointInput &in)
{
    double d = 1.0 / in.noise_power;
    double dt = 1.0 / in.noise_power;
    for (int it = 0; it < 20000; ++it)
    {
        const OracleMap o = oracle_map(in, d, dt);
        const double nd = 0.5 * d + 0.5 * o.delta;
        const double ndt = 0.5 * dt + 0.5 * o.delta_tilde;
        if (std::abs(nd - d) < 1e-15 * std::max(1.0, d) && std::abs(ndt - dt) < 1e-15 * std::max(1.0, dt))
            break;
        d = nd;
        dt = ndt;
    }
    return {d, dt};
}

double oracle_rate(const FixedPointInput &in, double d, double dt)
{
    const OracleMap o = oracle_map(in, d, dt);
    double r = -std::log(std::real((in.noise_power * o.gamma).determinant()));
    for (int j = 0; j < in.size(); ++j)
        r += std::log(1.0 + d * in.d_col(j));
    return r - in.noise_power * in.size() * d * dt;
}

FixedPointSolution solve_tight(const FixedPointInput &in)
{
    SolverOptions opts;
    opts.tol = 1e-13;
    return solve_fixed_point(in, opts);
}

const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);

} // namespace

TEST(FixedPoint, ScalarClosedForm)
{
    FixedPointInput in;
    in.b_mean = CMat::Zero(1, 1);
    in.d_row = RVec::Ones(1);
    in.d_col = RVec::Ones(1);
    const FixedPointSolution sol = solve_tight(in);
    EXPECT_NEAR(sol.delta, kGolden, 1e-12);
    EXPECT_NEAR(sol.delta_tilde, kGolden, 1e-12);
    const double expected = 2.0 * std::log(0.5 * (1.0 + std::sqrt(5.0))) - kGolden * kGolden;
    EXPECT_NEAR(det_equiv_eve_rate(sol, in), expected, 1e-12);
    EXPECT_NEAR(expected, 0.5804576388691017, 1e-15);
}

TEST(FixedPoint, ZeroMeanIdentityCovarianceAnySize)
{
    for (int M : {1, 2, 3, 5})
    {
        FixedPointInput in;
        in.b_mean = CMat::Zero(M, M);
        in.d_row = RVec::Ones(M);
        in.d_col = RVec::Ones(M);
        const FixedPointSolution sol = solve_tight(in);
        EXPECT_NEAR(sol.delta, kGolden, 1e-12) << M;
        EXPECT_NEAR(sol.delta_tilde, kGolden, 1e-12) << M;
    }
}

TEST(FixedPoint, NoScatteringReducesToLogDet)
{
    Rng rng(3);
    for (int M : {1, 2, 4})
    {
        FixedPointInput in;
        in.b_mean = random_cmat(M, M, rng);
        in.d_row = RVec::Zero(M);
        in.d_col = RVec::Constant(M, 0.7);
        in.noise_power = 0.5;
        const FixedPointSolution sol = solve_tight(in);
        CMat A = CMat::Identity(M, M) + in.b_mean * in.b_mean.adjoint() / in.noise_power;
        EXPECT_NEAR(det_equiv_eve_rate(sol, in), logdet_hpd(A), 1e-10) << M;
        EXPECT_NEAR(sol.delta, 0.0, 1e-14);
    }
}

TEST(FixedPoint, MatchesIndependentMap)
{
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int M = 1 + trial % 5;
        FixedPointInput in = random_fp_input(M, rng);
        in.noise_power = std::pow(10.0, -1.0 + 0.1 * trial);
        const FixedPointSolution sol = solve_tight(in);
        const OracleMap o = oracle_map(in, sol.delta, sol.delta_tilde);
        EXPECT_LE(std::abs(o.delta - sol.delta), 1e-10 * sol.delta) << trial;
        EXPECT_LE(std::abs(o.delta_tilde - sol.delta_tilde), 1e-10 * sol.delta_tilde) << trial;
        EXPECT_LE(rel_frobenius(sol.gamma, o.gamma), 1e-10);
        EXPECT_LE(rel_frobenius(sol.gamma_tilde, o.gamma_tilde), 1e-10);
        EXPECT_LE((sol.phi - o.phi).cwiseAbs().maxCoeff(), 1e-12);

        const auto [d, dt] = oracle_solve(in);
        EXPECT_NEAR(sol.delta, d, 1e-9 * d) << trial;
        EXPECT_NEAR(sol.delta_tilde, dt, 1e-9 * dt) << trial;
        EXPECT_NEAR(det_equiv_eve_rate(sol, in), oracle_rate(in, d, dt), 1e-9) << trial;
    }
}

TEST(FixedPoint, WoodburyIdentity)
{
    Rng rng(5);
    for (int M : {1, 2, 3, 6})
    {
        FixedPointInput in = random_fp_input(M, rng);
        in.noise_power = 0.3;
        const FixedPointSolution s = solve_tight(in);
        const CMat PhiT = s.phi_tilde.cast<cd>().asDiagonal();
        const CMat B = in.b_mean;
        const CMat rhs = (PhiT - PhiT * B.adjoint() * s.gamma * B * PhiT) / in.noise_power;
        EXPECT_LE(rel_frobenius(s.gamma_tilde, rhs), 1e-9) << M;
    }
}

TEST(FixedPoint, RateIsStationaryInDeltas)
{
    Rng rng(17);
    for (int M : {1, 2, 4})
    {
        const FixedPointInput in = random_fp_input(M, rng);
        const FixedPointSolution s = solve_tight(in);
        const double V0 = det_equiv_eve_rate(s, in);
        auto V = [&](double d, double dt) { return det_equiv_eve_rate(evaluate_fixed_point(in, d, dt), in); };
        const double h = 1e-4;
        // Slopes with respect to log delta and log delta~.
        const double sx = (V(s.delta * (1 + h), s.delta_tilde) - V(s.delta * (1 - h), s.delta_tilde)) / (2 * h);
        const double sy = (V(s.delta, s.delta_tilde * (1 + h)) - V(s.delta, s.delta_tilde * (1 - h))) / (2 * h);
        EXPECT_LE(std::abs(sx), 1e-5 * std::max(1.0, std::abs(V0))) << M;
        EXPECT_LE(std::abs(sy), 1e-5 * std::max(1.0, std::abs(V0))) << M;
        // Away from the fixed point the slope is visibly nonzero.
        const double off = (V(2 * s.delta * (1 + h), s.delta_tilde) - V(2 * s.delta * (1 - h), s.delta_tilde)) / (2 * h);
        EXPECT_GT(std::abs(off), 1e-3) << M;
    }
}

TEST(FixedPoint, EvaluateReproducesSolution)
{
    Rng rng(23);
    const FixedPointInput in = random_fp_input(3, rng);
    const FixedPointSolution s = solve_tight(in);
    const FixedPointSolution e = evaluate_fixed_point(in, s.delta, s.delta_tilde);
    EXPECT_LE(e.residual, 1e-12);
    EXPECT_EQ(e.iterations, 0);
    EXPECT_LE(rel_frobenius(e.gamma, s.gamma), 1e-12);
}

TEST(FixedPoint, PlainIterationResidualDecreases)
{
    Rng rng(29);
    for (int M : {2, 4})
    {
        const FixedPointInput in = random_fp_input(M, rng);
        SolverOptions opts;
        opts.accelerate = false;
        opts.record_history = true;
        opts.tol = 1e-12;
        const FixedPointSolution s = solve_fixed_point(in, opts);
        ASSERT_GT(s.residual_history.size(), 10u);
        for (size_t k = 11; k < s.residual_history.size(); ++k)
            EXPECT_LE(s.residual_history[k], s.residual_history[k - 1] * (1 + 1e-9) + 1e-15) << k;
        EXPECT_LE(s.residual, 1e-12);
    }
}

TEST(FixedPoint, AccelerationAgrees)
{
    Rng rng(31);
    const FixedPointInput in = random_fp_input(4, rng);
    SolverOptions plain;
    plain.accelerate = false;
    plain.tol = 1e-13;
    const FixedPointSolution a = solve_tight(in);
    const FixedPointSolution b = solve_fixed_point(in, plain);
    EXPECT_NEAR(a.delta, b.delta, 1e-11 * a.delta);
    EXPECT_LE(a.iterations, b.iterations);
}

TEST(FixedPoint, ConvergenceErrorCarriesResidual)
{
    Rng rng(37);
    const FixedPointInput in = random_fp_input(3, rng);
    SolverOptions opts;
    opts.max_iter = 1;
    opts.accelerate = false;
    opts.tol = 1e-15;
    try
    {
        solve_fixed_point(in, opts);
        FAIL() << "expected ConvergenceError";
    }
    catch (const ConvergenceError &e)
    {
        EXPECT_EQ(e.iterations(), 1);
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(FixedPoint, RejectsBadInput)
{
    FixedPointInput in;
    in.b_mean = CMat::Zero(2, 2);
    in.d_row = RVec::Ones(3);
    in.d_col = RVec::Ones(2);
    EXPECT_THROW(solve_fixed_point(in), ConfigError);
    in.d_row = RVec::Ones(2);
    in.noise_power = 0.0;
    EXPECT_THROW(solve_fixed_point(in), ConfigError);
    in.noise_power = 1.0;
    in.d_col(0) = -1.0;
    EXPECT_THROW(solve_fixed_point(in), ConfigError);
    in.d_col(0) = 1.0;
    SolverOptions bad;
    bad.damping = 0.0;
    EXPECT_THROW(solve_fixed_point(in, bad), ConfigError);
}

TEST(FixedPoint, PhysicalScalesConverge)
{
    // Real link budget: path loss around 1e-10, noise 1e-12, power 1e-2.
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto inst = masec::fixture::make_instance(8, 4, 16, seed);
        const FixedPointInput in = make_fixed_point_input(inst.F, inst.stats, inst.cfg.noise_power);
        const FixedPointSolution s = solve_fixed_point(in);
        EXPECT_LE(s.residual, 1e-10);
        const OracleMap o = oracle_map(in, s.delta, s.delta_tilde);
        EXPECT_NEAR(o.delta, s.delta, 1e-8 * s.delta);
        EXPECT_NEAR(o.delta_tilde, s.delta_tilde, 1e-8 * s.delta_tilde);
    }
}

TEST(RateBob, MatchesEigenvalues)
{
    Rng rng(41);
    for (auto [N, L, M] : {std::tuple{4, 3, 2}, std::tuple{6, 2, 2}, std::tuple{5, 8, 3}})
    {
        const CMat H = random_cmat(N, L, rng);
        const CMat F = random_cmat(N, M, rng);
        const double s2 = 0.4;
        const CMat W = H.adjoint() * F * F.adjoint() * H / s2;
        Eigen::SelfAdjointEigenSolver<CMat> es(W);
        double expected = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            expected += std::log1p(std::max(0.0, es.eigenvalues()(i)));
        EXPECT_NEAR(rate_bob(H, F, s2), expected, 1e-10);
    }
}

TEST(RateBob, Scalar)
{
    const CMat H = CMat::Ones(1, 1);
    const CMat F = CMat::Constant(1, 1, std::sqrt(3.0));
    EXPECT_NEAR(rate_bob(H, F, 1.0), std::log(4.0), 1e-15);
    EXPECT_THROW(rate_bob(CMat::Ones(2, 1), F, 1.0), ConfigError);
}

TEST(Esr, ClampsAtZero)
{
    auto inst = masec::fixture::make_instance(4, 2, 4, 7);
    const CMat weak = inst.H * 1e-4;
    const RateReport r = esr(weak, inst.F, inst.stats, inst.cfg.noise_power);
    EXPECT_LT(r.signed_gap(), 0.0);
    EXPECT_EQ(r.esr, 0.0);
    EXPECT_EQ(r.esr_bits, 0.0);

    const CMat strong = inst.H * 1e3;
    const RateReport s = esr(strong, inst.F, inst.stats, inst.cfg.noise_power);
    EXPECT_GT(s.esr, 0.0);
    EXPECT_NEAR(s.esr_bits * std::log(2.0), s.esr, 1e-12);
    EXPECT_NEAR(s.esr, s.rate_bob - s.rate_eve_de, 1e-12);
}

TEST(FixedPointInput, OrthogonalColumnsKeepTheirNorms)
{
    auto inst = masec::fixture::make_instance(6, 3, 4, 5);
    Rng rng(8);
    const CMat Q = random_cmat(6, 3, rng).householderQr().householderQ() * CMat::Identity(6, 3);
    const RVec w = (RVec(3) << 0.5, 1.0, 2.0).finished();
    const CMat F = Q * w.cast<cd>().asDiagonal() * 0.03;
    const FixedPointInput in = make_fixed_point_input(F, inst.stats, inst.cfg.noise_power);
    EXPECT_LE((in.frame - CMat::Identity(3, 3)).norm(), 1e-15);
    for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(in.d_col(j), F.col(j).squaredNorm(), 1e-15 * F.squaredNorm());
    const CMat B = inst.stats.lambda_los.cwiseSqrt().cast<cd>().asDiagonal() * inst.stats.g_los.adjoint() * F;
    EXPECT_LE(rel_frobenius(in.b_mean, B), 1e-14);
}

TEST(FixedPointInput, FrameDiagonalizesColumnCorrelation)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto inst = masec::fixture::make_instance(8, 4, 4, seed);
        const FixedPointInput in = make_fixed_point_input(inst.F, inst.stats, inst.cfg.noise_power);
        const CMat &U = in.frame;
        EXPECT_LE((U.adjoint() * U - CMat::Identity(4, 4)).norm(), 1e-12);
        const CMat T = U.adjoint() * inst.F.adjoint() * inst.F * U;
        CMat expected = in.d_col.cast<cd>().asDiagonal();
        EXPECT_LE(rel_frobenius(T, expected), 1e-12);
        EXPECT_NEAR(in.d_col.sum(), inst.F.squaredNorm(), 1e-12 * inst.F.squaredNorm());
    }
}

TEST(FixedPointInput, EveRateInvariantUnderColumnMixing)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto inst = masec::fixture::make_instance(8, 4, 4, seed);
        Rng rng(mix_seed(seed, 3));
        const CMat U = random_cmat(4, 4, rng).householderQr().householderQ();
        const FixedPointInput a = make_fixed_point_input(inst.F, inst.stats, inst.cfg.noise_power);
        const FixedPointInput b = make_fixed_point_input(inst.F * U, inst.stats, inst.cfg.noise_power);
        const double ra = det_equiv_eve_rate(solve_fixed_point(a), a);
        const double rb = det_equiv_eve_rate(solve_fixed_point(b), b);
        EXPECT_NEAR(ra, rb, 1e-9 * std::abs(ra));
    }
}

TEST(FixedPointInput, CorrelatedColumnsTrackMonteCarlo)
{
    // Two nearly parallel streams: the per-column norms alone overstate Eve's diversity.
    auto inst = masec::fixture::make_instance(8, 4, 4, 11);
    Rng rng(12);
    CMat F = random_cmat(8, 4, rng);
    F.col(1) = F.col(0) + 0.1 * F.col(1);
    F = masec::fixture::scaled_to_power(F, inst.cfg.power_budget);
    const DeMcComparison c = compare_de_mc(F, inst.stats, inst.eves, inst.cfg.noise_power, 4000, 5);
    EXPECT_LE(std::abs(c.de - c.mc.mean), 4.0 * c.mc.std_error + 0.01 * c.mc.mean);
}
