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


#include "masec/deterministic_equivalent.hpp"

#include <algorithm>
#include <cmath>

#include "masec/linalg.hpp"

namespace masec
{

namespace
{

// The fixed point in rescaled coordinates: sigma^2 = 1, B_n = B / sigma,
// D_n = D * delta_tilde_unit, D~_n = D~ * delta_unit.
struct Rescaled
{
    CMat b;
    RVec d;
    RVec dt;
    double sigma2 = 1.0;
    double delta_unit = 1.0;
    double delta_tilde_unit = 1.0;
};

Rescaled rescale(const FixedPointInput &in)
{
    Rescaled r;
    const auto [du, dtu] = fixed_point_units(in);
    r.sigma2 = in.noise_power;
    r.delta_unit = du;
    r.delta_tilde_unit = dtu;
    r.b = in.b_mean / std::sqrt(in.noise_power);
    r.d = in.d_row * dtu;
    r.dt = in.d_col * du;
    return r;
}

struct MapValue
{
    RVec phi;
    RVec phi_tilde;
    CMat gamma;       // rescaled: sigma^2 Gamma
    CMat gamma_tilde; // rescaled: sigma^2 Gamma~
    CMat gamma_inv;
    double x = 0.0; // image of delta_n
    double y = 0.0; // image of delta~_n
};

MapValue apply_map(const Rescaled &r, double x, double y)
{
    const Eigen::Index M = r.b.rows();
    MapValue v;
    v.phi = (1.0 + y * r.d.array()).inverse().matrix();
    v.phi_tilde = (1.0 + x * r.dt.array()).inverse().matrix();

    v.gamma_inv = r.b * v.phi_tilde.cast<cd>().asDiagonal() * r.b.adjoint();
    v.gamma_inv.diagonal().array() += v.phi.array().inverse().cast<cd>();
    v.gamma = inverse_hpd(v.gamma_inv);

    CMat gt_inv = r.b.adjoint() * v.phi.cast<cd>().asDiagonal() * r.b;
    gt_inv.diagonal().array() += v.phi_tilde.array().inverse().cast<cd>();
    v.gamma_tilde = inverse_hpd(gt_inv);

    v.x = (r.d.array() * v.gamma.diagonal().real().array()).sum() / static_cast<double>(M);
    v.y = (r.dt.array() * v.gamma_tilde.diagonal().real().array()).sum() / static_cast<double>(M);
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
        throw NumericalError("fixed point: non-finite map value");
    return v;
}

FixedPointSolution to_physical(const Rescaled &r, const MapValue &v, double x, double y)
{
    FixedPointSolution s;
    s.delta = x * r.delta_unit;
    s.delta_tilde = y * r.delta_tilde_unit;
    s.phi = v.phi;
    s.phi_tilde = v.phi_tilde;
    s.gamma = v.gamma / r.sigma2;
    s.gamma_tilde = v.gamma_tilde / r.sigma2;
    s.residual = std::max(std::abs(v.x - x), std::abs(v.y - y));
    s.delta_unit = r.delta_unit;
    s.delta_tilde_unit = r.delta_tilde_unit;
    return s;
}

} // namespace

void FixedPointInput::validate() const
{
    const Eigen::Index M = b_mean.rows();
    if (b_mean.cols() != M || d_row.size() != M || d_col.size() != M || M == 0)
        throw ConfigError("FixedPointInput: inconsistent dimensions");
    if (!(noise_power > 0.0))
        throw ConfigError("FixedPointInput: noise power must be positive");
    if ((d_row.array() < 0.0).any() || (d_col.array() < 0.0).any())
        throw ConfigError("FixedPointInput: diagonals must be non-negative");
}

FixedPointInput make_fixed_point_input(const CMat &F, const EveStatistics &stats, double noise_power)
{
    if (F.rows() != stats.g_los.rows() || F.cols() != stats.g_los.cols())
        throw ConfigError("make_fixed_point_input: F must be N x M");
    FixedPointInput in;
    in.d_row = stats.d_nlos;
    in.noise_power = noise_power;

    // The Eve rate is invariant under F -> F U, so work in the eigenbasis of F^H F where the
    // column correlation is exactly diagonal. Orthogonal columns are used as they are.
    const Eigen::Index M = F.cols();
    const CMat gram = F.adjoint() * F;
    CMat off = gram;
    off.diagonal().setZero();
    if (off.norm() > 1e-13 * gram.norm())
    {
        const Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (gram + gram.adjoint()));
        if (eig.info() != Eigen::Success)
            throw NumericalError("make_fixed_point_input: eigen-decomposition failed");
        in.frame = eig.eigenvectors();
        in.d_col = eig.eigenvalues().cwiseMax(0.0);
    }
    else
    {
        in.frame = CMat::Identity(M, M);
        in.d_col = gram.diagonal().real();
    }
    in.b_mean = stats.lambda_los.cwiseSqrt().cast<cd>().asDiagonal() * (stats.g_los.adjoint() * F * in.frame);
    return in;
}

std::pair<double, double> fixed_point_units(const FixedPointInput &in)
{
    // delta = delta_n / b and delta~ = delta~_n / a with a b = sigma^2; a and b balance max D / a
    // against max D~ / b.
    const double sigma = std::sqrt(in.noise_power);
    const double dmax = in.d_row.size() ? in.d_row.maxCoeff() : 0.0;
    const double dtmax = in.d_col.size() ? in.d_col.maxCoeff() : 0.0;
    double a = sigma;
    double b = sigma;
    if (dmax > 0.0 && dtmax > 0.0)
    {
        a = sigma * std::sqrt(dmax / dtmax);
        b = sigma * std::sqrt(dtmax / dmax);
    }
    else if (dtmax > 0.0)
    {
        b = dtmax;
        a = in.noise_power / b;
    }
    else if (dmax > 0.0)
    {
        a = dmax;
        b = in.noise_power / a;
    }
    return {1.0 / b, 1.0 / a};
}

FixedPointSolution solve_fixed_point(const FixedPointInput &in, const SolverOptions &opts)
{
    in.validate();
    if (!(opts.tol > 0.0) || !(opts.damping > 0.0 && opts.damping <= 1.0) || opts.max_iter < 1)
        throw ConfigError("solve_fixed_point: invalid solver options");

    const Rescaled r = rescale(in);
    // A zero diagonal pins its scalar at 0; the other one then follows in a single undamped step.
    const bool x_free = (r.d.array() > 0.0).any();
    const bool y_free = (r.dt.array() > 0.0).any();
    const double eta = (x_free && y_free) ? opts.damping : 1.0;
    double x = x_free ? 1.0 : 0.0;
    double y = y_free ? 1.0 : 0.0;

    std::vector<double> history;
    MapValue v = apply_map(r, x, y);
    for (int it = 0;; ++it)
    {
        const double res = std::max(std::abs(v.x - x), std::abs(v.y - y));
        if (opts.record_history)
            history.push_back(res);
        if (res <= opts.tol)
        {
            FixedPointSolution s = to_physical(r, v, x, y);
            s.iterations = it;
            s.residual_history = std::move(history);
            return s;
        }
        if (it == opts.max_iter)
            throw ConvergenceError("solve_fixed_point: no convergence after " +
                                       std::to_string(opts.max_iter) + " iterations",
                                   res, it);

        if (opts.accelerate && x_free && y_free)
        {
            // Newton on (x, y) - T(x, y) with a forward-difference Jacobian of T.
            const double hx = 1e-7 * std::max(1.0, x);
            const double hy = 1e-7 * std::max(1.0, y);
            const MapValue vx = apply_map(r, x + hx, y);
            const MapValue vy = apply_map(r, x, y + hy);
            Eigen::Matrix2d K;
            K << 1.0 - (vx.x - v.x) / hx, -(vy.x - v.x) / hy,
                -(vx.y - v.y) / hx, 1.0 - (vy.y - v.y) / hy;
            const Eigen::Vector2d step = K.fullPivLu().solve(Eigen::Vector2d(v.x - x, v.y - y));
            const double nx = x + step(0);
            const double ny = y + step(1);
            if (std::isfinite(nx) && std::isfinite(ny) && nx > 0.0 && ny > 0.0)
            {
                try
                {
                    MapValue vn = apply_map(r, nx, ny);
                    if (std::max(std::abs(vn.x - nx), std::abs(vn.y - ny)) < res)
                    {
                        x = nx;
                        y = ny;
                        v = std::move(vn);
                        continue;
                    }
                }
                catch (const NumericalError &)
                {
                }
            }
        }
        x = (1.0 - eta) * x + eta * v.x;
        y = (1.0 - eta) * y + eta * v.y;
        v = apply_map(r, x, y);
    }
}

FixedPointSolution evaluate_fixed_point(const FixedPointInput &in, double delta, double delta_tilde)
{
    in.validate();
    const Rescaled r = rescale(in);
    const double x = delta / r.delta_unit;
    const double y = delta_tilde / r.delta_tilde_unit;
    return to_physical(r, apply_map(r, x, y), x, y);
}

double det_equiv_eve_rate(const FixedPointSolution &sol, const FixedPointInput &in)
{
    const double sigma2 = in.noise_power;
    const double M = static_cast<double>(in.size());
    double rate = -logdet_hpd(sigma2 * sol.gamma);
    for (Eigen::Index j = 0; j < in.d_col.size(); ++j)
        rate += std::log1p(sol.delta * in.d_col(j));
    rate -= sigma2 * M * sol.delta * sol.delta_tilde;
    if (!std::isfinite(rate))
        throw NumericalError("det_equiv_eve_rate: non-finite rate");
    return rate;
}

double rate_bob(const CMat &H, const CMat &F, double noise_power)
{
    if (H.rows() != F.rows())
        throw ConfigError("rate_bob: H and F must have the same number of rows");
    const CMat A = H.adjoint() * F / std::sqrt(noise_power); // L x M
    // log|I + A A^H| = log|I + A^H A|; factor the smaller Gram matrix.
    CMat W = A.rows() <= A.cols() ? CMat(A * A.adjoint()) : CMat(A.adjoint() * A);
    W.diagonal().array() += 1.0;
    return logdet_hpd(W);
}

RateReport esr(const CMat &H, const CMat &F, const EveStatistics &stats, double noise_power,
               const SolverOptions &opts)
{
    const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
    const FixedPointSolution sol = solve_fixed_point(in, opts);
    RateReport r;
    r.rate_bob = rate_bob(H, F, noise_power);
    r.rate_eve_de = det_equiv_eve_rate(sol, in);
    r.esr = std::max(0.0, r.rate_bob - r.rate_eve_de);
    r.esr_bits = nats_to_bits(r.esr);
    return r;
}

} // namespace masec
