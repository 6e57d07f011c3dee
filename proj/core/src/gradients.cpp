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


#include "masec/gradients.hpp"

#include <cmath>

namespace masec
{

namespace
{

// Fixed-point quantities in rescaled coordinates (sigma^2 = 1), shared by every direction.
struct Sensitivity
{
    CMat b;      // B / sigma
    CVec d;      // D * delta_tilde_unit
    CVec dt;     // D~ * delta_unit
    CVec phi;
    CVec phi_t;
    CMat gamma;  // sigma^2 Gamma
    CMat gamma_t;
    double x = 0.0; // delta / delta_unit
    double y = 0.0;
    double sigma = 1.0;
    double delta_unit = 1.0;

    Sensitivity(const FixedPointInput &in, const FixedPointSolution &sol)
    {
        sigma = std::sqrt(in.noise_power);
        delta_unit = sol.delta_unit;
        b = in.b_mean / sigma;
        d = (in.d_row * sol.delta_tilde_unit).cast<cd>();
        dt = (in.d_col * sol.delta_unit).cast<cd>();
        phi = sol.phi.cast<cd>();
        phi_t = sol.phi_tilde.cast<cd>();
        gamma = in.noise_power * sol.gamma;
        gamma_t = in.noise_power * sol.gamma_tilde;
        x = sol.delta / sol.delta_unit;
        y = sol.delta_tilde / sol.delta_tilde_unit;
    }

    struct Direction
    {
        CMat db;  // dB (rescaled)
        CMat dbh; // d(B^H) (rescaled)
        CMat ddt; // d D~ (rescaled); off-diagonal once the precoder moves
    };

    // Image of (a, b) = (d delta_n, d delta~_n) under the differentiated fixed-point map,
    // together with the matching change of the rate.
    struct Image
    {
        cd a, b, rate;
    };

    Image apply(const Direction &dir, cd a, cd bb) const
    {
        const double M = static_cast<double>(b.rows());
        const CVec dphi = -(phi.array().square() * d.array() * bb).matrix();
        CMat dcol = x * dir.ddt;
        dcol.diagonal() += a * dt;
        const CMat dphi_t = -(phi_t.asDiagonal() * dcol * phi_t.asDiagonal());

        CMat dxi = b * dphi_t * b.adjoint() + dir.db * phi_t.asDiagonal() * b.adjoint() +
                   b * phi_t.asDiagonal() * dir.dbh;
        CMat dinv = dxi;
        dinv.diagonal() += bb * d;
        const CMat dgamma = -gamma * dinv * gamma;

        CMat dinv_t = dir.dbh * phi.asDiagonal() * b + b.adjoint() * dphi.asDiagonal() * b +
                      b.adjoint() * phi.asDiagonal() * dir.db;
        dinv_t += dcol;
        const CMat dgamma_t = -gamma_t * dinv_t * gamma_t;

        Image img;
        img.a = (d.array() * dgamma.diagonal().array()).sum() / M;
        img.b = ((dir.ddt * gamma_t).trace() + (dt.array() * dgamma_t.diagonal().array()).sum()) / M;
        img.rate = (gamma * dinv).trace() + (phi_t.array() * dcol.diagonal().array()).sum() -
                   M * (a * y + x * bb);
        return img;
    }

    cd rate_derivative(const Direction &dir) const
    {
        // The map is affine in (a, b): probe three points and solve the 2 x 2 system exactly.
        const Image c = apply(dir, 0.0, 0.0);
        const Image ea = apply(dir, 1.0, 0.0);
        const Image eb = apply(dir, 0.0, 1.0);
        Eigen::Matrix2cd K;
        K << 1.0 - (ea.a - c.a), -(eb.a - c.a),
            -(ea.b - c.b), 1.0 - (eb.b - c.b);
        const Eigen::FullPivLU<Eigen::Matrix2cd> lu(K);
        if (!lu.isInvertible())
            throw NumericalError("sensitivity system is singular");
        const Eigen::Vector2cd ab = lu.solve(Eigen::Vector2cd(c.a, c.b));
        return apply(dir, ab(0), ab(1)).rate;
    }
};

CMat frame_of(const FixedPointInput &in)
{
    return in.frame.size() ? in.frame : CMat::Identity(in.size(), in.size());
}

CMat lambda_sqrt(const EveStatistics &stats)
{
    return stats.lambda_los.cwiseSqrt().cast<cd>().asDiagonal();
}

// g~'_m = d conj(G_LoS(n, m)) / d t_{n,i}.
CVec los_row_derivative(int n, int i, const AntennaLayout &layout, const EveSpec &eves,
                        const SystemConfig &cfg)
{
    const int M = eves.size();
    CVec g(M);
    for (int m = 0; m < M; ++m)
        g(m) = std::conj(field_response_derivative(layout.at(n), eves.direction[m], cfg.wavelength, i));
    return g;
}

void check_antenna(int n, const AntennaLayout &layout, const CMat &F)
{
    if (n < 0 || n >= layout.size())
        throw ConfigError("antenna index out of range");
    if (F.rows() != layout.size())
        throw ConfigError("F rows must match the number of antennas");
}

} // namespace

CMat grad_eve_wrt_precoder_implicit(const CMat &F, const EveStatistics &stats,
                                    const FixedPointSolution &sol, double noise_power)
{
    const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
    const Sensitivity s(in, sol);
    const CMat row_source = stats.g_los * lambda_sqrt(stats) / s.sigma; // row i enters d(B^H)
    const CMat U = frame_of(in);
    const CMat W = F * U;
    const Eigen::Index N = F.rows(), M = F.cols();

    // d/dF*_{ij} moves row j of B^H and of F^H F; both are then carried into the frame.
    CMat g(N, M);
    Sensitivity::Direction dir;
    dir.db = CMat::Zero(M, M);
    for (Eigen::Index j = 0; j < M; ++j)
    {
        const CVec uj = U.row(j).adjoint();
        for (Eigen::Index i = 0; i < N; ++i)
        {
            dir.dbh = uj * row_source.row(i);
            dir.ddt = uj * W.row(i) * s.delta_unit;
            g(i, j) = s.rate_derivative(dir);
        }
    }
    return g;
}

CMat grad_eve_wrt_precoder_envelope(const CMat &F, const EveStatistics &stats,
                                    const FixedPointSolution &sol, double noise_power)
{
    const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
    const CMat U = frame_of(in);
    return (stats.g_los * lambda_sqrt(stats) * sol.gamma * in.b_mean * sol.phi_tilde.cast<cd>().asDiagonal() +
            (noise_power * sol.delta) * F * U * sol.gamma_tilde) *
           U.adjoint();
}

CMat grad_bob_wrt_precoder(const CMat &H, const CMat &F, double noise_power)
{
    const double sigma = std::sqrt(noise_power);
    const CMat A = H.adjoint() * F / sigma;
    CMat K = A.adjoint() * A;
    K.diagonal().array() += 1.0;
    return H * A * K.llt().solve(CMat::Identity(K.rows(), K.cols())) / sigma;
}

Vec2 grad_bob_wrt_position(int n, const AntennaLayout &layout, const BobPaths &paths,
                           const CMat &F, const SystemConfig &cfg)
{
    check_antenna(n, layout, F);
    const double sigma = std::sqrt(cfg.noise_power);
    const CMat H = build_bob_channel(layout, paths, cfg);
    const CMat A = H.adjoint() * F / sigma;
    CMat K = A.adjoint() * A;
    K.diagonal().array() += 1.0;
    // v = W^{-1} H^H F F^H e_n with W = I + A A^H, via W^{-1} A = A (I + A^H A)^{-1}.
    const CVec v = sigma * A * K.llt().solve(CVec(F.row(n).adjoint()));
    const CMat ar_h = receive_steering_matrix(paths).adjoint();

    Vec2 g;
    for (int i = 0; i < 2; ++i)
    {
        Eigen::RowVectorXcd r(paths.size());
        for (int l = 0; l < paths.size(); ++l)
            r(l) = field_response_derivative(layout.at(n), paths.tx_direction[l], cfg.wavelength, i) *
                   paths.gain(l);
        const Eigen::RowVectorXcd dh = r * ar_h;
        g(i) = 2.0 / cfg.noise_power * (dh * v)(0).real();
    }
    return g;
}

Vec2 grad_eve_wrt_position_implicit(int n, const AntennaLayout &layout, const EveSpec &eves,
                                    const EveStatistics &stats, const CMat &F,
                                    const FixedPointSolution &sol, const SystemConfig &cfg)
{
    check_antenna(n, layout, F);
    const FixedPointInput in = make_fixed_point_input(F, stats, cfg.noise_power);
    const Sensitivity s(in, sol);
    const CMat ls = lambda_sqrt(stats);
    const Eigen::RowVectorXcd wn = F.row(n) * frame_of(in);
    const Eigen::Index M = F.cols();

    Vec2 g;
    for (int i = 0; i < 2; ++i)
    {
        Sensitivity::Direction dir;
        dir.db = ls * los_row_derivative(n, i, layout, eves, cfg) * wn / s.sigma;
        dir.dbh = dir.db.adjoint();
        dir.ddt = CMat::Zero(M, M);
        g(i) = s.rate_derivative(dir).real();
    }
    return g;
}

Vec2 grad_eve_wrt_position_envelope(int n, const AntennaLayout &layout, const EveSpec &eves,
                                    const EveStatistics &stats, const CMat &F,
                                    const FixedPointSolution &sol, const SystemConfig &cfg)
{
    check_antenna(n, layout, F);
    const FixedPointInput in = make_fixed_point_input(F, stats, cfg.noise_power);
    const Eigen::RowVectorXcd lhs =
        F.row(n) * frame_of(in) * sol.phi_tilde.cast<cd>().asDiagonal() * in.b_mean.adjoint() * sol.gamma * lambda_sqrt(stats);
    Vec2 g;
    for (int i = 0; i < 2; ++i)
        g(i) = 2.0 * (lhs * los_row_derivative(n, i, layout, eves, cfg))(0).real();
    return g;
}

RVec fd_gradient(const std::function<double(const RVec &)> &objective, const RVec &x,
                 const FdConfig &fd)
{
    if (!(fd.step > 0.0) || !(fd.scale > 0.0))
        throw ConfigError("fd_gradient: step and scale must be positive");
    RVec g(x.size());
    RVec p = x;
    for (Eigen::Index k = 0; k < x.size(); ++k)
    {
        const double h = fd.relative ? fd.step * std::max(std::abs(x(k)), fd.scale) : fd.step * fd.scale;
        p(k) = x(k) + h;
        const double up = objective(p);
        p(k) = x(k) - h;
        const double down = objective(p);
        p(k) = x(k);
        if (!std::isfinite(up) || !std::isfinite(down))
            throw NumericalError("fd_gradient: non-finite objective");
        g(k) = (up - down) / (2.0 * h);
    }
    return g;
}

RVec flatten_complex(const CMat &F)
{
    const Eigen::Index n = F.size();
    RVec x(2 * n);
    x.head(n) = F.real().reshaped();
    x.tail(n) = F.imag().reshaped();
    return x;
}

CMat unflatten_complex(const RVec &x, Eigen::Index rows, Eigen::Index cols)
{
    const Eigen::Index n = rows * cols;
    if (x.size() != 2 * n)
        throw ConfigError("unflatten_complex: size mismatch");
    CMat F(rows, cols);
    F.real() = x.head(n).reshaped(rows, cols);
    F.imag() = x.tail(n).reshaped(rows, cols);
    return F;
}

RVec wirtinger_to_real(const CMat &g)
{
    return 2.0 * flatten_complex(g);
}

double gradient_rel_error(const RVec &a, const RVec &b, double floor)
{
    if (a.size() != b.size())
        throw ConfigError("gradient_rel_error: size mismatch");
    if (a.size() == 0)
        return 0.0;
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), floor);
}

} // namespace masec
