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

#include "masec/linalg.hpp"

#include <cmath>

namespace masec
{

double logdet_hpd(const CMat &A)
{
    Eigen::LLT<CMat> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("logdet_hpd: matrix is not Hermitian positive definite");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        acc += std::log(std::real(llt.matrixLLT()(i, i)));
    acc *= 2.0;
    if (!std::isfinite(acc))
        throw NumericalError("logdet_hpd: non-finite log-determinant");
    return acc;
}

CMat inverse_hpd(const CMat &A)
{
    Eigen::LLT<CMat> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("inverse_hpd: matrix is not Hermitian positive definite");
    CMat inv = llt.solve(CMat::Identity(A.rows(), A.cols()));
    return 0.5 * (inv + inv.adjoint());
}

double rel_frobenius(const CMat &a, const CMat &b, double floor)
{
    return (a - b).norm() / std::max(b.norm(), floor);
}

double real_inner(const CMat &a, const CMat &b)
{
    return 2.0 * (a.array().conjugate() * b.array()).sum().real();
}

CMat pseudo_inverse(const CMat &A, double rel_tol)
{
    Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec &s = svd.singularValues();
    const double cutoff = s.size() > 0 ? rel_tol * s(0) : 0.0;
    RVec inv_s = RVec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff)
            inv_s(i) = 1.0 / s(i);
    return svd.matrixV() * inv_s.cast<cd>().asDiagonal() * svd.matrixU().adjoint();
}

} // namespace masec
