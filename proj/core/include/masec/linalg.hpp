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

#pragma once

#include "masec/types.hpp"

namespace masec
{

/// log|A| for Hermitian positive definite A, from its Cholesky factor.
/// Throws NumericalError if the factorization fails or the result is not finite.
double logdet_hpd(const CMat &A);

/// A^{-1} for Hermitian positive definite A. The result is re-symmetrized.
CMat inverse_hpd(const CMat &A);

/// Frobenius-relative difference ||a - b|| / max(||b||, floor).
double rel_frobenius(const CMat &a, const CMat &b, double floor = 1e-300);

/// Real inner product <a, b> = 2 Re tr(a^H b) on complex matrices seen as R^{2n}.
double real_inner(const CMat &a, const CMat &b);

/// Moore-Penrose pseudo-inverse via SVD; singular values below rel_tol * s_max are dropped.
CMat pseudo_inverse(const CMat &A, double rel_tol = 1e-10);

} // namespace masec
