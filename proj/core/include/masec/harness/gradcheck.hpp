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

#include <cstdint>
#include <string>
#include <vector>

namespace masec::harness
{

/// Deliberate defects for negative-control tests of the suite itself.
enum class GradFault
{
    none,
    flip_eve_precoder_sign
};

struct GradcheckOptions
{
    int instances = 50;
    double fd_tol = 1e-5;
    double envelope_tol = 1e-8;
    std::uint64_t seed = 1;
    GradFault fault = GradFault::none;
};

struct GradcheckRow
{
    std::string operation;
    double max_rel_err = 0.0;
    double tolerance = 0.0;
    int instances = 0;
    bool pass = true;
};

struct GradcheckReport
{
    std::vector<GradcheckRow> rows;
    bool pass() const;
};

/*!
Random instances with N in [2, 6], M in [1, min(4, N)], L in [M, 6], random feasible layouts
near the origin and random precoders inside the power ball. Each analytic gradient is
compared against central differences, and the implicit and envelope forms against each other.
*/
GradcheckReport run_gradcheck(const GradcheckOptions &opts = {});

} // namespace masec::harness
