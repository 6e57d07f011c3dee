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

#include <string>

#include <json.hpp>

#include "masec/channel.hpp"

namespace masec
{

/*!
# Scenario JSON
```
{
  "seed": 7,
  "bob":  { "distance": 40, "gain": [[re, im], ...], "elevation": [...], "azimuth": [...], "rx_angle": [...] },
  "eves": { "k_factor": [...], "path_loss": [...], "elevation": [...], "azimuth": [...], "distance": [...] }
}
```
Angles in radians, path losses linear. Doubles are written with round-trip precision,
so a reloaded scenario reproduces every downstream number bit for bit.
*/
nlohmann::json scenario_to_json(const Scenario &s);
Scenario scenario_from_json(const nlohmann::json &j);

void save_scenario(const Scenario &s, const std::string &path);
Scenario load_scenario(const std::string &path);

} // namespace masec
