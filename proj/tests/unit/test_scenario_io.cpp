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

#include "masec/scenario_io.hpp"
#include "support.hpp"

using namespace masec;

TEST(ScenarioIo, RoundTripIsExact)
{
    SystemConfig cfg;
    const Scenario s = sample_scenario(cfg, ScenarioRanges{}, std::uint64_t{9});
    const Scenario r = scenario_from_json(nlohmann::json::parse(scenario_to_json(s).dump()));
    EXPECT_EQ(r.seed, s.seed);
    EXPECT_EQ(r.bob_gain, s.bob_gain);
    EXPECT_EQ(r.bob_elevation, s.bob_elevation);
    EXPECT_EQ(r.bob_rx_angle, s.bob_rx_angle);
    EXPECT_EQ(r.eve_path_loss, s.eve_path_loss);
    EXPECT_EQ(r.eve_azimuth, s.eve_azimuth);
    EXPECT_EQ(r.bob_distance, s.bob_distance);
}

TEST(ScenarioIo, FileRoundTrip)
{
    SystemConfig cfg;
    cfg.n_paths = 4;
    const Scenario s = sample_scenario(cfg, ScenarioRanges{}, std::uint64_t{10});
    const std::string path = fixture::temp_dir("scenario_io") + "/s.json";
    save_scenario(s, path);
    const Scenario r = load_scenario(path);
    EXPECT_EQ(r.bob_gain, s.bob_gain);
    EXPECT_THROW(load_scenario(path + ".missing"), ConfigError);
}

TEST(ScenarioIo, MalformedInputIsConfigError)
{
    EXPECT_THROW(scenario_from_json(nlohmann::json::parse(R"({"seed": 1})")), ConfigError);
    EXPECT_THROW(scenario_from_json(nlohmann::json::parse(R"({"seed":1,"bob":{"gain":[[1]]},"eves":{}})")),
                 ConfigError);
}
