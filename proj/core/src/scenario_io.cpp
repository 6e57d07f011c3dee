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


#include "masec/scenario_io.hpp"

#include <fstream>

namespace masec
{

namespace
{

nlohmann::json real_array(const RVec &v)
{
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

nlohmann::json complex_array(const CVec &v)
{
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back({v(i).real(), v(i).imag()});
    return a;
}

RVec read_real(const nlohmann::json &j, const char *key)
{
    const auto &a = j.at(key);
    if (!a.is_array())
        throw ConfigError(std::string("scenario JSON: '") + key + "' must be an array");
    RVec v(static_cast<Eigen::Index>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return v;
}

CVec read_complex(const nlohmann::json &j, const char *key)
{
    const auto &a = j.at(key);
    if (!a.is_array())
        throw ConfigError(std::string("scenario JSON: '") + key + "' must be an array");
    CVec v(static_cast<Eigen::Index>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
    {
        if (!a[i].is_array() || a[i].size() != 2)
            throw ConfigError("scenario JSON: complex values are [re, im] pairs");
        v(static_cast<Eigen::Index>(i)) = cd(a[i][0].get<double>(), a[i][1].get<double>());
    }
    return v;
}

} // namespace

nlohmann::json scenario_to_json(const Scenario &s)
{
    nlohmann::json j;
    j["seed"] = s.seed;
    j["bob"] = {{"distance", s.bob_distance},
                {"gain", complex_array(s.bob_gain)},
                {"elevation", real_array(s.bob_elevation)},
                {"azimuth", real_array(s.bob_azimuth)},
                {"rx_angle", real_array(s.bob_rx_angle)}};
    j["eves"] = {{"k_factor", real_array(s.eve_k_factor)},
                 {"path_loss", real_array(s.eve_path_loss)},
                 {"elevation", real_array(s.eve_elevation)},
                 {"azimuth", real_array(s.eve_azimuth)},
                 {"distance", real_array(s.eve_distance)}};
    return j;
}

Scenario scenario_from_json(const nlohmann::json &j)
{
    try
    {
        Scenario s;
        s.seed = j.at("seed").get<std::uint64_t>();
        const auto &bob = j.at("bob");
        s.bob_distance = bob.at("distance").get<double>();
        s.bob_gain = read_complex(bob, "gain");
        s.bob_elevation = read_real(bob, "elevation");
        s.bob_azimuth = read_real(bob, "azimuth");
        s.bob_rx_angle = read_real(bob, "rx_angle");
        const auto &eves = j.at("eves");
        s.eve_k_factor = read_real(eves, "k_factor");
        s.eve_path_loss = read_real(eves, "path_loss");
        s.eve_elevation = read_real(eves, "elevation");
        s.eve_azimuth = read_real(eves, "azimuth");
        s.eve_distance = read_real(eves, "distance");

        const auto L = s.bob_gain.size();
        const auto M = s.eve_k_factor.size();
        if (s.bob_elevation.size() != L || s.bob_azimuth.size() != L || s.bob_rx_angle.size() != L)
            throw ConfigError("scenario JSON: Bob path lists differ in length");
        if (s.eve_path_loss.size() != M || s.eve_elevation.size() != M ||
            s.eve_azimuth.size() != M || s.eve_distance.size() != M)
            throw ConfigError("scenario JSON: eavesdropper lists differ in length");
        return s;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("scenario JSON: ") + e.what());
    }
}

void save_scenario(const Scenario &s, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << scenario_to_json(s).dump(2) << '\n';
}

Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace masec
