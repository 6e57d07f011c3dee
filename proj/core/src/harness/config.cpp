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


#include "masec/harness/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace masec::harness
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

double parse_number(const std::string &key, const std::string &text)
{
    try
    {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
    }
}

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double deg(double d) { return d * kPi / 180.0; }

} // namespace

const std::vector<ConfigKey> &config_keys()
{
    static const std::vector<ConfigKey> keys = {
        {"n_tx", "8", "transmit movable antennas N"},
        {"n_eves", "4", "data streams and eavesdroppers M"},
        {"n_paths", "16", "Bob antennas and paths L"},
        {"carrier_ghz", "28", "carrier frequency"},
        {"noise_dbm", "-90", "noise power sigma^2"},
        {"power_dbm", "10", "transmit power budget P"},
        {"box_half_x_wl", "50", "movement region half-width D_x, wavelengths"},
        {"box_half_y_wl", "50", "movement region half-height D_y, wavelengths"},
        {"min_spacing_wl", "0.5", "minimum antenna spacing, wavelengths"},
        {"log_base", "bits", "bits or nats for reported ESR"},
        {"elevation_deg", "10,30", "sampling range of path elevations"},
        {"azimuth_deg", "10,30", "sampling range of path azimuths"},
        {"rx_angle_deg", "40,70", "sampling range of Bob's angles of arrival"},
        {"bob_distance_m", "40", "Alice-Bob distance"},
        {"eve_distance_m", "40", "Alice-Eve distance"},
        {"k_factor", "4", "eavesdropper Rician K-factor (linear)"},
        {"pl_intercept_db", "61.4", "path-loss intercept a"},
        {"pl_exponent", "2", "path-loss exponent b"},
        {"shadowing_std_db", "5.8", "log-normal shadowing standard deviation"},
        {"fp_tol", "1e-10", "fixed-point residual tolerance"},
        {"fp_max_iter", "500", "fixed-point iteration cap"},
        {"fp_damping", "0.5", "fixed-point damping"},
        {"fp_accelerate", "true", "Newton-accelerated fixed point"},
        {"pg_max_iter", "2000", "precoder ascent iteration cap"},
        {"pg_grad_tol", "1e-4", "precoder projected-gradient tolerance"},
        {"pg_bb_step", "true", "Barzilai-Borwein trial step"},
        {"amsgrad_beta1", "0.9", "AMSGrad beta1"},
        {"amsgrad_lambda1", "0.99", "AMSGrad lambda1"},
        {"amsgrad_beta2", "0.9", "AMSGrad beta2"},
        {"amsgrad_alpha", "0.5", "AMSGrad alpha, wavelengths"},
        {"amsgrad_running_max", "true", "keep the running maximum of the second moment"},
        {"inner_iter", "50", "position iterations per antenna"},
        {"ao_max_outer", "20", "outer iteration cap"},
        {"ao_outer_tol", "1e-4", "outer objective change tolerance, nats"},
        {"seeds", "1", "seed list, e.g. 1,2,5-9"},
        {"trials", "1000", "Monte Carlo trials"},
        {"sweep", "", "AXIS=v1,v2,... with AXIS in N, M, L, K_e, trials, alpha"},
        {"threads", "1", "worker threads across sweep cells"},
        {"mc_crosscheck", "false", "add Monte Carlo cross-check rows to benchmark"},
        {"alpha_list", "0.1,0.5,1.0", "alpha values for the position convergence traces"},
        {"n_list", "4,8", "antenna counts for the precoder convergence traces"},
        {"gradcheck_instances", "50", "random instances in the gradient suite"},
        {"gradcheck_fd_tol", "1e-5", "gradient vs finite-difference tolerance"},
        {"gradcheck_envelope_tol", "1e-8", "implicit vs envelope tolerance"},
    };
    return keys;
}

std::string axis_name(SweepAxis a)
{
    switch (a)
    {
    case SweepAxis::n_tx: return "N";
    case SweepAxis::n_eves: return "M";
    case SweepAxis::n_paths: return "L";
    case SweepAxis::k_factor: return "K_e";
    case SweepAxis::trials: return "trials";
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::none: break;
    }
    return "none";
}

SweepAxis parse_axis(const std::string &s)
{
    for (SweepAxis a : {SweepAxis::n_tx, SweepAxis::n_eves, SweepAxis::n_paths, SweepAxis::k_factor,
                        SweepAxis::trials, SweepAxis::alpha})
        if (axis_name(a) == s)
            return a;
    throw ConfigError("unknown sweep axis '" + s + "' (expected N, M, L, K_e, trials or alpha)");
}

ExperimentConfig::ExperimentConfig()
{
    for (const auto &k : config_keys())
        values[k.key] = k.default_value;
}

void ExperimentConfig::set(const std::string &key, const std::string &value)
{
    auto it = values.find(key);
    if (it == values.end())
        throw ConfigError("unknown config key '" + key + "'");
    it->second = trim(value);
}

const std::string &ExperimentConfig::get(const std::string &key) const
{
    auto it = values.find(key);
    if (it == values.end())
        throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double ExperimentConfig::number(const std::string &key) const
{
    return parse_number(key, get(key));
}

int ExperimentConfig::integer(const std::string &key) const
{
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("config key '" + key + "': expected an integer");
    return static_cast<int>(v);
}

bool ExperimentConfig::flag(const std::string &key) const
{
    const std::string &v = get(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ConfigError("config key '" + key + "': expected true or false");
}

std::vector<double> ExperimentConfig::number_list(const std::string &key) const
{
    std::vector<double> out;
    for (const auto &item : split(get(key), ','))
        if (!item.empty())
            out.push_back(parse_number(key, item));
    return out;
}

std::vector<std::uint64_t> ExperimentConfig::seeds() const
{
    std::vector<std::uint64_t> out;
    for (const auto &item : split(get("seeds"), ','))
    {
        if (item.empty())
            continue;
        const auto dash = item.find('-', 1);
        try
        {
            if (dash == std::string::npos)
            {
                out.push_back(std::stoull(item));
                continue;
            }
            const auto lo = std::stoull(item.substr(0, dash));
            const auto hi = std::stoull(item.substr(dash + 1));
            if (hi < lo || hi - lo > 1000000)
                throw ConfigError("bad seed range '" + item + "'");
            for (auto s = lo; s <= hi; ++s)
                out.push_back(s);
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &)
        {
            throw ConfigError("bad seed '" + item + "'");
        }
    }
    if (out.empty())
        throw ConfigError("seed list is empty");
    return out;
}

Sweep ExperimentConfig::sweep() const
{
    Sweep s;
    const std::string &text = get("sweep");
    if (text.empty())
        return s;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError("sweep must look like AXIS=v1,v2,...");
    s.axis = parse_axis(trim(text.substr(0, eq)));
    for (const auto &item : split(text.substr(eq + 1), ','))
        if (!item.empty())
            s.values.push_back(parse_number("sweep", item));
    if (s.values.empty())
        throw ConfigError("sweep has no values");
    return s;
}

SystemConfig ExperimentConfig::system() const
{
    SystemConfig c;
    c.n_tx = integer("n_tx");
    c.n_eves = integer("n_eves");
    c.n_paths = integer("n_paths");
    c.wavelength = kSpeedOfLight / (number("carrier_ghz") * 1e9);
    c.noise_power = dbm_to_watt(number("noise_dbm"));
    c.power_budget = dbm_to_watt(number("power_dbm"));
    c.box_half_x = number("box_half_x_wl") * c.wavelength;
    c.box_half_y = number("box_half_y_wl") * c.wavelength;
    c.min_spacing = number("min_spacing_wl") * c.wavelength;
    const std::string &base = get("log_base");
    if (base == "bits")
        c.log_base = LogBase::bits;
    else if (base == "nats")
        c.log_base = LogBase::nats;
    else
        throw ConfigError("log_base must be bits or nats");
    return c;
}

ScenarioRanges ExperimentConfig::ranges() const
{
    auto range = [this](const std::string &key) {
        const auto v = number_list(key);
        if (v.size() != 2)
            throw ConfigError("config key '" + key + "': expected lo,hi");
        return AngleRange{deg(v[0]), deg(v[1])};
    };
    ScenarioRanges r;
    r.elevation = range("elevation_deg");
    r.azimuth = range("azimuth_deg");
    r.rx_angle = range("rx_angle_deg");
    r.bob_distance = number("bob_distance_m");
    r.eve_distance = number("eve_distance_m");
    r.k_factor = number("k_factor");
    r.path_loss.intercept_db = number("pl_intercept_db");
    r.path_loss.exponent = number("pl_exponent");
    r.path_loss.shadowing_std_db = number("shadowing_std_db");
    return r;
}

SolverOptions ExperimentConfig::solver() const
{
    SolverOptions s;
    s.tol = number("fp_tol");
    s.max_iter = integer("fp_max_iter");
    s.damping = number("fp_damping");
    s.accelerate = flag("fp_accelerate");
    return s;
}

AoOptions ExperimentConfig::ao_options() const
{
    AoOptions o;
    o.max_outer = integer("ao_max_outer");
    o.outer_tol = number("ao_outer_tol");
    o.precoder.max_iter = integer("pg_max_iter");
    o.precoder.grad_tol = number("pg_grad_tol");
    o.precoder.bb_step = flag("pg_bb_step");
    o.precoder.solver = solver();
    o.position.inner_iter = integer("inner_iter");
    o.position.amsgrad.beta1 = number("amsgrad_beta1");
    o.position.amsgrad.lambda1 = number("amsgrad_lambda1");
    o.position.amsgrad.beta2 = number("amsgrad_beta2");
    o.position.amsgrad.alpha = number("amsgrad_alpha");
    o.position.amsgrad.running_max = flag("amsgrad_running_max");
    return o;
}

ExperimentConfig ExperimentConfig::at_sweep_value(SweepAxis axis, double value) const
{
    ExperimentConfig c = *this;
    const std::string v = format_value(value);
    switch (axis)
    {
    case SweepAxis::n_tx: c.set("n_tx", v); break;
    case SweepAxis::n_eves: c.set("n_eves", v); break;
    case SweepAxis::n_paths: c.set("n_paths", v); break;
    case SweepAxis::k_factor: c.set("k_factor", v); break;
    case SweepAxis::trials: c.set("trials", v); break;
    case SweepAxis::alpha: c.set("amsgrad_alpha", v); break;
    case SweepAxis::none: break;
    }
    return c;
}

std::string ExperimentConfig::canonical_text() const
{
    std::string out;
    for (const auto &[k, v] : values)
        out += k + "=" + v + "\n";
    return out;
}

void ExperimentConfig::validate() const
{
    system().validate();
    ranges().validate();
    ao_options().validate();
    seeds();
    const Sweep s = sweep();
    if (integer("trials") < 1)
        throw ConfigError("trials must be at least 1");
    if (integer("threads") < 1)
        throw ConfigError("threads must be at least 1");
    if (integer("gradcheck_instances") < 1)
        throw ConfigError("gradcheck_instances must be at least 1");
    flag("mc_crosscheck");
    if (number_list("alpha_list").empty() || number_list("n_list").empty())
        throw ConfigError("alpha_list and n_list must be non-empty");
    for (double v : s.values)
        at_sweep_value(s.axis, v).system().validate();
}

ExperimentConfig parse_config_text(const std::string &text)
{
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "out")
            cfg.out_dir = value;
        else
            cfg.set(key, value);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(ExperimentConfig &cfg, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be key=value: '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    if (key == "out")
        cfg.out_dir = trim(assignment.substr(eq + 1));
    else
        cfg.set(key, assignment.substr(eq + 1));
}

std::string config_hash(const ExperimentConfig &cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : cfg.canonical_text())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace masec::harness
