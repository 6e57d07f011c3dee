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


// The plot tool consumes these files and nothing else. The fixtures under tests/fixtures are
// small CLI outputs; a column change in the writer must show up here before it reaches the plots.

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

#include "masec/harness/experiments.hpp"

using namespace masec;
using namespace masec::harness;
using masec::fixture::read_file;

namespace
{

std::string fixture_path(const std::string &name)
{
    return std::string(MASEC_FIXTURES) + "/" + name;
}

void expect_numeric_columns(const CsvTable &t, const std::vector<std::string> &cols)
{
    for (const auto &c : cols)
    {
        const int k = t.column(c);
        ASSERT_GE(k, 0) << c;
        for (const auto &row : t.rows)
        {
            size_t used = 0;
            EXPECT_NO_THROW((void)std::stod(row[static_cast<size_t>(k)], &used)) << c;
            EXPECT_EQ(used, row[static_cast<size_t>(k)].size()) << c;
        }
    }
}

} // namespace

TEST(PlotInterface, DeVsMcSchema)
{
    const CsvTable t = read_csv(fixture_path("de_vs_mc.csv"));
    EXPECT_EQ(t.header, de_vs_mc_columns());
    ASSERT_FALSE(t.rows.empty());
    // "Theoretical" and "Empirical" series against the sweep value.
    expect_numeric_columns(t, {"value", "seed", "esr_de_bits", "esr_mc_bits", "eve_de_nats", "eve_mc_nats",
                               "eve_mc_se_nats", "rel_err"});
    const std::set<std::string> axes = [&] {
        std::set<std::string> s;
        for (const auto &r : t.rows)
            s.insert(r[static_cast<size_t>(t.column("axis"))]);
        return s;
    }();
    EXPECT_EQ(axes.size(), 1u);
}

TEST(PlotInterface, ConvergenceSchema)
{
    const CsvTable a1 = read_csv(fixture_path("alg1_trace.csv"));
    EXPECT_EQ(a1.header, alg1_columns());
    expect_numeric_columns(a1, {"n_tx", "seed", "iter", "objective_nats", "objective_bits"});
    const CsvTable a2 = read_csv(fixture_path("alg2_trace.csv"));
    EXPECT_EQ(a2.header, alg2_columns());
    expect_numeric_columns(a2, {"alpha", "seed", "global_iter", "objective_nats"});
    const CsvTable ao = read_csv(fixture_path("ao_trace.csv"));
    EXPECT_EQ(ao.header, ao_columns());
    expect_numeric_columns(ao, {"seed", "outer", "objective_bits", "esr_bits"});
}

TEST(PlotInterface, BenchmarkSchema)
{
    const CsvTable t = read_csv(fixture_path("benchmark.csv"));
    EXPECT_EQ(t.header, benchmark_columns(false));
    expect_numeric_columns(t, {"value", "seed", "esr_bits", "signed_gap_bits"});
    std::set<std::string> tags;
    for (const auto &r : t.rows)
        tags.insert(r[static_cast<size_t>(t.column("method"))]);
    EXPECT_EQ(tags, (std::set<std::string>{"MA+GP", "MA+ZF", "FPA+GP", "FPA+ZF"}));
    for (const auto &tag : tags)
        EXPECT_NE(std::find(kMethodTags.begin(), kMethodTags.end(), tag), kMethodTags.end());
}

TEST(PlotInterface, ManifestSchema)
{
    for (const char *name : {"de_vs_mc_manifest.json", "benchmark_manifest.json"})
    {
        const nlohmann::json m = nlohmann::json::parse(read_file(fixture_path(name)));
        EXPECT_EQ(m["tool"], "masec");
        EXPECT_TRUE(m["version"].is_string());
        EXPECT_TRUE(m["command"].is_string());
        EXPECT_TRUE(m["config"].is_object());
        EXPECT_EQ(m["config_hash"].get<std::string>().size(), 16u);
        EXPECT_TRUE(m["seeds"].is_array());
        EXPECT_TRUE(m["files"].is_array());
        // The recorded config reproduces the recorded hash.
        ExperimentConfig c;
        for (const auto &[k, v] : m["config"].items())
            c.set(k, v.get<std::string>());
        EXPECT_EQ(config_hash(c), m["config_hash"]) << name;
    }
}

TEST(PlotInterface, ManifestFromWriter)
{
    ExperimentConfig c;
    const nlohmann::json m = manifest_json(Manifest{"benchmark", {1, 2}, {"benchmark.csv"}}, c);
    std::set<std::string> keys;
    for (const auto &[k, v] : m.items())
        keys.insert(k);
    EXPECT_EQ(keys, (std::set<std::string>{"tool", "version", "command", "config", "config_hash", "seeds", "files"}));
    EXPECT_EQ(m["version"], version());
}

TEST(PlotInterface, FixtureTextParsesExactly)
{
    const std::string text = read_file(fixture_path("benchmark.csv"));
    EXPECT_EQ(parse_csv(text).to_string(), text);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(text.find('"'), std::string::npos);
}
