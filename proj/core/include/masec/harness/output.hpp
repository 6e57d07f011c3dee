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

#include <json.hpp>

#include "masec/harness/config.hpp"

namespace masec::harness
{

/// %.12g; "nan" / "inf" / "-inf" for non-finite values; negative zero prints as 0.
std::string fmt(double v);
std::string fmt(long long v);
std::string fmt(bool v);

/*!
# CsvTable
Fixed header, comma separated, '\n' line endings, no quoting (cells never contain commas).
`sort_rows(k)` orders rows by their first k cells, numerically when both cells parse as
numbers, and keeps the insertion order among rows with equal keys.
*/
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    explicit CsvTable(std::vector<std::string> columns = {}) : header(std::move(columns)) {}

    void add(std::vector<std::string> row);
    void append(const CsvTable &other);
    void sort_rows(size_t key_columns);
    int column(const std::string &name) const; // -1 when absent
    std::string to_string() const;
    void write(const std::string &path) const;
};

CsvTable parse_csv(const std::string &text);
CsvTable read_csv(const std::string &path);

struct Manifest
{
    std::string command;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> files; // relative to the output directory
};

/// {tool, version, command, config, config_hash, seeds, files}.
nlohmann::json manifest_json(const Manifest &m, const ExperimentConfig &cfg);

/// Writes manifest.json into `dir`.
void write_manifest(const std::string &dir, const Manifest &m, const ExperimentConfig &cfg);

void write_json(const std::string &path, const nlohmann::json &j);

void ensure_directory(const std::string &dir);

std::string version();

} // namespace masec::harness
