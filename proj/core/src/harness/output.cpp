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


#include "masec/harness/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef MASEC_VERSION
#define MASEC_VERSION "0.0.0"
#endif

namespace masec::harness
{

namespace
{

bool as_number(const std::string &s, double &out)
{
    if (s.empty())
        return false;
    char *end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw ConfigError("write failed for '" + path + "'");
}

} // namespace

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(long long v) { return std::to_string(v); }

std::string fmt(bool v) { return v ? "1" : "0"; }

void CsvTable::add(std::vector<std::string> row)
{
    if (row.size() != header.size())
        throw std::logic_error("CsvTable::add: row width does not match the header");
    rows.push_back(std::move(row));
}

void CsvTable::append(const CsvTable &other)
{
    if (other.header != header)
        throw std::logic_error("CsvTable::append: header mismatch");
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void CsvTable::sort_rows(size_t key_columns)
{
    key_columns = std::min(key_columns, header.size());
    std::stable_sort(rows.begin(), rows.end(), [key_columns](const auto &a, const auto &b) {
        for (size_t c = 0; c < key_columns; ++c)
        {
            double x = 0.0, y = 0.0;
            if (as_number(a[c], x) && as_number(b[c], y))
            {
                if (x != y)
                    return x < y;
            }
            else if (a[c] != b[c])
                return a[c] < b[c];
        }
        return false;
    });
}

int CsvTable::column(const std::string &name) const
{
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::string CsvTable::to_string() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto &r : rows)
        line(r);
    return out;
}

void CsvTable::write(const std::string &path) const
{
    write_text(path, to_string());
}

CsvTable parse_csv(const std::string &text)
{
    std::stringstream ss(text);
    std::string line;
    CsvTable t;
    bool first = true;
    while (std::getline(ss, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        if (first)
        {
            t.header = cells;
            first = false;
        }
        else if (!line.empty())
        {
            if (cells.size() != t.header.size())
                throw ConfigError("csv row width does not match the header");
            t.rows.push_back(cells);
        }
    }
    if (first)
        throw ConfigError("csv has no header");
    return t;
}

CsvTable read_csv(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

nlohmann::json manifest_json(const Manifest &m, const ExperimentConfig &cfg)
{
    nlohmann::json config = nlohmann::json::object();
    for (const auto &[k, v] : cfg.values)
        config[k] = v;
    return {{"tool", "masec"},
            {"version", version()},
            {"command", m.command},
            {"config", config},
            {"config_hash", config_hash(cfg)},
            {"seeds", m.seeds},
            {"files", m.files}};
}

void write_manifest(const std::string &dir, const Manifest &m, const ExperimentConfig &cfg)
{
    write_json((std::filesystem::path(dir) / "manifest.json").string(), manifest_json(m, cfg));
}

void write_json(const std::string &path, const nlohmann::json &j)
{
    write_text(path, j.dump(2) + "\n");
}

void ensure_directory(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string version() { return MASEC_VERSION; }

} // namespace masec::harness
