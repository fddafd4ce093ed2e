/*
* Copyright (C) 2026 cabm contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "cabm/output.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace cabm
{

namespace
{

void put_fixed(std::ostream& out, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out << buf;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> cells;
    for (;;) {
        const auto comma = line.find(',');
        cells.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            return cells;
        }
        line.remove_prefix(comma + 1);
    }
}

template <class T>
T parse_cell(std::string_view cell, const std::string& where)
{
    T v{};
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        throw std::runtime_error(where + ": malformed value '" + std::string(cell) + "'");
    }
    return v;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

} // namespace

void write_raw_csv(std::ostream& out, std::span<const BatchResult> batches)
{
    out << raw_csv_header << '\n';
    for (const auto& batch : batches) {
        for (std::size_t r = 0; r < batch.daily.size(); ++r) {
            for (std::size_t d = 0; d < batch.daily[r].size(); ++d) {
                out << batch.scenario << ',' << r << ',' << d + 1;
                for (double v : batch.daily[r][d].values()) {
                    out << ',';
                    put_fixed(out, v);
                }
                out << '\n';
            }
        }
    }
}

void write_aggregate_csv(std::ostream& out, std::span<const BatchResult> batches)
{
    out << aggregate_csv_header << '\n';
    const auto names = ResponseRecord::names();
    for (const auto& batch : batches) {
        for (std::size_t d = 0; d < batch.aggregate.size(); ++d) {
            for (std::size_t k = 0; k < names.size(); ++k) {
                out << batch.scenario << ',' << d + 1 << ',' << names[k] << ',';
                put_fixed(out, batch.aggregate[d][k].mean);
                out << ',';
                put_fixed(out, batch.aggregate[d][k].std);
                out << '\n';
            }
        }
    }
}

void write_metrics_json(std::ostream& out, std::span<const MetricSummary> metrics)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& m : metrics) {
        doc[m.scenario] = {
            {"infection_peak", m.infection_peak},
            {"day_of_peak", m.day_of_peak},
            {"final_deaths", m.final_deaths},
            {"delta_w", {{"a1", m.delta_w.a1}, {"a3", m.delta_w.a3}, {"a4", m.delta_w.a4}}},
        };
    }
    out << doc.dump(2) << '\n';
}

std::vector<RawRow> read_raw_csv(std::istream& in, const std::string& source)
{
    std::string line;
    if (!std::getline(in, line) || line != raw_csv_header) {
        throw std::runtime_error(source + ": missing or unexpected raw CSV header");
    }
    std::vector<RawRow> rows;
    for (int number = 2; std::getline(in, line); ++number) {
        if (line.empty()) {
            continue;
        }
        const auto where = source + ":" + std::to_string(number);
        const auto cells = split(line);
        if (cells.size() != 3 + ResponseRecord::num_variables) {
            throw std::runtime_error(where + ": expected " + std::to_string(3 + ResponseRecord::num_variables) +
                                     " columns");
        }
        RawRow row;
        row.scenario = std::string(cells[0]);
        row.run      = parse_cell<int>(cells[1], where);
        row.day      = parse_cell<int>(cells[2], where);
        std::array<double, ResponseRecord::num_variables> v{};
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = parse_cell<double>(cells[3 + k], where);
        }
        row.record = ResponseRecord::from_values(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RawRow> read_raw_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    return read_raw_csv(in, path.string());
}

void export_results(const std::filesystem::path& dir, std::span<const BatchResult> batches,
                    std::span<const MetricSummary> metrics)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    write_file(dir / raw_csv_name, [&](std::ostream& out) {
        write_raw_csv(out, batches);
    });
    write_file(dir / aggregate_csv_name, [&](std::ostream& out) {
        write_aggregate_csv(out, batches);
    });
    write_file(dir / metrics_json_name, [&](std::ostream& out) {
        write_metrics_json(out, metrics);
    });
}

} // namespace cabm
