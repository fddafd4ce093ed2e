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
#ifndef CABM_OUTPUT_HPP
#define CABM_OUTPUT_HPP

#include "cabm/core.hpp"
#include "cabm/runner.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cabm
{

/// Header of the per-run daily series file.
inline constexpr const char* raw_csv_header = "scenario,run,day,S,I,I_A,I_H,I_S,R,D,W_A1,W_A3,W_A4";
/// Header of the across-run statistics file.
inline constexpr const char* aggregate_csv_header = "scenario,day,variable,mean,std";

/// File names written by export_results.
inline constexpr const char* raw_csv_name       = "raw.csv";
inline constexpr const char* aggregate_csv_name = "aggregate.csv";
inline constexpr const char* metrics_json_name  = "metrics.json";

/// One line of the raw file. Runs are 0-based, days 1-based.
struct RawRow {
    std::string scenario;
    int run = 0;
    int day = 1;
    ResponseRecord record;
};

/// Values are written with 6 decimals, scenarios in the given order.
void write_raw_csv(std::ostream& out, std::span<const BatchResult> batches);
void write_aggregate_csv(std::ostream& out, std::span<const BatchResult> batches);
void write_metrics_json(std::ostream& out, std::span<const MetricSummary> metrics);

/// Parse a raw file written by write_raw_csv. Throws std::runtime_error naming the source on malformed input.
std::vector<RawRow> read_raw_csv(std::istream& in, const std::string& source);
std::vector<RawRow> read_raw_csv(const std::filesystem::path& path);

/**
 * Write raw.csv, aggregate.csv and metrics.json into a directory, creating it if needed.
 * Throws std::runtime_error naming the offending path on I/O failure.
 */
void export_results(const std::filesystem::path& dir, std::span<const BatchResult> batches,
                    std::span<const MetricSummary> metrics);

} // namespace cabm

#endif // CABM_OUTPUT_HPP
