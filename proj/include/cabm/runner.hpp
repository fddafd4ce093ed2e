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
#ifndef CABM_RUNNER_HPP
#define CABM_RUNNER_HPP

#include "cabm/core.hpp"
#include "cabm/scenario.hpp"
#include "cabm/world.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cabm
{

/// Integer population counts behind the epidemic fractions.
struct EpidemicCounts {
    std::size_t susceptible  = 0;
    std::size_t infected     = 0;
    std::size_t asymptomatic = 0;
    std::size_t hospitalized = 0;
    std::size_t severe       = 0;
    std::size_t recovered    = 0;
    std::size_t dead         = 0;
};

EpidemicCounts count_epidemic(const WorldState& world);

/// Response variables of the current state.
ResponseRecord summarize(const WorldState& world);

/**
 * Build the world for a policy: seeding and contagion overrides are applied to the
 * parameters, and random isolation flags are assigned from each person's fixed draw.
 */
WorldState initialize(const Parameters& params, const ScenarioPolicy& policy, std::uint64_t seed);

/**
 * Advance the world by one hour; t is the 1-based iteration index.
 *
 * Hour 0 of each day runs the hospital ledger, disease progression and fixed expenses.
 * Then every living person moves (in index order), contacts are detected, contagion and
 * purchases are resolved pair by pair, and every 720th iteration closes the month.
 */
void step(WorldState& world, int t, const ScenarioPolicy& policy);

struct SimulationConfig {
    Parameters params;
    ScenarioPolicy policy;
    int days           = 60;
    int runs           = 35;
    std::uint64_t seed = 1;
    unsigned threads   = 0; ///< 0: hardware concurrency

    int iterations() const
    {
        return days * hours_per_day;
    }

    /// Throws std::invalid_argument on invalid parameters, policy, horizon or run count.
    void validate() const;
};

/// Seed of one run of a batch.
std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

/// Conservation checks accumulated over every iteration of a run.
struct RunAudit {
    double max_wealth_drift    = 0.0; ///< max |total wealth - GDP| / GDP
    std::size_t count_failures = 0;   ///< iterations where S+I+R+D counts missed the population
};

struct RunResult {
    std::vector<ResponseRecord> hourly; ///< one per iteration
    std::vector<ResponseRecord> daily;  ///< mean of each 24 hour block
    RunAudit audit;
};

/// Mean of each consecutive 24 record block.
std::vector<ResponseRecord> daily_means(std::span<const ResponseRecord> hourly);

RunResult run_simulation(const SimulationConfig& config, int run_index);

/// Mean and population standard deviation of one variable on one day across runs.
struct Moments {
    double mean = 0.0;
    double std  = 0.0;
};

struct BatchResult {
    std::string scenario;
    std::vector<std::vector<ResponseRecord>> daily; ///< [run][day]
    std::vector<RunAudit> audits;                   ///< [run]
    /// [day][variable]
    std::vector<std::array<Moments, ResponseRecord::num_variables>> aggregate;

    /// Mean series of one variable (index into ResponseRecord::values()).
    std::vector<double> mean_series(std::size_t variable) const;
};

/// Mean and population standard deviation across runs, per day and variable.
std::vector<std::array<Moments, ResponseRecord::num_variables>>
aggregate_runs(const std::vector<std::vector<ResponseRecord>>& daily);

/**
 * Execute all runs of a configuration. Runs are independent and may execute on several
 * threads; the result does not depend on the execution order. Any run failure aborts
 * the batch by rethrowing.
 */
BatchResult run_batch(const SimulationConfig& config);

struct InfectionPeak {
    double peak = 0.0;
    int day     = 1; ///< 1-based, earliest day attaining the peak
};

/// Maximum of a daily series and the earliest day attaining it. Throws on empty input.
InfectionPeak infection_peak(std::span<const double> series);

/// Relative change of a final wealth share against the baseline. Throws on a zero baseline.
double wealth_delta(double scenario_final, double baseline_final);

struct WealthDelta {
    double a1 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
};

struct MetricSummary {
    std::string scenario;
    double infection_peak = 0.0;
    int day_of_peak       = 1;
    double final_deaths   = 0.0;
    WealthDelta delta_w;
};

/// Metrics of a batch from its mean daily series, wealth compared to a baseline batch.
MetricSummary compute_metrics(const BatchResult& batch, const BatchResult& baseline);

} // namespace cabm

#endif // CABM_RUNNER_HPP
