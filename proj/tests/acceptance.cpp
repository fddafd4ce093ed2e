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
// Acceptance gate: runs the reference batches at desk scale and prints one PASS/FAIL line
// per criterion. Exit status is nonzero if any criterion fails.
//
// usage: acceptance [scratch directory]

#include "cabm/epidemic.hpp"
#include "cabm/output.hpp"
#include "cabm/runner.hpp"
#include "cabm/scenario.hpp"

#include "json.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace cabm;
namespace fs = std::filesystem;

constexpr std::size_t var_infected = 1, var_hospitalized = 3, var_severe = 4, var_dead = 6, var_w_a1 = 7,
                      var_w_a3 = 8, var_w_a4 = 9;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail)
{
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

struct Suite {
    std::vector<BatchResult> batches;
    std::vector<MetricSummary> metrics;

    const MetricSummary& metric(const std::string& name) const
    {
        for (const auto& m : metrics) {
            if (m.scenario == name) {
                return m;
            }
        }
        throw std::invalid_argument("no scenario " + name);
    }
    const BatchResult& batch(const std::string& name) const
    {
        for (const auto& b : batches) {
            if (b.scenario == name) {
                return b;
            }
        }
        throw std::invalid_argument("no scenario " + name);
    }
};

SimulationConfig desk_config(const ScenarioPolicy& policy, unsigned threads)
{
    SimulationConfig c;
    c.policy  = policy;
    c.days    = 60;
    c.runs    = 35;
    c.seed    = 1;
    c.threads = threads;
    return c;
}

/// Batches of the given policies, the first being the baseline of all.
Suite run_suite(const std::vector<ScenarioPolicy>& policies, unsigned threads)
{
    Suite s;
    for (const auto& p : policies) {
        s.batches.push_back(run_batch(desk_config(p, threads)));
    }
    for (const auto& b : s.batches) {
        s.metrics.push_back(compute_metrics(b, s.batches.front()));
    }
    return s;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void check_conservation(const std::vector<const Suite*>& suites)
{
    std::size_t count_failures = 0, runs = 0;
    double drift = 0.0;
    for (const auto* s : suites) {
        for (const auto& b : s->batches) {
            for (const auto& a : b.audits) {
                count_failures += a.count_failures;
                drift = std::max(drift, a.max_wealth_drift);
                ++runs;
            }
        }
    }
    report(count_failures == 0 && drift <= 1e-6, "conservation",
           fmt("%zu runs, %zu population count mismatches, max wealth drift %.2e (tol 1e-6)", runs, count_failures,
               drift));
}

/// Rerun the reference batch on a different thread count and compare with the first export.
void check_determinism(const fs::path& dir)
{
    std::vector<ScenarioPolicy> policies;
    for (auto id : reference_scenarios()) {
        policies.push_back(make_scenario(id));
    }
    const auto second = run_suite(policies, 3);
    export_results(dir / "second", second.batches, second.metrics);
    bool same = true;
    std::string detail;
    for (const char* name : {raw_csv_name, aggregate_csv_name, metrics_json_name}) {
        const bool eq = slurp(dir / "first" / name) == slurp(dir / "second" / name);
        same          = same && eq;
        detail += fmt("%s %s  ", name, eq ? "identical" : "DIFFERS");
    }
    report(same, "determinism", detail + "(second execution on 3 threads)");
}

void check_severity()
{
    const Parameters params;
    RandomStream rng(derive_seed({2024, 6}));
    const int n    = 100000;
    double worst_p = 1.0;
    bool ok        = true;
    for (std::size_t bracket = 0; bracket < num_age_brackets; ++bracket) {
        const double age = 10.0 * static_cast<double>(bracket) + 5.0;
        std::array<double, 3> counts{};
        for (int k = 0; k < n; ++k) {
            counts[static_cast<std::size_t>(
                draw_severity(age, params.hospitalization_rate, params.severe_rate, rng))] += 1.0;
        }
        const double h = params.hospitalization_rate[bracket], s = params.severe_rate[bracket];
        const std::array<double, 3> expected = {n * (1 - h), n * h * (1 - s), n * h * s};
        const double p                       = oracle::chi_square_p(counts, expected);
        worst_p                              = std::min(worst_p, p);
        ok                                   = ok && p > 0.01;
    }
    report(ok, "severity oracle", fmt("9 brackets x 1e5 draws, min chi-square p = %.4f (need > 0.01)", worst_p));
}

void check_contacts()
{
    RandomStream rng(derive_seed({2024, 7}));
    int mismatches = 0;
    std::size_t pairs = 0;
    for (int world = 0; world < 1000; ++world) {
        // Extents from crowded to the full environment; thresholds around the default.
        const double extent    = std::exp(rng.uniform(std::log(3.0), std::log(500.0)));
        const double threshold = rng.uniform(0.25, 2.0);
        std::vector<Person> persons(static_cast<std::size_t>(rng.uniform_int(0, 300)));
        for (auto& p : persons) {
            p.position = {rng.uniform(0, extent), rng.uniform(0, extent)};
            if (rng.bernoulli(0.05)) {
                p.epidemic.status = EpidemicStatus::Dead;
            }
        }
        std::vector<Business> businesses(static_cast<std::size_t>(rng.uniform_int(0, 126)));
        for (auto& b : businesses) {
            b.position = {rng.uniform(0, extent), rng.uniform(0, extent)};
        }
        // Stacked agents, as at home or at work, and a pair exactly on the threshold.
        for (std::size_t i = 1; i < persons.size(); i += 7) {
            persons[i].position = persons[i - 1].position;
        }
        if (persons.size() > 3) {
            persons[3].position = {persons[2].position.x + threshold, persons[2].position.y};
        }
        const auto fast  = oracle::as_set(find_contacts(persons, businesses, threshold));
        const auto naive = oracle::naive_contacts(persons, businesses, threshold);
        mismatches += fast != naive;
        pairs += naive.size();
    }
    report(mismatches == 0, "contact kernel equivalence",
           fmt("1000 random worlds, %zu contacts, %d worlds differ from the naive scan", pairs, mismatches));
}

void check_lockdown(const Suite& s)
{
    const auto& m = s.metric("lockdown");
    const bool ok = m.final_deaths <= 0.005 && m.delta_w.a3 >= -0.30 && m.delta_w.a3 <= -0.10;
    report(ok, "lockdown anchor",
           fmt("final D = %.4f (need <= 0.005), dW_A3 = %+.4f (need -0.20 +- 0.10)", m.final_deaths, m.delta_w.a3));
}

void check_do_nothing(const Suite& s)
{
    const auto& b = s.batch("do-nothing");
    double peak   = 0.0;
    int day       = 0;
    for (std::size_t d = 0; d < b.aggregate.size(); ++d) {
        const double v = b.aggregate[d][var_hospitalized].mean + b.aggregate[d][var_severe].mean;
        if (v > peak) {
            peak = v;
            day  = static_cast<int>(d) + 1;
        }
    }
    report(peak > 0.05, "do-nothing anchor",
           fmt("peak mean I_H + I_S = %.4f on day %d (need > 0.05)", peak, day));
}

void check_ordering(const Suite& s)
{
    const double lockdown    = s.metric("lockdown").final_deaths;
    const double conditional = s.metric("conditional-lockdown").final_deaths;
    const double combined    = s.metric("masks-partial").final_deaths;
    const double nothing     = s.metric("do-nothing").final_deaths;
    const double vertical    = s.metric("vertical").final_deaths;
    const double gap         = nothing > 0.0 ? std::abs(vertical - nothing) / nothing : INFINITY;
    const bool ok = lockdown < conditional && conditional < combined && combined < nothing && gap <= 0.3;
    report(ok, "scenario death ordering",
           fmt("lockdown %.4f < conditional %.4f < masks-partial %.4f < do-nothing %.4f; vertical %.4f, "
               "relative gap %.3f (need <= 0.3)",
               lockdown, conditional, combined, nothing, vertical, gap));
}

void check_sweep(const Suite& sweep, const std::vector<double>& levels)
{
    std::vector<double> peaks, a3;
    std::string detail;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& m = sweep.metrics[k + 1];
        peaks.push_back(m.infection_peak);
        a3.push_back(m.delta_w.a3);
        detail += fmt("%.1f:(%.4f,%+.3f) ", levels[k], m.infection_peak, m.delta_w.a3);
    }
    const double rho = oracle::spearman(levels, peaks);
    bool a3_monotone = true;
    for (std::size_t k = 1; k < a3.size(); ++k) {
        a3_monotone = a3_monotone && a3[k] <= a3[k - 1];
    }
    report(rho <= -0.9 && a3_monotone, "isolation level sweep",
           fmt("Spearman(IL, I_P) = %.3f (need <= -0.9), dW_A3 non-increasing: %s; IL:(I_P,dW_A3) ", rho,
               a3_monotone ? "yes" : "no") +
               detail);
}

void check_conditional(const Suite& s)
{
    const auto series = s.batch("conditional-lockdown").mean_series(var_infected);
    const double limit = 2.0 * make_scenario(ScenarioId::ConditionalLockdown).threshold;
    int over           = 0;
    double peak        = 0.0;
    for (double v : series) {
        over += v > limit;
        peak = std::max(peak, v);
    }
    const double fraction = static_cast<double>(over) / static_cast<double>(series.size());
    report(fraction <= 0.10, "conditional lockdown control",
           fmt("%d of %zu days with mean I > %.2f (fraction %.3f, need <= 0.10), peak mean I %.4f", over,
               series.size(), limit, fraction, peak));
}

/// Recompute every metric from the raw CSV and compare with metrics.json of the same export.
void check_metric_oracles(const std::vector<fs::path>& dirs)
{
    std::size_t checked = 0;
    double worst        = 0.0;
    bool ok             = true;
    for (const auto& dir : dirs) {
        const auto rows    = read_raw_csv(dir / raw_csv_name);
        const auto metrics = nlohmann::json::parse(slurp(dir / metrics_json_name));

        // scenario -> day -> (sum of each variable, number of runs)
        std::map<std::string, std::map<int, std::pair<std::array<double, ResponseRecord::num_variables>, int>>> sums;
        std::string baseline;
        for (const auto& row : rows) {
            if (baseline.empty()) {
                baseline = row.scenario;
            }
            auto& [sum, count] = sums[row.scenario][row.day];
            const auto v       = row.record.values();
            for (std::size_t k = 0; k < v.size(); ++k) {
                sum[k] += v[k];
            }
            ++count;
        }
        auto final_mean = [&](const std::string& scenario, std::size_t var) {
            const auto& [sum, count] = sums.at(scenario).rbegin()->second;
            return sum[var] / count;
        };

        for (const auto& [scenario, days] : sums) {
            const auto& m = metrics.at(scenario);
            double peak   = -1.0;
            std::map<int, double> infected;
            for (const auto& [day, entry] : days) {
                infected[day] = entry.first[var_infected] / entry.second;
                peak          = std::max(peak, infected[day]);
            }
            // The CSV holds 6 decimals, so recomputed means carry up to 5e-7 of rounding.
            const double rounding = 5e-7;
            const double reported_peak = m.at("infection_peak").get<double>();
            const int reported_day     = m.at("day_of_peak").get<int>();
            bool good = std::abs(reported_peak - peak) <= rounding + 1e-12;
            good      = good && infected.count(reported_day) && infected[reported_day] >= peak - 2 * rounding;
            good      = good && std::abs(m.at("final_deaths").get<double>() - final_mean(scenario, var_dead)) <=
                                   rounding + 1e-12;
            worst     = std::max(worst, std::abs(reported_peak - peak));

            const std::pair<const char*, std::size_t> shares[] = {{"a1", var_w_a1}, {"a3", var_w_a3}, {"a4", var_w_a4}};
            for (const auto& [key, var] : shares) {
                const double base     = final_mean(baseline, var);
                const double delta    = (final_mean(scenario, var) - base) / base;
                const double reported = m.at("delta_w").at(key).get<double>();
                const double tol      = rounding * (1.0 + std::abs(1.0 + delta)) / std::abs(base) + 1e-12;
                good                  = good && std::abs(reported - delta) <= tol;
            }
            ok = ok && good;
            ++checked;
            if (!good) {
                std::printf("      metric mismatch for %s in %s\n", scenario.c_str(), dir.c_str());
            }
        }
    }
    report(ok && checked > 0, "metric oracles",
           fmt("%zu scenario metrics recomputed from raw CSV, max |I_P| difference %.1e", checked, worst));
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cabm_acceptance";
    try {
        fs::remove_all(dir);

        std::vector<ScenarioPolicy> policies;
        for (auto id : reference_scenarios()) {
            policies.push_back(make_scenario(id));
        }
        const auto start     = std::chrono::steady_clock::now();
        const auto reference = run_suite(policies, 0);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("info  reference batch: 8 scenarios x 35 runs x 60 days in %.1f s\n", seconds);
        export_results(dir / "first", reference.batches, reference.metrics);

        const std::vector<double> levels = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        std::vector<ScenarioPolicy> sweep_policies = {make_scenario(ScenarioId::Baseline)};
        for (double il : levels) {
            sweep_policies.push_back(make_partial_isolation(il));
        }
        const auto sweep = run_suite(sweep_policies, 0);
        export_results(dir / "sweep", sweep.batches, sweep.metrics);

        check_conservation({&reference, &sweep});
        check_determinism(dir);
        check_severity();
        check_contacts();
        check_lockdown(reference);
        check_do_nothing(reference);
        check_ordering(reference);
        check_sweep(sweep, levels);
        check_conditional(reference);
        check_metric_oracles({dir / "first", dir / "sweep"});
    }
    catch (const std::exception& e) {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
