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
#include "cabm/config.hpp"
#include "cabm/output.hpp"
#include "cabm/runner.hpp"
#include "cabm/scenario.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace
{

using namespace cabm;

struct Common {
    int runs           = 35;
    int days           = 60;
    std::uint64_t seed = 1;
    unsigned threads   = 0;
    std::string out;
    std::string config;
    std::vector<std::string> params;
};

void add_common(CLI::App& cmd, Common& c)
{
    cmd.add_option("--runs", c.runs, "independent runs per scenario")->capture_default_str();
    cmd.add_option("--days", c.days, "horizon in days (at least 30)")->capture_default_str();
    cmd.add_option("--seed", c.seed, "base seed")->capture_default_str();
    cmd.add_option("--threads", c.threads, "worker threads, 0 for all cores")->capture_default_str();
    cmd.add_option("--out", c.out, "output directory")->required();
    cmd.add_option("--config", c.config, "key = value parameter file");
    cmd.add_option("--param", c.params, "parameter override key=value (repeatable)");
}

Parameters load_parameters(const Common& c, std::vector<Setting> extra = {})
{
    std::vector<Setting> settings;
    if (!c.config.empty()) {
        settings = read_settings(c.config);
    }
    for (const auto& p : c.params) {
        settings.push_back(parse_assignment(p));
    }
    settings.insert(settings.end(), extra.begin(), extra.end());
    return apply_settings(Parameters{}, settings);
}

SimulationConfig make_config(const Common& c, const Parameters& params, const ScenarioPolicy& policy)
{
    SimulationConfig cfg;
    cfg.params  = params;
    cfg.policy  = policy;
    cfg.days    = c.days;
    cfg.runs    = c.runs;
    cfg.seed    = c.seed;
    cfg.threads = c.threads;
    cfg.validate();
    return cfg;
}

/// Scenario batches preceded by their baselines, as (batch, index of its baseline).
struct Plan {
    std::vector<SimulationConfig> configs;
    std::vector<std::size_t> baseline_of;
};

void execute(const Plan& plan, const std::string& out)
{
    std::vector<BatchResult> batches;
    for (const auto& cfg : plan.configs) {
        std::fprintf(stderr, "running %s (%d runs, %d days)\n", cfg.policy.name.c_str(), cfg.runs, cfg.days);
        batches.push_back(run_batch(cfg));
    }
    std::vector<MetricSummary> metrics;
    for (std::size_t k = 0; k < batches.size(); ++k) {
        metrics.push_back(compute_metrics(batches[k], batches[plan.baseline_of[k]]));
    }
    export_results(out, batches, metrics);

    std::printf("%-24s %8s %6s %8s %8s %8s %8s\n", "scenario", "I_P", "T_IP", "D_T", "dW_A1", "dW_A3", "dW_A4");
    for (const auto& m : metrics) {
        std::printf("%-24s %8.4f %6d %8.4f %8.4f %8.4f %8.4f\n", m.scenario.c_str(), m.infection_peak, m.day_of_peak,
                    m.final_deaths, m.delta_w.a1, m.delta_w.a3, m.delta_w.a4);
    }
    std::printf("results written to %s\n", out.c_str());
}

/// Adds the baseline for a parameter set and returns its index in the plan.
std::size_t add_baseline(Plan& plan, const Common& c, const Parameters& params, const std::string& name)
{
    auto policy = make_scenario(ScenarioId::Baseline);
    policy.name = name;
    plan.configs.push_back(make_config(c, params, policy));
    plan.baseline_of.push_back(plan.configs.size() - 1);
    return plan.configs.size() - 1;
}

void add_scenario(Plan& plan, const Common& c, const Parameters& params, const ScenarioPolicy& policy,
                  std::size_t baseline)
{
    plan.configs.push_back(make_config(c, params, policy));
    plan.baseline_of.push_back(baseline);
}

std::vector<ScenarioId> parse_scenario_list(const std::string& text)
{
    if (text == "all") {
        return reference_scenarios();
    }
    std::vector<ScenarioId> ids;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        ids.push_back(parse_scenario(rest.substr(0, comma)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return ids;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Agent-based epidemic and economy simulator", "cabm"};
    app.require_subcommand(1);

    Common run_opts;
    std::string scenario;
    auto* run = app.add_subcommand("run", "run one scenario and its baseline");
    run->add_option("--scenario", scenario, "scenario id")->required();
    add_common(*run, run_opts);

    Common sweep_opts;
    std::string sweep_param = "isolation-level";
    std::string sweep_values;
    std::string sweep_scenario = "partial";
    auto* sweep = app.add_subcommand("sweep", "run a scenario over a range of one parameter");
    sweep->add_option("--sweep-param,--param-name", sweep_param,
                      "isolation-level or a parameter key")->capture_default_str();
    sweep->add_option("--values", sweep_values, "lo:hi:step or comma separated list")->required();
    sweep->add_option("--scenario", sweep_scenario, "scenario varied by a parameter sweep")->capture_default_str();
    add_common(*sweep, sweep_opts);

    Common compare_opts;
    std::string scenarios = "all";
    auto* compare = app.add_subcommand("compare", "run several scenarios against one baseline");
    compare->add_option("--scenarios", scenarios, "'all' or comma separated ids")->capture_default_str();
    add_common(*compare, compare_opts);

    // "sweep --param isolation-level --values ..." is accepted: there --param names
    // the swept quantity when it carries no '='.
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args.front() == "sweep") {
        for (std::size_t k = 1; k + 1 < args.size(); ++k) {
            if (args[k] == "--param" && args[k + 1].find('=') == std::string::npos) {
                args[k] = "--sweep-param";
            }
        }
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Plan plan;
        std::string out;
        if (*run) {
            const auto params   = load_parameters(run_opts);
            const auto baseline = add_baseline(plan, run_opts, params, "baseline");
            const auto id       = parse_scenario(scenario);
            if (id != ScenarioId::Baseline) {
                add_scenario(plan, run_opts, params, make_scenario(id), baseline);
            }
            out = run_opts.out;
        }
        else if (*sweep) {
            const auto values = parse_values(sweep_values);
            if (sweep_param == "isolation-level") {
                const auto params   = load_parameters(sweep_opts);
                const auto baseline = add_baseline(plan, sweep_opts, params, "baseline");
                for (double v : values) {
                    add_scenario(plan, sweep_opts, params, make_partial_isolation(v), baseline);
                }
            }
            else {
                const auto base_policy = make_scenario(parse_scenario(sweep_scenario));
                for (double v : values) {
                    char text[64];
                    std::snprintf(text, sizeof text, "%.12g", v);
                    const auto params = load_parameters(sweep_opts, {{sweep_param, text, "--values"}});
                    const auto tag    = "-" + sweep_param + "-" + text;
                    const auto baseline = add_baseline(plan, sweep_opts, params, "baseline" + tag);
                    auto policy         = base_policy;
                    policy.name += tag;
                    add_scenario(plan, sweep_opts, params, policy, baseline);
                }
            }
            out = sweep_opts.out;
        }
        else {
            const auto params   = load_parameters(compare_opts);
            const auto baseline = add_baseline(plan, compare_opts, params, "baseline");
            for (auto id : parse_scenario_list(scenarios)) {
                if (id != ScenarioId::Baseline) {
                    add_scenario(plan, compare_opts, params, make_scenario(id), baseline);
                }
            }
            out = compare_opts.out;
        }
        execute(plan, out);
    }
    catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
