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
#include "cabm/runner.hpp"

#include "cabm/economy.hpp"
#include "cabm/epidemic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cabm
{

EpidemicCounts count_epidemic(const WorldState& world)
{
    EpidemicCounts c;
    for (const auto& p : world.persons) {
        const auto& e = p.epidemic;
        switch (e.status) {
        case EpidemicStatus::Susceptible:
            ++c.susceptible;
            break;
        case EpidemicStatus::Recovered:
            ++c.recovered;
            break;
        case EpidemicStatus::Dead:
            ++c.dead;
            break;
        case EpidemicStatus::Infected:
            ++c.infected;
            if (e.severity == Severity::Severe) {
                ++c.severe;
            }
            else if (e.severity == Severity::Hospitalized) {
                ++c.hospitalized;
            }
            else {
                ++c.asymptomatic;
            }
            break;
        }
    }
    return c;
}

ResponseRecord summarize(const WorldState& world)
{
    const auto c  = count_epidemic(world);
    const auto n  = static_cast<double>(std::max<std::size_t>(world.persons.size(), 1));
    auto fraction = [n](std::size_t k) {
        return static_cast<double>(k) / n;
    };

    double people = 0.0;
    for (const auto& p : world.persons) {
        people += p.wealth;
    }
    for (const auto& h : world.houses) {
        people += h.wealth;
    }
    double business = 0.0;
    for (const auto& b : world.businesses) {
        business += b.wealth;
    }
    const double government = world.government.wealth + world.healthcare.wealth;
    const double gdp        = world.params.total_gdp;

    ResponseRecord r;
    r.susceptible       = fraction(c.susceptible);
    r.infected          = fraction(c.infected);
    r.asymptomatic      = fraction(c.asymptomatic);
    r.hospitalized      = fraction(c.hospitalized);
    r.severe            = fraction(c.severe);
    r.recovered         = fraction(c.recovered);
    r.dead              = fraction(c.dead);
    r.wealth_people     = people / gdp;
    r.wealth_business   = business / gdp;
    r.wealth_government = government / gdp;
    return r;
}

WorldState initialize(const Parameters& params, const ScenarioPolicy& policy, std::uint64_t seed)
{
    policy.validate();
    auto world = build_world(policy.apply(params), seed);
    assign_isolation_flags(world.persons, policy);
    return world;
}

void step(WorldState& world, int t, const ScenarioPolicy& policy)
{
    const auto& params = world.params;
    const int hour     = (t - 1) % hours_per_day;
    const int day      = (t - 1) / hours_per_day;

    if (hour == 0) {
        update_hospital_capacity(world);
        for (std::size_t i = 0; i < world.persons.size(); ++i) {
            advance_disease(world.persons[i], day, params, world.health_rng[i]);
        }
        daily_expenses(world);
    }

    const bool lockdown = policy_active(policy, world.infected_fraction());
    for (std::size_t i = 0; i < world.persons.size(); ++i) {
        auto& person = world.persons[i];
        if (!person.is_alive()) {
            person.last_action = MovementAction::StayStill;
            continue;
        }
        const auto movement = routine_action(person, hour, policy, lockdown, params.mobility);
        person.position     = apply_movement(world, person, movement, world.movement_rng[i]);
        person.last_action  = movement.action;
    }

    const auto contacts = find_contacts(world.persons, world.businesses, params.contact_threshold());
    for (const auto& c : contacts) {
        if (c.kind == ContactKind::Personal) {
            attempt_contagion(world, c.person, c.other, params.contagion_probability, day);
        }
        else {
            auto& buyer = world.persons[c.person];
            if (buyer.last_action == MovementAction::WalkFreely) {
                House* house = buyer.house ? &world.houses[*buyer.house] : nullptr;
                business_contact(buyer, house, world.businesses[c.other], params);
            }
        }
    }

    if (t % hours_per_month == 0) {
        monthly_accounting(world);
    }
    world.iteration = t;
}

void SimulationConfig::validate() const
{
    params.validate();
    policy.validate();
    if (days * hours_per_day < hours_per_month) {
        throw std::invalid_argument("horizon must cover at least one accounting cycle (30 days)");
    }
    if (runs < 1) {
        throw std::invalid_argument("runs must be at least 1");
    }
    auto seeded = policy.apply(params);
    seeded.validate();
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index)
{
    return derive_seed({base_seed, static_cast<std::uint64_t>(run_index)});
}

std::vector<ResponseRecord> daily_means(std::span<const ResponseRecord> hourly)
{
    std::vector<ResponseRecord> daily;
    for (std::size_t start = 0; start + hours_per_day <= hourly.size(); start += hours_per_day) {
        std::array<double, ResponseRecord::num_variables> sum{};
        for (std::size_t h = start; h < start + hours_per_day; ++h) {
            const auto v = hourly[h].values();
            for (std::size_t k = 0; k < v.size(); ++k) {
                sum[k] += v[k];
            }
        }
        for (auto& s : sum) {
            s /= hours_per_day;
        }
        daily.push_back(ResponseRecord::from_values(sum));
    }
    return daily;
}

RunResult run_simulation(const SimulationConfig& config, int run_index)
{
    auto world = initialize(config.params, config.policy, run_seed(config.seed, run_index));
    RunResult result;
    const int iterations = config.iterations();
    result.hourly.reserve(static_cast<std::size_t>(iterations));
    const double gdp = world.params.total_gdp;
    for (int t = 1; t <= iterations; ++t) {
        step(world, t, config.policy);
        result.hourly.push_back(summarize(world));

        const auto c = count_epidemic(world);
        if (c.susceptible + c.infected + c.recovered + c.dead != world.persons.size()) {
            ++result.audit.count_failures;
        }
        result.audit.max_wealth_drift =
            std::max(result.audit.max_wealth_drift, std::abs(world.total_wealth() - gdp) / gdp);
    }
    result.daily = daily_means(result.hourly);
    return result;
}

std::vector<std::array<Moments, ResponseRecord::num_variables>>
aggregate_runs(const std::vector<std::vector<ResponseRecord>>& daily)
{
    std::vector<std::array<Moments, ResponseRecord::num_variables>> out;
    if (daily.empty()) {
        return out;
    }
    const auto days = daily.front().size();
    const auto runs = static_cast<double>(daily.size());
    out.resize(days);
    for (std::size_t d = 0; d < days; ++d) {
        for (std::size_t k = 0; k < ResponseRecord::num_variables; ++k) {
            double sum = 0.0;
            for (const auto& run : daily) {
                sum += run[d].values()[k];
            }
            const double mean = sum / runs;
            double sq         = 0.0;
            for (const auto& run : daily) {
                const double dev = run[d].values()[k] - mean;
                sq += dev * dev;
            }
            out[d][k] = {mean, std::sqrt(sq / runs)};
        }
    }
    return out;
}

std::vector<double> BatchResult::mean_series(std::size_t variable) const
{
    std::vector<double> s;
    s.reserve(aggregate.size());
    for (const auto& day : aggregate) {
        s.push_back(day[variable].mean);
    }
    return s;
}

BatchResult run_batch(const SimulationConfig& config)
{
    config.validate();
    BatchResult batch;
    batch.scenario = config.policy.name;
    batch.daily.resize(static_cast<std::size_t>(config.runs));
    batch.audits.resize(static_cast<std::size_t>(config.runs));

    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads          = std::min<unsigned>(threads, static_cast<unsigned>(config.runs));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int r = next++; r < config.runs; r = next++) {
            try {
                auto result                               = run_simulation(config, r);
                batch.daily[static_cast<std::size_t>(r)]  = std::move(result.daily);
                batch.audits[static_cast<std::size_t>(r)] = result.audit;
            }
            catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = config.runs;
            }
        }
    };
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    batch.aggregate = aggregate_runs(batch.daily);
    return batch;
}

InfectionPeak infection_peak(std::span<const double> series)
{
    if (series.empty()) {
        throw std::invalid_argument("infection_peak: empty series");
    }
    InfectionPeak p{series[0], 1};
    for (std::size_t d = 1; d < series.size(); ++d) {
        if (series[d] > p.peak) {
            p = {series[d], static_cast<int>(d) + 1};
        }
    }
    return p;
}

double wealth_delta(double scenario_final, double baseline_final)
{
    if (baseline_final == 0.0) {
        throw std::invalid_argument("wealth_delta: baseline wealth share is zero, relative change undefined");
    }
    return (scenario_final - baseline_final) / baseline_final;
}

MetricSummary compute_metrics(const BatchResult& batch, const BatchResult& baseline)
{
    constexpr std::size_t infected = 1, dead = 6, w_a1 = 7, w_a3 = 8, w_a4 = 9;
    if (batch.aggregate.empty() || baseline.aggregate.empty()) {
        throw std::invalid_argument("compute_metrics: empty batch");
    }
    MetricSummary m;
    m.scenario      = batch.scenario;
    const auto peak = infection_peak(batch.mean_series(infected));
    m.infection_peak = peak.peak;
    m.day_of_peak    = peak.day;
    const auto& last      = batch.aggregate.back();
    const auto& base_last = baseline.aggregate.back();
    m.final_deaths        = last[dead].mean;
    m.delta_w.a1          = wealth_delta(last[w_a1].mean, base_last[w_a1].mean);
    m.delta_w.a3          = wealth_delta(last[w_a3].mean, base_last[w_a3].mean);
    m.delta_w.a4          = wealth_delta(last[w_a4].mean, base_last[w_a4].mean);
    return m;
}

} // namespace cabm
