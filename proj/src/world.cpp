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
#include "cabm/world.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cabm
{

namespace
{

// Counts are products of decimal fractions (0.01 * 300 evaluates to 3.0000000000000004);
// snap values within rounding noise of an integer before taking the ceiling.
std::size_t ceil_count(double x)
{
    double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return static_cast<std::size_t>(std::max(0.0, nearest));
    }
    return static_cast<std::size_t>(std::max(0.0, std::ceil(x)));
}

Position uniform_position(RandomStream& rng, const Parameters& params)
{
    double x = rng.uniform(0.0, params.height);
    double y = rng.uniform(0.0, params.width);
    return {x, y};
}

Position near(const Position& anchor, RandomStream& rng, const Parameters& params)
{
    double dx = rng.normal(0.0, 1.0);
    double dy = rng.normal(0.0, 1.0);
    return clamp_position({anchor.x + params.position_noise * dx, anchor.y + params.position_noise * dy},
                          params.height, params.width);
}

} // namespace

double WorldState::total_wealth() const
{
    double sum = government.wealth + healthcare.wealth;
    for (const auto& p : persons) {
        sum += p.wealth;
    }
    for (const auto& h : houses) {
        sum += h.wealth;
    }
    for (const auto& b : businesses) {
        sum += b.wealth;
    }
    return sum;
}

double WorldState::infected_fraction() const
{
    if (persons.empty()) {
        return 0.0;
    }
    auto infected = std::count_if(persons.begin(), persons.end(), [](const Person& p) {
        return p.epidemic.is_infected();
    });
    return static_cast<double>(infected) / static_cast<double>(persons.size());
}

std::size_t count_houses(long population, long family_size)
{
    if (family_size <= 0) {
        throw std::invalid_argument("count_houses: family size must be at least 1");
    }
    if (population <= 0) {
        return 0;
    }
    return static_cast<std::size_t>((population + family_size - 1) / family_size);
}

std::size_t count_businesses(long population, double formal_rate, double informal_rate)
{
    if (population <= 0) {
        return 0;
    }
    double n = static_cast<double>(population);
    return ceil_count(n * formal_rate + n * informal_rate);
}

double sample_age(RandomStream& rng, double shape_a, double shape_b)
{
    return std::clamp(100.0 * rng.beta(shape_a, shape_b), 0.0, 100.0);
}

EpidemicState make_infection(int day, const Parameters& params, RandomStream& rng)
{
    EpidemicState state;
    state.status            = EpidemicStatus::Infected;
    state.phase             = InfectionPhase::Incubating;
    state.infection_day     = day;
    state.incubation_length = rng.uniform_int(params.incubation_time.min, params.incubation_time.max);
    state.contagious_length = rng.uniform_int(params.transmission_time.min, params.transmission_time.max);
    return state;
}

WorldState build_world(const Parameters& params, std::uint64_t seed)
{
    params.validate();

    WorldState world;
    world.params = params;

    RandomStream rng(derive_seed({seed, static_cast<std::uint64_t>(StreamPurpose::Structure)}));

    world.houses.resize(count_houses(params.population_size, params.family_size));
    for (auto& house : world.houses) {
        house.position = uniform_position(rng, params);
        house.stratum  = rng.uniform_int(1, static_cast<int>(num_quintiles));
    }
    world.businesses.resize(
        count_businesses(params.population_size, params.formal_business_rate, params.informal_business_rate));
    for (auto& business : world.businesses) {
        business.position = uniform_position(rng, params);
        business.stratum  = rng.uniform_int(1, static_cast<int>(num_quintiles));
    }
    world.government.position = uniform_position(rng, params);
    world.healthcare.position = uniform_position(rng, params);

    const auto n = static_cast<std::size_t>(params.population_size);
    world.persons.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& person = world.persons[i];
        person.age   = sample_age(rng, params.age_shape_a, params.age_shape_b);
        if (world.houses.empty() || rng.bernoulli(params.homeless_rate)) {
            person.position = uniform_position(rng, params);
        }
        else {
            auto h       = rng.index(world.houses.size());
            person.house = h;
            world.houses[h].members.push_back(i);
            person.position = near(world.houses[h].position, rng, params);
        }
        person.stratum = rng.uniform_int(1, static_cast<int>(num_quintiles));
        // The draw is consumed for every person so the structure stream does not depend on ages.
        bool unemployed = rng.bernoulli(params.unemployment_rate);
        if (!person.is_homeless() && in_eap(person.age, params) && !unemployed && !world.businesses.empty()) {
            auto b          = rng.index(world.businesses.size());
            person.employer = b;
            world.businesses[b].employees.push_back(i);
        }
        person.isolation_draw = rng.uniform();
    }

    // Initial infected and immune sets are disjoint random subsets.
    auto infected = ceil_count(params.initial_infected * static_cast<double>(n));
    auto immune   = ceil_count(params.initial_immune * static_cast<double>(n));
    if (infected + immune > n) {
        throw std::invalid_argument("build_world: initial infected and immune sets exceed the population");
    }
    RandomStream seeding(derive_seed({seed, static_cast<std::uint64_t>(StreamPurpose::Seeding)}));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), seeding.engine());
    for (std::size_t k = 0; k < infected; ++k) {
        world.persons[order[k]].epidemic = make_infection(0, params, seeding);
    }
    for (std::size_t k = infected; k < infected + immune; ++k) {
        world.persons[order[k]].epidemic.status = EpidemicStatus::Recovered;
    }

    world.movement_rng.reserve(n);
    world.health_rng.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        world.movement_rng.emplace_back(
            derive_seed({seed, static_cast<std::uint64_t>(StreamPurpose::Movement), i}));
        world.health_rng.emplace_back(derive_seed({seed, static_cast<std::uint64_t>(StreamPurpose::Health), i}));
    }
    world.economy_rng = RandomStream(derive_seed({seed, static_cast<std::uint64_t>(StreamPurpose::Economy)}));

    world.hospital.capacity =
        static_cast<std::size_t>(std::floor(params.critical_limit * static_cast<double>(n) + 1e-9));

    distribute_wealth(world);
    return world;
}

void distribute_wealth(WorldState& world)
{
    const auto& params = world.params;
    const auto& shares = params.income_distribution;

    for (auto& p : world.persons) {
        p.wealth = 0.0;
    }
    world.government.wealth = params.public_gdp_share * params.total_gdp;
    world.healthcare.wealth = 0.0;

    // business slice, equal split inside each quintile
    double business_pool = params.business_gdp_share * params.total_gdp;
    std::array<std::size_t, num_quintiles> business_count{};
    for (const auto& b : world.businesses) {
        ++business_count[b.stratum - 1];
    }
    double business_share_sum = 0.0;
    for (std::size_t q = 0; q < num_quintiles; ++q) {
        if (business_count[q] > 0) {
            business_share_sum += shares[q];
        }
    }
    for (auto& b : world.businesses) {
        auto q   = static_cast<std::size_t>(b.stratum - 1);
        b.wealth = business_pool * shares[q] / business_share_sum / static_cast<double>(business_count[q]);
    }
    if (world.businesses.empty()) {
        world.government.wealth += business_pool;
    }

    // personal slice, split by head count inside each quintile
    double personal_pool = params.personal_gdp_share() * params.total_gdp;
    std::array<double, num_quintiles> heads{};
    for (const auto& h : world.houses) {
        heads[h.stratum - 1] += static_cast<double>(h.members.size());
    }
    for (const auto& p : world.persons) {
        if (p.is_homeless()) {
            heads[p.stratum - 1] += 1.0;
        }
    }
    double personal_share_sum = 0.0;
    for (std::size_t q = 0; q < num_quintiles; ++q) {
        if (heads[q] > 0.0) {
            personal_share_sum += shares[q];
        }
    }
    auto per_head = [&](int stratum) {
        auto q = static_cast<std::size_t>(stratum - 1);
        return personal_pool * shares[q] / personal_share_sum / heads[q];
    };
    for (auto& h : world.houses) {
        h.wealth = h.members.empty() ? 0.0 : per_head(h.stratum) * static_cast<double>(h.members.size());
    }
    for (auto& p : world.persons) {
        if (p.is_homeless()) {
            p.wealth = per_head(p.stratum);
        }
    }
    if (personal_share_sum == 0.0) {
        world.government.wealth += personal_pool;
    }
}

} // namespace cabm
