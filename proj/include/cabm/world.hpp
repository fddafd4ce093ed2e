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
#ifndef CABM_WORLD_HPP
#define CABM_WORLD_HPP

#include "cabm/core.hpp"
#include "cabm/random.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cabm
{

/**
 * Beds of the healthcare system and who currently holds one.
 */
struct HospitalLedger {
    std::size_t capacity = 0;
    std::vector<std::size_t> admitted; ///< person indices, in admission priority order
};

/**
 * Complete simulation state: all agents, the clock, the hospital ledger and the random streams.
 */
struct WorldState {
    Parameters params;
    std::vector<Person> persons;
    std::vector<House> houses;
    std::vector<Business> businesses;
    Government government;
    Healthcare healthcare;
    HospitalLedger hospital;
    int iteration = 0; ///< number of completed hours

    std::vector<RandomStream> movement_rng; ///< one per person
    std::vector<RandomStream> health_rng;   ///< one per person
    RandomStream economy_rng;

    /// Sum of the wealth held by every agent.
    double total_wealth() const;
    /// Fraction of the population currently infected.
    double infected_fraction() const;
};

/// Number of houses for a population and average family size: ceil(population / family).
std::size_t count_houses(long population, long family_size);

/// Number of businesses: ceil(population * (formal + informal)).
std::size_t count_businesses(long population, double formal_rate, double informal_rate);

/// Age in years, 100 * Beta(a, b).
double sample_age(RandomStream& rng, double shape_a, double shape_b);

/// Freshly infected epidemic state starting its incubation on the given day.
EpidemicState make_infection(int day, const Parameters& params, RandomStream& rng);

/**
 * Build the initial world from parameters and a seed.
 *
 * Structure (positions, ages, households, employers, strata, wealth) depends only on
 * the seed and the structural parameters; the initial infected/immune selection uses a
 * separate stream, so scenarios that only change the epidemic seeding share the same society.
 */
WorldState build_world(const Parameters& params, std::uint64_t seed);

/**
 * Split the total GDP among the agents: public slice to the government, business slice
 * to businesses by quintile share, personal slice to houses (and homeless persons) by
 * quintile share weighted by head count. Shares of empty quintiles are redistributed
 * proportionally over the others. Overwrites existing wealth.
 */
void distribute_wealth(WorldState& world);

} // namespace cabm

#endif // CABM_WORLD_HPP
