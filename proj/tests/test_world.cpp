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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace
{

using namespace cabm;

TEST(CountHouses, CeilingOfPopulationOverFamily)
{
    EXPECT_EQ(count_houses(300, 3), 100u);
    EXPECT_EQ(count_houses(1, 1), 1u);
    EXPECT_EQ(count_houses(301, 3), 101u);
    EXPECT_THROW(count_houses(300, 0), std::invalid_argument);
}

TEST(CountBusinesses, FormalPlusInformal)
{
    EXPECT_EQ(count_businesses(300, 0.01875, 0.40), 126u);
    EXPECT_EQ(count_businesses(0, 0.01875, 0.40), 0u);
    EXPECT_EQ(count_businesses(100, 0.01875, 0.40), 42u);
}

TEST(SampleAge, SupportAndMean)
{
    RandomStream rng(1);
    const int n = 100000;
    double sum  = 0.0;
    for (int k = 0; k < n; ++k) {
        const double age = sample_age(rng, 2.0, 4.0);
        ASSERT_GE(age, 0.0);
        ASSERT_LE(age, 100.0);
        sum += age;
    }
    EXPECT_NEAR(sum / n, 100.0 / 3.0, 1.0);
}

TEST(SampleAge, UniformShapeIsUniform)
{
    RandomStream rng(2);
    std::vector<double> ages(20000);
    for (auto& a : ages) {
        a = sample_age(rng, 1.0, 1.0);
    }
    const double p = oracle::ks_p(ages, [](double x) {
        return std::clamp(x / 100.0, 0.0, 1.0);
    });
    EXPECT_GT(p, 0.01);
}

TEST(BuildWorld, DefaultPopulationCounts)
{
    const auto w = build_world(Parameters{}, 42);
    EXPECT_EQ(w.persons.size(), 300u);
    EXPECT_EQ(w.houses.size(), 100u);
    EXPECT_EQ(w.businesses.size(), 126u);
    EXPECT_EQ(w.hospital.capacity, 15u);
}

TEST(BuildWorld, InitialEpidemicCounts)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto w = build_world(Parameters{}, seed);
        int infected = 0, recovered = 0;
        for (const auto& p : w.persons) {
            infected += p.epidemic.is_infected();
            recovered += p.epidemic.status == EpidemicStatus::Recovered;
            if (p.epidemic.is_infected()) {
                EXPECT_EQ(p.epidemic.phase, InfectionPhase::Incubating);
                EXPECT_EQ(p.epidemic.infection_day, 0);
                EXPECT_FALSE(p.epidemic.severity.has_value());
            }
        }
        EXPECT_EQ(infected, 3);
        EXPECT_EQ(recovered, 3);
    }
}

TEST(BuildWorld, BaselineSeedingIsAllImmune)
{
    Parameters p;
    p.initial_infected = 0.0;
    p.initial_immune   = 1.0;
    const auto w       = build_world(p, 5);
    for (const auto& person : w.persons) {
        EXPECT_EQ(person.epidemic.status, EpidemicStatus::Recovered);
    }
}

TEST(BuildWorld, RejectsOverlappingSeeds)
{
    Parameters p;
    p.initial_infected = 0.6;
    p.initial_immune   = 0.5;
    EXPECT_THROW(build_world(p, 1), std::invalid_argument);
}

TEST(BuildWorld, PartitionsAndRanges)
{
    const Parameters params;
    const auto w = build_world(params, 9);
    std::vector<int> membership(w.persons.size(), 0), employment(w.persons.size(), 0);
    for (std::size_t h = 0; h < w.houses.size(); ++h) {
        for (auto i : w.houses[h].members) {
            ++membership[i];
            EXPECT_EQ(w.persons[i].house, h);
        }
    }
    for (std::size_t b = 0; b < w.businesses.size(); ++b) {
        for (auto i : w.businesses[b].employees) {
            ++employment[i];
            EXPECT_EQ(w.persons[i].employer, b);
        }
    }
    for (std::size_t i = 0; i < w.persons.size(); ++i) {
        const auto& p = w.persons[i];
        EXPECT_EQ(membership[i], p.is_homeless() ? 0 : 1);
        EXPECT_EQ(employment[i], p.is_employed() ? 1 : 0);
        if (p.is_employed()) {
            EXPECT_TRUE(in_eap(p.age, params));
            EXPECT_FALSE(p.is_homeless());
        }
        EXPECT_GE(p.age, 0.0);
        EXPECT_LE(p.age, 100.0);
        EXPECT_GE(p.stratum, 1);
        EXPECT_LE(p.stratum, 5);
        EXPECT_GE(p.position.x, 0.0);
        EXPECT_LE(p.position.x, params.height);
        EXPECT_GE(p.position.y, 0.0);
        EXPECT_LE(p.position.y, params.width);
        if (!p.is_homeless()) {
            EXPECT_LT(distance(p.position, w.houses[*p.house].position), 10 * params.position_noise);
        }
    }
}

TEST(BuildWorld, HomelessFractionMatchesRate)
{
    Parameters p;
    p.population_size = 10000;
    p.homeless_rate   = 0.05;
    const auto w      = build_world(p, 17);
    int homeless      = 0;
    for (const auto& person : w.persons) {
        homeless += person.is_homeless();
    }
    // 4 binomial standard deviations.
    const double sd = std::sqrt(10000 * 0.05 * 0.95);
    EXPECT_NEAR(homeless, 500.0, 4 * sd);
}

TEST(BuildWorld, EmploymentRateInsideTheActiveAges)
{
    Parameters p;
    p.population_size = 20000;
    const auto w      = build_world(p, 23);
    int eligible = 0, employed = 0;
    for (const auto& person : w.persons) {
        if (in_eap(person.age, p) && !person.is_homeless()) {
            ++eligible;
            employed += person.is_employed();
        }
    }
    const double rate = static_cast<double>(employed) / eligible;
    EXPECT_NEAR(rate, 1.0 - p.unemployment_rate, 4 * std::sqrt(0.12 * 0.88 / eligible));
}

TEST(BuildWorld, SameSeedSameWorld)
{
    const auto a = build_world(Parameters{}, 77);
    const auto b = build_world(Parameters{}, 77);
    ASSERT_EQ(a.persons.size(), b.persons.size());
    for (std::size_t i = 0; i < a.persons.size(); ++i) {
        EXPECT_EQ(a.persons[i].position, b.persons[i].position);
        EXPECT_EQ(a.persons[i].age, b.persons[i].age);
        EXPECT_EQ(a.persons[i].house, b.persons[i].house);
        EXPECT_EQ(a.persons[i].employer, b.persons[i].employer);
        EXPECT_EQ(a.persons[i].epidemic.status, b.persons[i].epidemic.status);
    }
    const auto c = build_world(Parameters{}, 78);
    EXPECT_NE(a.persons[0].position, c.persons[0].position);
}

TEST(BuildWorld, SeedingDoesNotChangeTheSociety)
{
    Parameters baseline;
    baseline.initial_infected = 0.0;
    baseline.initial_immune   = 1.0;
    const auto a = build_world(Parameters{}, 31);
    const auto b = build_world(baseline, 31);
    for (std::size_t i = 0; i < a.persons.size(); ++i) {
        EXPECT_EQ(a.persons[i].position, b.persons[i].position);
        EXPECT_EQ(a.persons[i].employer, b.persons[i].employer);
    }
    EXPECT_DOUBLE_EQ(a.businesses[7].wealth, b.businesses[7].wealth);
}

TEST(DistributeWealth, ReferenceSlices)
{
    const Parameters params;
    const auto w = build_world(params, 4);
    EXPECT_NEAR(w.government.wealth, 10000.0, 1e-6);
    EXPECT_EQ(w.healthcare.wealth, 0.0);
    double business = 0.0;
    for (const auto& b : w.businesses) {
        business += b.wealth;
    }
    EXPECT_NEAR(business, 50000.0, 1e-6);
    double personal = 0.0;
    for (const auto& h : w.houses) {
        personal += h.wealth;
    }
    for (const auto& p : w.persons) {
        personal += p.wealth;
    }
    EXPECT_NEAR(personal, 940000.0, 1e-6);
    EXPECT_NEAR(w.total_wealth(), params.total_gdp, 1e-6 * params.total_gdp);
}

TEST(DistributeWealth, RichestQuintileHoldsItsShare)
{
    // No homeless: the personal slice goes to houses only.
    Parameters params;
    params.homeless_rate = 0.0;
    const auto w         = build_world(params, 8);
    double q5 = 0.0, all = 0.0;
    for (const auto& h : w.houses) {
        all += h.wealth;
        if (h.stratum == 5) {
            q5 += h.wealth;
        }
    }
    EXPECT_NEAR(q5 / all, 0.5612, 1e-12);
}

TEST(DistributeWealth, EmptyQuintileIsRedistributed)
{
    Parameters params;
    params.population_size        = 2;
    params.family_size            = 1;
    params.homeless_rate          = 0.0;
    params.formal_business_rate   = 0.5;
    params.informal_business_rate = 0.0;
    auto w                        = build_world(params, 3);
    ASSERT_EQ(w.businesses.size(), 1u);
    w.businesses[0].stratum = 2;
    w.houses[0].stratum     = 1;
    w.houses[1].stratum     = 1;
    distribute_wealth(w);
    EXPECT_NEAR(w.businesses[0].wealth, 50000.0, 1e-9);
    EXPECT_NEAR(w.total_wealth(), params.total_gdp, 1e-6);
}

TEST(MakeInfection, DurationsInsideTheRanges)
{
    const Parameters params;
    RandomStream rng(6);
    for (int k = 0; k < 1000; ++k) {
        const auto e = make_infection(4, params, rng);
        ASSERT_EQ(e.status, EpidemicStatus::Infected);
        ASSERT_EQ(e.infection_day, 4);
        ASSERT_GE(e.incubation_length, 5);
        ASSERT_LE(e.incubation_length, 6);
        ASSERT_GE(e.contagious_length, 8);
        ASSERT_LE(e.contagious_length, 10);
    }
}

} // namespace
