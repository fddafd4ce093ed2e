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
#ifndef CABM_EPIDEMIC_HPP
#define CABM_EPIDEMIC_HPP

#include "cabm/core.hpp"
#include "cabm/random.hpp"
#include "cabm/scenario.hpp"
#include "cabm/world.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cabm
{

/// Movement chosen for one hour; amplitude is the free-walk step deviation.
struct Movement {
    MovementAction action = MovementAction::StayStill;
    double amplitude      = 0.0;
};

/**
 * Hourly routine of a living person.
 *
 * Rest hours [0, 8) at home, job hours [8, 12) and [14, 18) at the employer, free walking
 * otherwise. Persons needing care go to the hospital. Confined persons (isolated, or any
 * person while a lockdown is active) stay home; confined homeless persons walk with the
 * policy's reduced amplitude.
 */
Movement routine_action(const Person& person, int hour, const ScenarioPolicy& policy, bool lockdown_active,
                        double mobility);

/**
 * New position after a movement. Always consumes two normal draws for a living person so
 * the movement stream stays aligned across scenarios. Dead persons sit at the origin.
 */
Position apply_movement(const WorldState& world, const Person& person, const Movement& movement,
                        RandomStream& rng);

enum class ContactKind
{
    Personal, ///< person with person
    Business, ///< person with business
};

/**
 * Pair within the contact threshold. For personal contacts person < other.
 * Contacts are ordered by (person, kind, other).
 */
struct Contact {
    std::size_t person = 0;
    ContactKind kind   = ContactKind::Personal;
    std::size_t other  = 0;

    friend auto operator<=>(const Contact&, const Contact&) = default;
};

/**
 * All person-person and person-business pairs at distance <= threshold, dead persons
 * excluded, found with a uniform grid of cell size threshold. A non-positive threshold
 * yields no contacts.
 */
std::vector<Contact> find_contacts(std::span<const Person> persons, std::span<const Business> businesses,
                                   double threshold);

/**
 * Contagion between two persons in contact, given the uniform draw of the attempt.
 * Only a Contagious person infects, and only a Susceptible one. Returns true on infection.
 */
bool attempt_contagion(Person& a, Person& b, double probability, double draw, int day, const Parameters& params,
                       RandomStream& rng);

/// World-level contagion attempt drawing from the susceptible person's health stream.
bool attempt_contagion(WorldState& world, std::size_t a, std::size_t b, double probability, int day);

/// Severity for given uniform draws: hospitalized if the first is below the hospitalization
/// rate; severe if additionally the second is below the severe rate.
Severity draw_severity(double age, const AgeTable& hospitalization, const AgeTable& severe, double draw_hospital,
                       double draw_severe);
Severity draw_severity(double age, const AgeTable& hospitalization, const AgeTable& severe, RandomStream& rng);

/// Probability that an infection ends in death, scaled up for persons left without a bed.
double fatality_probability(const Person& person, const Parameters& params);

/// Terminal event of an infection: dead when draw < fatality_probability, recovered otherwise.
void resolve_infection(Person& person, double draw, const Parameters& params);

/**
 * Daily progression of an infected person.
 *
 * Incubation ends after incubation_length days, which draws the initial severity. During
 * the contagious window the severity can escalate: each further contagious day draws a
 * new severity and the worse of the two is kept. After contagious_length days the person
 * stops transmitting. recovering_time days after infection the terminal event resolves
 * the infection; a contagious window reaching past that point is truncated.
 */
void advance_disease(Person& person, int day, const Parameters& params, RandomStream& rng);

/**
 * Recompute bed assignment: severe before hospitalized, earlier infection first, then index.
 * Persons needing care without a bed get their sticky unserved flag. Adds the admitted
 * count to the healthcare patient-day counter.
 */
void update_hospital_capacity(WorldState& world);

} // namespace cabm

#endif // CABM_EPIDEMIC_HPP
