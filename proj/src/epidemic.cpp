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
#include "cabm/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>

namespace cabm
{

Movement routine_action(const Person& person, int hour, const ScenarioPolicy& policy, bool lockdown_active,
                        double mobility)
{
    if (!person.is_alive()) {
        return {MovementAction::StayStill, 0.0};
    }
    if (person.epidemic.needs_care()) {
        return {MovementAction::GoToHospital, 0.0};
    }
    if (lockdown_active || is_isolated(person, policy)) {
        if (person.is_homeless()) {
            return {MovementAction::WalkFreely, policy.lockdown_mobility.value_or(mobility)};
        }
        return {MovementAction::GoHome, 0.0};
    }
    const bool job_hours = (hour >= 8 && hour < 12) || (hour >= 14 && hour < 18);
    if (hour < 8 && !person.is_homeless()) {
        return {MovementAction::GoHome, 0.0};
    }
    if (job_hours && person.is_employed()) {
        return {MovementAction::GoToWork, 0.0};
    }
    return {MovementAction::WalkFreely, mobility};
}

Position apply_movement(const WorldState& world, const Person& person, const Movement& movement,
                        RandomStream& rng)
{
    if (!person.is_alive()) {
        return {0.0, 0.0};
    }
    const auto& params = world.params;
    const double dx    = rng.normal(0.0, 1.0);
    const double dy    = rng.normal(0.0, 1.0);

    Position anchor = person.position;
    double scale    = params.position_noise;
    switch (movement.action) {
    case MovementAction::GoHome:
        anchor = person.house ? world.houses[*person.house].position : person.position;
        break;
    case MovementAction::GoToWork:
        anchor = person.employer ? world.businesses[*person.employer].position : person.position;
        break;
    case MovementAction::GoToHospital:
        anchor = world.healthcare.position;
        break;
    case MovementAction::WalkFreely:
        scale = movement.amplitude;
        break;
    case MovementAction::StayStill:
        return person.position;
    }
    return clamp_position({anchor.x + scale * dx, anchor.y + scale * dy}, params.height, params.width);
}

std::vector<Contact> find_contacts(std::span<const Person> persons, std::span<const Business> businesses,
                                   double threshold)
{
    std::vector<Contact> contacts;
    if (!(threshold > 0.0)) {
        return contacts;
    }
    // Slightly oversized cells keep every pair within the threshold in adjacent cells despite
    // rounding in the coordinate division.
    const double cell = threshold * (1.0 + 1e-9);

    struct Entry {
        std::int64_t cx;
        std::int64_t cy;
        bool is_business;
        std::size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(persons.size() + businesses.size());
    auto cell_of = [cell](double v) {
        // Capped so that absurdly small thresholds still convert safely.
        return static_cast<std::int64_t>(std::floor(std::min(v / cell, 1e18)));
    };
    for (std::size_t i = 0; i < persons.size(); ++i) {
        if (persons[i].is_alive()) {
            const auto& p = persons[i].position;
            entries.push_back({cell_of(p.x), cell_of(p.y), false, i});
        }
    }
    for (std::size_t k = 0; k < businesses.size(); ++k) {
        const auto& p = businesses[k].position;
        entries.push_back({cell_of(p.x), cell_of(p.y), true, k});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.cx, a.cy, a.is_business, a.index) < std::tie(b.cx, b.cy, b.is_business, b.index);
    });

    // Sweep: every pair within the threshold lies in the same or adjacent cell columns and
    // rows, so each entry is only compared with the later entries of the next column.
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        for (std::size_t j = i + 1; j < entries.size() && entries[j].cx <= e.cx + 1; ++j) {
            const auto& f = entries[j];
            if ((e.is_business && f.is_business) || f.cy < e.cy - 1 || f.cy > e.cy + 1) {
                continue;
            }
            if (e.is_business || f.is_business) {
                const auto& person   = e.is_business ? f : e;
                const auto& business = e.is_business ? e : f;
                if (distance(persons[person.index].position, businesses[business.index].position) <= threshold) {
                    contacts.push_back({person.index, ContactKind::Business, business.index});
                }
            }
            else if (distance(persons[e.index].position, persons[f.index].position) <= threshold) {
                contacts.push_back(
                    {std::min(e.index, f.index), ContactKind::Personal, std::max(e.index, f.index)});
            }
        }
    }
    std::sort(contacts.begin(), contacts.end());
    return contacts;
}

bool attempt_contagion(Person& a, Person& b, double probability, double draw, int day, const Parameters& params,
                       RandomStream& rng)
{
    Person* target = nullptr;
    if (a.epidemic.is_contagious() && b.epidemic.status == EpidemicStatus::Susceptible) {
        target = &b;
    }
    else if (b.epidemic.is_contagious() && a.epidemic.status == EpidemicStatus::Susceptible) {
        target = &a;
    }
    if (target == nullptr || !(draw < probability)) {
        return false;
    }
    target->epidemic = make_infection(day, params, rng);
    return true;
}

bool attempt_contagion(WorldState& world, std::size_t a, std::size_t b, double probability, int day)
{
    auto& pa = world.persons[a];
    auto& pb = world.persons[b];
    std::size_t susceptible;
    if (pa.epidemic.is_contagious() && pb.epidemic.status == EpidemicStatus::Susceptible) {
        susceptible = b;
    }
    else if (pb.epidemic.is_contagious() && pa.epidemic.status == EpidemicStatus::Susceptible) {
        susceptible = a;
    }
    else {
        return false;
    }
    auto& rng = world.health_rng[susceptible];
    return attempt_contagion(pa, pb, probability, rng.uniform(), day, world.params, rng);
}

Severity draw_severity(double age, const AgeTable& hospitalization, const AgeTable& severe, double draw_hospital,
                       double draw_severe)
{
    const auto bracket = age_bracket(age);
    if (!(draw_hospital < hospitalization[bracket])) {
        return Severity::Asymptomatic;
    }
    return draw_severe < severe[bracket] ? Severity::Severe : Severity::Hospitalized;
}

Severity draw_severity(double age, const AgeTable& hospitalization, const AgeTable& severe, RandomStream& rng)
{
    const double u_hospital = rng.uniform();
    const double u_severe   = rng.uniform();
    return draw_severity(age, hospitalization, severe, u_hospital, u_severe);
}

double fatality_probability(const Person& person, const Parameters& params)
{
    double p = params.death_rate[age_bracket(person.age)];
    if (person.epidemic.unserved) {
        p *= params.capacity_fatality_multiplier;
    }
    return std::min(p, 1.0);
}

void resolve_infection(Person& person, double draw, const Parameters& params)
{
    const bool dies = draw < fatality_probability(person, params);
    EpidemicState done;
    done.status          = dies ? EpidemicStatus::Dead : EpidemicStatus::Recovered;
    done.infection_day   = person.epidemic.infection_day;
    done.unserved        = person.epidemic.unserved;
    person.epidemic      = done;
    if (dies) {
        person.position = {0.0, 0.0};
    }
}

void advance_disease(Person& person, int day, const Parameters& params, RandomStream& rng)
{
    auto& epi = person.epidemic;
    if (!epi.is_infected()) {
        return;
    }
    const int elapsed = day - epi.infection_day;
    if (epi.phase == InfectionPhase::Incubating && elapsed >= epi.incubation_length) {
        epi.phase    = InfectionPhase::Contagious;
        epi.severity = draw_severity(person.age, params.hospitalization_rate, params.severe_rate, rng);
    }
    else if (epi.phase == InfectionPhase::Contagious) {
        auto drawn   = draw_severity(person.age, params.hospitalization_rate, params.severe_rate, rng);
        epi.severity = std::max(*epi.severity, drawn);
    }
    if (epi.phase == InfectionPhase::Contagious && elapsed >= epi.incubation_length + epi.contagious_length) {
        epi.phase = InfectionPhase::PostContagious;
    }
    if (elapsed >= params.recovering_time) {
        resolve_infection(person, rng.uniform(), params);
    }
}

void update_hospital_capacity(WorldState& world)
{
    auto& ledger = world.hospital;
    ledger.admitted.clear();
    for (std::size_t i = 0; i < world.persons.size(); ++i) {
        if (world.persons[i].epidemic.needs_care()) {
            ledger.admitted.push_back(i);
        }
    }
    std::sort(ledger.admitted.begin(), ledger.admitted.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = world.persons[a].epidemic;
        const auto& eb = world.persons[b].epidemic;
        const bool sa  = *ea.severity == Severity::Severe;
        const bool sb  = *eb.severity == Severity::Severe;
        return std::tuple(!sa, ea.infection_day, a) < std::tuple(!sb, eb.infection_day, b);
    });
    if (ledger.admitted.size() > ledger.capacity) {
        for (std::size_t k = ledger.capacity; k < ledger.admitted.size(); ++k) {
            world.persons[ledger.admitted[k]].epidemic.unserved = true;
        }
        ledger.admitted.resize(ledger.capacity);
    }
    world.healthcare.patient_days += static_cast<long>(ledger.admitted.size());
}

} // namespace cabm
