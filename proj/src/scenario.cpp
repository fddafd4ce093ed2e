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
#include "cabm/scenario.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace cabm
{

namespace
{

constexpr std::array<std::pair<ScenarioId, std::string_view>, 9> scenario_names = {{
    {ScenarioId::Baseline, "baseline"},
    {ScenarioId::DoNothing, "do-nothing"},
    {ScenarioId::Lockdown, "lockdown"},
    {ScenarioId::ConditionalLockdown, "conditional-lockdown"},
    {ScenarioId::VerticalIsolation, "vertical"},
    {ScenarioId::PartialIsolation, "partial"},
    {ScenarioId::FaceMasks, "masks"},
    {ScenarioId::MasksPlusPartial, "masks-partial"},
    {ScenarioId::Custom, "custom"},
}};

constexpr double masked_contagion_distance    = 0.5;
constexpr double masked_contagion_probability = 0.3;
constexpr double confined_mobility            = 1.0;
constexpr double conditional_threshold        = 0.05;
constexpr double partial_isolation_level      = 0.5;

void add_lockdown(ScenarioPolicy& policy, Trigger trigger)
{
    policy.trigger           = trigger;
    policy.lockdown_mobility = confined_mobility;
}

void add_masks(ScenarioPolicy& policy)
{
    policy.contagion_distance    = masked_contagion_distance;
    policy.contagion_probability = masked_contagion_probability;
}

void add_partial_isolation(ScenarioPolicy& policy, double level)
{
    policy.isolation         = IsolationRule::Random;
    policy.isolation_level   = level;
    policy.lockdown_mobility = confined_mobility;
}

} // namespace

void ScenarioPolicy::validate() const
{
    if (!(isolation_level >= 0.0 && isolation_level <= 1.0)) {
        throw std::invalid_argument("scenario " + name + ": isolation level must lie in [0, 1]");
    }
    if (trigger == Trigger::Threshold && !(threshold >= 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("scenario " + name + ": lockdown threshold must lie in [0, 1)");
    }
    auto check_probability = [&](const std::optional<double>& v, const char* what) {
        if (v && !(*v >= 0.0 && *v <= 1.0)) {
            throw std::invalid_argument("scenario " + name + ": " + what + " must lie in [0, 1]");
        }
    };
    check_probability(contagion_probability, "contagion probability");
    check_probability(initial_infected, "initial infected fraction");
    check_probability(initial_immune, "initial immune fraction");
    if (contagion_distance && *contagion_distance < 0.0) {
        throw std::invalid_argument("scenario " + name + ": contagion distance must be non-negative");
    }
    if (lockdown_mobility && *lockdown_mobility < 0.0) {
        throw std::invalid_argument("scenario " + name + ": mobility must be non-negative");
    }
}

Parameters ScenarioPolicy::apply(const Parameters& params) const
{
    Parameters out = params;
    if (contagion_distance) {
        out.contagion_distance = *contagion_distance;
    }
    if (contagion_probability) {
        out.contagion_probability = *contagion_probability;
    }
    if (initial_infected) {
        out.initial_infected = *initial_infected;
    }
    if (initial_immune) {
        out.initial_immune = *initial_immune;
    }
    return out;
}

std::string_view scenario_name(ScenarioId id)
{
    for (const auto& [sid, name] : scenario_names) {
        if (sid == id) {
            return name;
        }
    }
    return "custom";
}

ScenarioId parse_scenario(std::string_view name)
{
    for (const auto& [sid, n] : scenario_names) {
        if (n == name) {
            return sid;
        }
    }
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

const std::vector<ScenarioId>& reference_scenarios()
{
    static const std::vector<ScenarioId> ids = {
        ScenarioId::Baseline,          ScenarioId::DoNothing,        ScenarioId::Lockdown,
        ScenarioId::ConditionalLockdown, ScenarioId::VerticalIsolation, ScenarioId::PartialIsolation,
        ScenarioId::FaceMasks,         ScenarioId::MasksPlusPartial,
    };
    return ids;
}

ScenarioPolicy make_scenario(ScenarioId id)
{
    ScenarioPolicy policy;
    policy.id   = id;
    policy.name = std::string(scenario_name(id));
    switch (id) {
    case ScenarioId::Baseline:
        policy.initial_infected = 0.0;
        policy.initial_immune   = 1.0;
        break;
    case ScenarioId::DoNothing:
    case ScenarioId::Custom:
        break;
    case ScenarioId::Lockdown:
        add_lockdown(policy, Trigger::Always);
        break;
    case ScenarioId::ConditionalLockdown:
        add_lockdown(policy, Trigger::Threshold);
        policy.threshold = conditional_threshold;
        break;
    case ScenarioId::VerticalIsolation:
        policy.isolation         = IsolationRule::Vertical;
        policy.lockdown_mobility = confined_mobility;
        break;
    case ScenarioId::PartialIsolation:
        add_partial_isolation(policy, partial_isolation_level);
        break;
    case ScenarioId::FaceMasks:
        add_masks(policy);
        break;
    case ScenarioId::MasksPlusPartial:
        add_masks(policy);
        add_partial_isolation(policy, partial_isolation_level);
        break;
    }
    return policy;
}

ScenarioPolicy make_partial_isolation(double level)
{
    auto policy = make_scenario(ScenarioId::PartialIsolation);
    policy.isolation_level = level;
    char label[32];
    std::snprintf(label, sizeof label, "partial-il%.2f", level);
    policy.name = label;
    policy.validate();
    return policy;
}

bool policy_active(const ScenarioPolicy& policy, double infected_fraction)
{
    switch (policy.trigger) {
    case Trigger::Never:
        return false;
    case Trigger::Always:
        return true;
    case Trigger::Threshold:
        return infected_fraction >= policy.threshold;
    }
    return false;
}

bool is_isolated(const Person& person, const ScenarioPolicy& policy)
{
    switch (policy.isolation) {
    case IsolationRule::None:
        return false;
    case IsolationRule::Vertical: {
        bool risk_age    = person.age > policy.vertical_max_age || person.age < policy.vertical_min_age;
        bool symptomatic = person.epidemic.needs_care();
        return risk_age || symptomatic;
    }
    case IsolationRule::Random:
        return person.isolated;
    }
    return false;
}

void assign_isolation_flags(std::vector<Person>& persons, const ScenarioPolicy& policy)
{
    for (auto& p : persons) {
        p.isolated = policy.isolation == IsolationRule::Random && p.isolation_draw < policy.isolation_level;
    }
}

} // namespace cabm
