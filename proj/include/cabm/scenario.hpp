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
#ifndef CABM_SCENARIO_HPP
#define CABM_SCENARIO_HPP

#include "cabm/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cabm
{

enum class ScenarioId
{
    Baseline,
    DoNothing,
    Lockdown,
    ConditionalLockdown,
    VerticalIsolation,
    PartialIsolation,
    FaceMasks,
    MasksPlusPartial,
    Custom,
};

/// Which persons a policy confines to their homes regardless of lockdown state.
enum class IsolationRule
{
    None,
    Vertical, ///< risk ages or symptomatic
    Random,   ///< fixed random subset drawn with probability equal to the isolation level
};

/// When the lockdown part of a policy applies.
enum class Trigger
{
    Never,
    Always,
    Threshold, ///< while the infected fraction is at or above the threshold
};

/**
 * Intervention description. Immutable once built.
 */
struct ScenarioPolicy {
    ScenarioId id = ScenarioId::DoNothing;
    std::string name = "do-nothing";

    std::optional<double> contagion_distance;    ///< overrides the contagion distance (and contact threshold)
    std::optional<double> contagion_probability; ///< overrides the contagion probability
    std::optional<double> lockdown_mobility;     ///< free-walk amplitude while confined
    std::optional<double> initial_infected;      ///< seeding overrides
    std::optional<double> initial_immune;

    Trigger trigger         = Trigger::Never;
    double threshold        = 0.0;
    IsolationRule isolation = IsolationRule::None;
    double isolation_level  = 0.0;

    double vertical_max_age = 65.0; ///< isolated above this age
    double vertical_min_age = 18.0; ///< isolated below this age

    /// Throws std::invalid_argument on out of range levels or thresholds.
    void validate() const;

    /// Apply the seeding and contagion overrides to a parameter set.
    Parameters apply(const Parameters& params) const;
};

/// Stable command line name of a scenario id.
std::string_view scenario_name(ScenarioId id);
/// Inverse of scenario_name; throws std::invalid_argument on unknown names.
ScenarioId parse_scenario(std::string_view name);
/// The eight reference scenarios, baseline first.
const std::vector<ScenarioId>& reference_scenarios();

/// Policy of a reference scenario. Custom yields an unrestricted policy to be edited by the caller.
ScenarioPolicy make_scenario(ScenarioId id);

/// Random isolation policy at a given level, named e.g. "partial-il0.30" (the isolation level sweep).
ScenarioPolicy make_partial_isolation(double level);

/// Whether the lockdown restrictions hold given the current infected fraction.
bool policy_active(const ScenarioPolicy& policy, double infected_fraction);

/**
 * Whether a person is confined by the policy's isolation rule at this hour.
 * Random isolation reads the person's fixed isolation flag.
 */
bool is_isolated(const Person& person, const ScenarioPolicy& policy);

/// Set each person's isolation flag from its fixed draw; called once at initialization.
void assign_isolation_flags(std::vector<Person>& persons, const ScenarioPolicy& policy);

} // namespace cabm

#endif // CABM_SCENARIO_HPP
