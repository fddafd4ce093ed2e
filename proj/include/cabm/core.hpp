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
#ifndef CABM_CORE_HPP
#define CABM_CORE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cabm
{

/// Number of age brackets in the severity tables (decades, 80+ folded into the last).
inline constexpr std::size_t num_age_brackets = 9;
/// Number of income quintiles.
inline constexpr std::size_t num_quintiles = 5;

/// Hours in a simulated day and in one accounting month.
inline constexpr int hours_per_day   = 24;
inline constexpr int hours_per_month = 720;

using AgeTable = std::array<double, num_age_brackets>;

/**
 * Point in the environment, in grid units (one unit is about 7 meters).
 */
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Euclidean distance between two positions.
double distance(const Position& p, const Position& q);

/// Clip each coordinate of p into [0, height] x [0, width].
Position clamp_position(const Position& p, double height, double width);

/**
 * Closed integer interval of days.
 */
struct DayRange {
    int min = 0;
    int max = 0;
};

/**
 * Full parameter set of the model.
 *
 * Field names double as the keys of the configuration file (see config.hpp).
 * Defaults reproduce the reference parameterization for a 300 person society.
 */
struct Parameters {
    // social and demographic
    double height          = 500.0; ///< environment extent along x
    double width           = 500.0; ///< environment extent along y
    int population_size    = 300;
    double age_shape_a     = 2.0; ///< age ~ 100 * Beta(a, b)
    double age_shape_b     = 4.0;
    int family_size        = 3;
    double mobility        = 10.0; ///< std deviation of a free walk step
    double homeless_rate   = 0.0005;
    double position_noise  = 0.01; ///< std deviation around a target for "go to" actions

    // epidemiological
    double contagion_distance    = 1.0; ///< also the contact threshold
    double contagion_probability = 0.9;
    DayRange incubation_time     = {5, 6};
    DayRange transmission_time   = {8, 10};
    int recovering_time          = 20;
    AgeTable hospitalization_rate = {0.001, 0.003, 0.012, 0.032, 0.049, 0.102, 0.166, 0.243, 0.273};
    AgeTable severe_rate          = {0.050, 0.050, 0.050, 0.050, 0.063, 0.122, 0.274, 0.432, 0.709};
    AgeTable death_rate = {0.00002, 0.00006, 0.0003, 0.0008, 0.0015, 0.006, 0.022, 0.051, 0.093};
    double initial_infected = 0.01;
    double initial_immune   = 0.01;
    double critical_limit   = 0.05;

    // economical
    std::array<double, num_quintiles> income_distribution = {0.0362, 0.0788, 0.1267, 0.1971, 0.5612};
    double formal_business_rate   = 0.01875;
    double total_gdp              = 1'000'000.0;
    double public_gdp_share       = 0.01;
    double business_gdp_share     = 0.05;
    double minimum_income         = 900.0; ///< per month
    double minimum_expense        = 600.0; ///< per month
    double unemployment_rate      = 0.12;
    double informal_business_rate = 0.40;
    double eap_min_age            = 16.0; ///< exclusive
    double eap_max_age            = 65.0; ///< exclusive

    // plumbing
    double tax_rate                      = 0.03;
    double spend_per_contact             = 150.0;
    double hospital_cost_per_patient_day = 30.0;
    double healthcare_fixed_expense      = 0.0; ///< per month
    double capacity_fatality_multiplier  = 10.0;

    /// Remainder of the GDP after the public and business slices.
    double personal_gdp_share() const
    {
        return 1.0 - public_gdp_share - business_gdp_share;
    }

    /// Contact threshold of the contact kernel; identified with the contagion distance.
    double contact_threshold() const
    {
        return contagion_distance;
    }

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

/// Index into the severity tables for an age in years.
std::size_t age_bracket(double age);

/// True if the age lies inside the economically active interval.
bool in_eap(double age, const Parameters& params);

enum class EpidemicStatus : std::uint8_t
{
    Susceptible,
    Infected,
    Recovered,
    Dead,
};

enum class InfectionPhase : std::uint8_t
{
    Incubating,
    Contagious,
    PostContagious, ///< still infected, no longer transmitting
};

enum class Severity : std::uint8_t
{
    Asymptomatic,
    Hospitalized,
    Severe,
};

struct EpidemicState {
    EpidemicStatus status = EpidemicStatus::Susceptible;
    InfectionPhase phase  = InfectionPhase::Incubating;
    std::optional<Severity> severity; ///< set once the contagious phase starts
    int infection_day     = 0;
    int incubation_length = 0;
    int contagious_length = 0;
    bool unserved         = false; ///< needed a hospital bed and did not get one (sticky)

    bool is_infected() const
    {
        return status == EpidemicStatus::Infected;
    }
    bool is_contagious() const
    {
        return is_infected() && phase == InfectionPhase::Contagious;
    }
    bool needs_care() const
    {
        return is_infected() && severity && *severity != Severity::Asymptomatic;
    }
};

enum class MovementAction : std::uint8_t
{
    GoHome,
    GoToWork,
    WalkFreely,
    GoToHospital,
    StayStill,
};

/// A1.
struct Person {
    Position position;
    double age = 0.0;
    std::optional<std::size_t> house;    ///< empty: homeless
    std::optional<std::size_t> employer; ///< empty: unemployed or outside the EAP
    EpidemicState epidemic;
    double wealth        = 0.0;
    int stratum          = 1;     ///< quintile 1..5
    bool isolated        = false; ///< set by the active policy
    double isolation_draw = 1.0;  ///< fixed uniform draw deciding random isolation membership
    MovementAction last_action = MovementAction::StayStill;

    bool is_alive() const
    {
        return epidemic.status != EpidemicStatus::Dead;
    }
    bool is_homeless() const
    {
        return !house.has_value();
    }
    bool is_employed() const
    {
        return employer.has_value();
    }
};

/// A2.
struct House {
    Position position;
    double wealth = 0.0;
    std::vector<std::size_t> members;
    int stratum         = 1;
    double gross_income = 0.0; ///< reset at each accounting
    double expenses_paid = 0.0; ///< fixed expenses paid since the last accounting
};

/// A3.
struct Business {
    Position position;
    double wealth = 0.0;
    std::vector<std::size_t> employees;
    int stratum         = 1;
    double gross_income = 0.0;
};

/// A4 singleton.
struct Government {
    Position position;
    double wealth = 0.0;
};

/// A5 singleton.
struct Healthcare {
    Position position;
    double wealth = 0.0;
    long patient_days = 0; ///< admitted patient-days since the last accounting
};

/**
 * Observable response of one iteration. Epidemic variables are fractions of the
 * population, wealth variables fractions of the total GDP.
 */
struct ResponseRecord {
    double susceptible  = 0.0;
    double infected     = 0.0;
    double asymptomatic = 0.0;
    double hospitalized = 0.0;
    double severe       = 0.0;
    double recovered    = 0.0;
    double dead         = 0.0;
    double wealth_people     = 0.0;
    double wealth_business   = 0.0;
    double wealth_government = 0.0;

    static constexpr std::size_t num_variables = 10;

    /// Variables in reporting order.
    std::array<double, num_variables> values() const;
    static ResponseRecord from_values(const std::array<double, num_variables>& v);
    /// Column names in reporting order.
    static const std::array<const char*, num_variables>& names();
};

} // namespace cabm

#endif // CABM_CORE_HPP
