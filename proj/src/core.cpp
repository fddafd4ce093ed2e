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
#include "cabm/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cabm
{

double distance(const Position& p, const Position& q)
{
    return std::hypot(p.x - q.x, p.y - q.y);
}

Position clamp_position(const Position& p, double height, double width)
{
    return {std::clamp(p.x, 0.0, height), std::clamp(p.y, 0.0, width)};
}

std::size_t age_bracket(double age)
{
    if (!(age > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(age / 10.0), num_age_brackets - 1);
}

bool in_eap(double age, const Parameters& params)
{
    return age > params.eap_min_age && age < params.eap_max_age;
}

namespace
{

void require(bool condition, const std::string& what)
{
    if (!condition) {
        throw std::invalid_argument("invalid parameters: " + what);
    }
}

bool is_probability(double v)
{
    return v >= 0.0 && v <= 1.0;
}

void require_probability(double v, const char* name)
{
    require(is_probability(v), std::string(name) + " must lie in [0, 1]");
}

void require_table(const AgeTable& table, const char* name)
{
    for (double v : table) {
        require_probability(v, name);
    }
}

} // namespace

void Parameters::validate() const
{
    require(height > 0.0 && width > 0.0, "height and width must be positive");
    require(population_size >= 1, "population_size must be at least 1");
    require(age_shape_a > 0.0 && age_shape_b > 0.0, "age distribution shapes must be positive");
    require(family_size >= 1, "family_size must be at least 1");
    require(mobility >= 0.0, "mobility must be non-negative");
    require_probability(homeless_rate, "homeless_rate");
    require(position_noise >= 0.0, "position_noise must be non-negative");

    require(contagion_distance >= 0.0, "contagion_distance must be non-negative");
    require_probability(contagion_probability, "contagion_probability");
    require(incubation_time.min >= 0 && incubation_time.min <= incubation_time.max,
            "incubation_time must satisfy 0 <= min <= max");
    require(transmission_time.min >= 0 && transmission_time.min <= transmission_time.max,
            "transmission_time must satisfy 0 <= min <= max");
    require(recovering_time >= 1, "recovering_time must be at least 1");
    require_table(hospitalization_rate, "hospitalization_rate");
    require_table(severe_rate, "severe_rate");
    require_table(death_rate, "death_rate");
    require_probability(initial_infected, "initial_infected");
    require_probability(initial_immune, "initial_immune");
    require(initial_infected + initial_immune <= 1.0 + 1e-12,
            "initial_infected + initial_immune must not exceed 1");
    require_probability(critical_limit, "critical_limit");

    double share_sum = 0.0;
    for (double s : income_distribution) {
        require(s > 0.0, "income_distribution shares must be strictly positive");
        share_sum += s;
    }
    require(std::abs(share_sum - 1.0) <= 1e-9, "income_distribution shares must sum to 1");
    require(formal_business_rate >= 0.0, "formal_business_rate must be non-negative");
    require(informal_business_rate >= 0.0, "informal_business_rate must be non-negative");
    require(total_gdp > 0.0, "total_gdp must be positive");
    require_probability(public_gdp_share, "public_gdp_share");
    require_probability(business_gdp_share, "business_gdp_share");
    require(public_gdp_share + business_gdp_share <= 1.0, "public + business GDP shares must not exceed 1");
    require(minimum_income >= 0.0, "minimum_income must be non-negative");
    require(minimum_expense >= 0.0, "minimum_expense must be non-negative");
    require_probability(unemployment_rate, "unemployment_rate");
    require(eap_min_age < eap_max_age, "EAP interval must be non-empty");

    require_probability(tax_rate, "tax_rate");
    require(spend_per_contact >= 0.0, "spend_per_contact must be non-negative");
    require(hospital_cost_per_patient_day >= 0.0, "hospital_cost_per_patient_day must be non-negative");
    require(healthcare_fixed_expense >= 0.0, "healthcare_fixed_expense must be non-negative");
    require(capacity_fatality_multiplier >= 1.0, "capacity_fatality_multiplier must be at least 1");
}

std::array<double, ResponseRecord::num_variables> ResponseRecord::values() const
{
    return {susceptible, infected,  asymptomatic,  hospitalized,    severe,
            recovered,   dead,      wealth_people, wealth_business, wealth_government};
}

ResponseRecord ResponseRecord::from_values(const std::array<double, num_variables>& v)
{
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

const std::array<const char*, ResponseRecord::num_variables>& ResponseRecord::names()
{
    static const std::array<const char*, num_variables> n = {"S", "I",  "I_A",  "I_H",  "I_S",
                                                             "R", "D",  "W_A1", "W_A3", "W_A4"};
    return n;
}

} // namespace cabm
