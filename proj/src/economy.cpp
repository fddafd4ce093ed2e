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
#include "cabm/economy.hpp"

#include <algorithm>
#include <vector>

namespace cabm
{

double stratum_ratio(int stratum, int reference, const Parameters& params)
{
    return params.income_distribution[stratum - 1] / params.income_distribution[reference - 1];
}

double contact_spend(int stratum, const Parameters& params)
{
    return params.spend_per_contact * (params.minimum_expense / hours_per_month) * stratum_ratio(stratum, 3, params);
}

double business_contact(Person& buyer, House* house, Business& seller, const Parameters& params)
{
    const double amount = contact_spend(buyer.stratum, params);
    if (buyer.wealth >= amount) {
        buyer.wealth -= amount;
    }
    else if (house != nullptr && house->wealth >= amount) {
        house->wealth -= amount;
    }
    else {
        return 0.0;
    }
    seller.wealth += amount;
    seller.gross_income += amount;
    return amount;
}

double daily_fixed_expense(std::size_t heads, int stratum, const Parameters& params)
{
    return static_cast<double>(heads) * params.minimum_expense * stratum_ratio(stratum, 3, params) / 30.0;
}

double salary(int stratum, const Parameters& params)
{
    return params.minimum_income * stratum_ratio(stratum, 1, params);
}

bool receives_aid(const Person& person, const Parameters& params)
{
    if (!person.is_alive()) {
        return false;
    }
    return person.is_homeless() || (!person.is_employed() && in_eap(person.age, params));
}

namespace
{

template <class Group>
std::size_t living(const Group& indices, const std::vector<Person>& persons)
{
    return static_cast<std::size_t>(std::count_if(indices.begin(), indices.end(), [&](std::size_t i) {
        return persons[i].is_alive();
    }));
}

void pay_business(WorldState& world, double amount)
{
    // Always draw, so routing consumes the stream identically whatever the amount.
    auto& target = world.businesses[world.economy_rng.index(world.businesses.size())];
    target.wealth += amount;
    target.gross_income += amount;
}

} // namespace

void daily_expenses(WorldState& world)
{
    const auto& params = world.params;
    if (world.businesses.empty()) {
        return;
    }
    for (auto& house : world.houses) {
        const auto heads    = living(house.members, world.persons);
        const double amount = daily_fixed_expense(heads, house.stratum, params);
        if (heads > 0) {
            const double share = amount / static_cast<double>(heads);
            for (auto i : house.members) {
                auto& member = world.persons[i];
                if (!member.is_alive()) {
                    continue;
                }
                const double paid = std::clamp(member.wealth, 0.0, share);
                member.wealth -= paid;
                house.wealth += paid;
                house.gross_income += paid;
            }
        }
        house.wealth -= amount;
        house.expenses_paid += amount;
        pay_business(world, amount);
    }
    for (std::size_t k = 0; k < world.businesses.size(); ++k) {
        auto& business      = world.businesses[k];
        const double amount = daily_fixed_expense(living(business.employees, world.persons), business.stratum, params);
        business.wealth -= amount;
        pay_business(world, amount);
    }
}

AccountingSummary monthly_accounting(WorldState& world)
{
    const auto& params = world.params;
    AccountingSummary summary;

    for (auto& house : world.houses) {
        const double tax = params.tax_rate * house.gross_income;
        house.wealth -= tax;
        world.government.wealth += tax;
        summary.taxes += tax;
        house.gross_income = 0.0;
    }
    for (auto& business : world.businesses) {
        const double tax = params.tax_rate * business.gross_income;
        business.wealth -= tax;
        world.government.wealth += tax;
        summary.taxes += tax;
        business.gross_income = 0.0;
    }

    std::vector<double> wages(world.persons.size(), 0.0);
    std::vector<double> household_wages(world.houses.size(), 0.0);
    for (auto& business : world.businesses) {
        for (auto i : business.employees) {
            auto& employee = world.persons[i];
            if (!employee.is_alive()) {
                continue;
            }
            const double pay = salary(employee.stratum, params);
            business.wealth -= pay;
            employee.wealth += pay;
            summary.salaries += pay;
            wages[i] = pay;
            if (employee.house) {
                household_wages[*employee.house] += pay;
            }
        }
    }

    // Wage earners hand the part of the household wages not already spent on fixed
    // expenses to the house, which settles it with one supplier.
    if (!world.businesses.empty()) {
        for (std::size_t h = 0; h < world.houses.size(); ++h) {
            auto& house         = world.houses[h];
            const double amount = std::max(0.0, household_wages[h] - house.expenses_paid);
            if (amount > 0.0) {
                for (auto i : house.members) {
                    world.persons[i].wealth -= amount * wages[i] / household_wages[h];
                }
            }
            pay_business(world, amount);
            summary.suppliers += amount;
        }
    }
    for (auto& house : world.houses) {
        house.expenses_paid = 0.0;
    }

    const double care = params.healthcare_fixed_expense +
                        params.hospital_cost_per_patient_day * static_cast<double>(world.healthcare.patient_days);
    world.government.wealth -= care;
    world.healthcare.wealth += care;
    world.healthcare.patient_days = 0;
    summary.healthcare = care;

    for (auto& person : world.persons) {
        if (receives_aid(person, params)) {
            world.government.wealth -= params.minimum_income;
            person.wealth += params.minimum_income;
            summary.aid += params.minimum_income;
        }
    }
    return summary;
}

} // namespace cabm
