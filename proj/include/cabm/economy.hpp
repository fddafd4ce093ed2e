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
#ifndef CABM_ECONOMY_HPP
#define CABM_ECONOMY_HPP

#include "cabm/core.hpp"
#include "cabm/world.hpp"

#include <cstddef>

namespace cabm
{

/// Ratio of a quintile's income share to the reference quintile's share (quintiles are 1-based).
double stratum_ratio(int stratum, int reference, const Parameters& params);

/// Amount spent by a buyer of the given stratum in one business contact.
double contact_spend(int stratum, const Parameters& params);

/**
 * Purchase of a free-walking person from a business in contact. Paid from the person's
 * wealth if it covers the amount, otherwise from the house's wealth, otherwise skipped.
 * Returns the amount transferred.
 */
double business_contact(Person& buyer, House* house, Business& seller, const Parameters& params);

/// Fixed daily expense of a household or business with the given head count and stratum.
double daily_fixed_expense(std::size_t heads, int stratum, const Parameters& params);

/// Monthly salary of an employee of the given stratum.
double salary(int stratum, const Parameters& params);

/// Whether the government pays monthly aid to this person (alive and homeless or unemployed).
bool receives_aid(const Person& person, const Parameters& params);

/**
 * Daily check-in and fixed expenses.
 *
 * Living housemates first pay their equal share of the house's expense into the house
 * (limited to what they hold). Each house and each business then pays its fixed expense to
 * one uniformly drawn business. Houses and businesses may go into debt.
 */
void daily_expenses(WorldState& world);

/// Amounts moved by one accounting event.
struct AccountingSummary {
    double taxes      = 0.0;
    double salaries   = 0.0;
    double suppliers  = 0.0;
    double healthcare = 0.0;
    double aid        = 0.0;
};

/**
 * Monthly accounting, in order: taxes on the gross income of houses and businesses to the
 * government; salaries from businesses to living employees; supplier payments from each
 * house to one uniformly drawn business; government funding of the healthcare system
 * (fixed expense plus cost of the admitted patient-days); government aid.
 *
 * A house's supplier payment is the wage income its members received at this accounting
 * net of the fixed expenses the house already paid during the month, floored at zero. The
 * wage earners fund it in proportion to their salaries.
 */
AccountingSummary monthly_accounting(WorldState& world);

} // namespace cabm

#endif // CABM_ECONOMY_HPP
