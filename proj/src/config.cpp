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
#include "cabm/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cabm
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const Setting& s, const std::string& why)
{
    throw std::invalid_argument(s.origin + ": " + s.key + " = '" + s.value + "': " + why);
}

template <class T>
T parse_number(const Setting& s, std::string_view text)
{
    text = trim(text);
    T v{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec]  = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        bad_value(s, "not a valid number");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) {
            bad_value(s, "not a finite number");
        }
    }
    return v;
}

template <std::size_t N>
std::array<double, N> parse_list(const Setting& s)
{
    std::array<double, N> out{};
    std::string_view rest = s.value;
    for (std::size_t k = 0; k < N; ++k) {
        const auto comma = rest.find(',');
        if ((comma == std::string_view::npos) != (k + 1 == N)) {
            bad_value(s, "expected " + std::to_string(N) + " comma separated values");
        }
        out[k] = parse_number<double>(s, rest.substr(0, comma));
        rest   = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return out;
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

template <std::size_t N>
std::string format_list(const std::array<double, N>& values)
{
    std::string out;
    for (std::size_t k = 0; k < N; ++k) {
        out += (k ? "," : "") + format_double(values[k]);
    }
    return out;
}

struct Field {
    std::string_view key;
    std::function<void(Parameters&, const Setting&)> set;
    std::function<std::string(const Parameters&)> get;
};

template <class T>
Field scalar(std::string_view key, T Parameters::*member)
{
    return {key,
            [member](Parameters& p, const Setting& s) {
                p.*member = parse_number<T>(s, s.value);
            },
            [member](const Parameters& p) {
                if constexpr (std::is_floating_point_v<T>) {
                    return format_double(p.*member);
                }
                else {
                    return std::to_string(p.*member);
                }
            }};
}

template <std::size_t N>
Field table(std::string_view key, std::array<double, N> Parameters::*member)
{
    return {key,
            [member](Parameters& p, const Setting& s) {
                p.*member = parse_list<N>(s);
            },
            [member](const Parameters& p) {
                return format_list(p.*member);
            }};
}

Field day_bound(std::string_view key, DayRange Parameters::*range, int DayRange::*bound)
{
    return {key,
            [=](Parameters& p, const Setting& s) {
                (p.*range).*bound = parse_number<int>(s, s.value);
            },
            [=](const Parameters& p) {
                return std::to_string((p.*range).*bound);
            }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> all = {
        scalar("height", &Parameters::height),
        scalar("width", &Parameters::width),
        scalar("population_size", &Parameters::population_size),
        scalar("age_shape_a", &Parameters::age_shape_a),
        scalar("age_shape_b", &Parameters::age_shape_b),
        scalar("family_size", &Parameters::family_size),
        scalar("mobility", &Parameters::mobility),
        scalar("homeless_rate", &Parameters::homeless_rate),
        scalar("position_noise", &Parameters::position_noise),
        scalar("contagion_distance", &Parameters::contagion_distance),
        scalar("contagion_probability", &Parameters::contagion_probability),
        day_bound("incubation_time_min", &Parameters::incubation_time, &DayRange::min),
        day_bound("incubation_time_max", &Parameters::incubation_time, &DayRange::max),
        day_bound("transmission_time_min", &Parameters::transmission_time, &DayRange::min),
        day_bound("transmission_time_max", &Parameters::transmission_time, &DayRange::max),
        scalar("recovering_time", &Parameters::recovering_time),
        table("hospitalization_rate", &Parameters::hospitalization_rate),
        table("severe_rate", &Parameters::severe_rate),
        table("death_rate", &Parameters::death_rate),
        scalar("initial_infected", &Parameters::initial_infected),
        scalar("initial_immune", &Parameters::initial_immune),
        scalar("critical_limit", &Parameters::critical_limit),
        table("income_distribution", &Parameters::income_distribution),
        scalar("formal_business_rate", &Parameters::formal_business_rate),
        scalar("total_gdp", &Parameters::total_gdp),
        scalar("public_gdp_share", &Parameters::public_gdp_share),
        scalar("business_gdp_share", &Parameters::business_gdp_share),
        {"personal_gdp_share", nullptr,
         [](const Parameters& p) {
             return format_double(p.personal_gdp_share());
         }},
        scalar("minimum_income", &Parameters::minimum_income),
        scalar("minimum_expense", &Parameters::minimum_expense),
        scalar("unemployment_rate", &Parameters::unemployment_rate),
        scalar("informal_business_rate", &Parameters::informal_business_rate),
        scalar("eap_min_age", &Parameters::eap_min_age),
        scalar("eap_max_age", &Parameters::eap_max_age),
        scalar("tax_rate", &Parameters::tax_rate),
        scalar("spend_per_contact", &Parameters::spend_per_contact),
        scalar("hospital_cost_per_patient_day", &Parameters::hospital_cost_per_patient_day),
        scalar("healthcare_fixed_expense", &Parameters::healthcare_fixed_expense),
        scalar("capacity_fatality_multiplier", &Parameters::capacity_fatality_multiplier),
    };
    return all;
}

const Field* find_field(std::string_view key)
{
    for (const auto& f : fields()) {
        if (f.key == key) {
            return &f;
        }
    }
    return nullptr;
}

} // namespace

std::vector<std::string_view> parameter_keys()
{
    std::vector<std::string_view> keys;
    for (const auto& f : fields()) {
        keys.push_back(f.key);
    }
    return keys;
}

std::vector<Setting> parse_settings(std::istream& in, std::string_view source)
{
    std::vector<Setting> out;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto origin = std::string(source) + ":" + std::to_string(number);
        const auto eq     = text.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(origin + ": expected key = value");
        }
        Setting s{std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))), origin};
        if (s.key.empty()) {
            throw std::invalid_argument(origin + ": empty key");
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Setting> read_settings(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + path.string());
    }
    return parse_settings(in, path.string());
}

Setting parse_assignment(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || trim(text.substr(0, eq)).empty()) {
        throw std::invalid_argument("--param '" + std::string(text) + "': expected key=value");
    }
    return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))), "--param"};
}

Parameters apply_settings(Parameters params, std::span<const Setting> settings)
{
    std::optional<Setting> personal;
    for (const auto& s : settings) {
        const auto* field = find_field(s.key);
        if (field == nullptr) {
            throw std::invalid_argument(s.origin + ": unknown parameter '" + s.key + "'");
        }
        if (!field->set) {
            parse_number<double>(s, s.value);
            personal = s;
            continue;
        }
        field->set(params, s);
    }
    if (personal) {
        const double given = parse_number<double>(*personal, personal->value);
        if (std::abs(given - params.personal_gdp_share()) > 1e-9) {
            bad_value(*personal, "must equal 1 - public_gdp_share - business_gdp_share = " +
                                     format_double(params.personal_gdp_share()));
        }
    }
    params.validate();
    return params;
}

std::vector<double> parse_values(std::string_view text)
{
    const Setting s{"--values", std::string(text), "sweep"};
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        const auto first = text.find(':');
        const auto last  = text.rfind(':');
        if (first == last) {
            bad_value(s, "expected lo:hi:step");
        }
        const double lo   = parse_number<double>(s, text.substr(0, first));
        const double hi   = parse_number<double>(s, text.substr(first + 1, last - first - 1));
        const double step = parse_number<double>(s, text.substr(last + 1));
        if (!(step > 0.0) || hi < lo) {
            bad_value(s, "need lo <= hi and a positive step");
        }
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long k = 0; k < count; ++k) {
            // Rounded to 12 decimals so 0.3 + 3 * 0.1 prints and compares as 0.6.
            values.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
        }
    }
    else {
        std::string_view rest = text;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            values.push_back(parse_number<double>(s, rest.substr(0, comma)));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    if (values.empty()) {
        bad_value(s, "no values");
    }
    return values;
}

std::string format_parameters(const Parameters& params)
{
    std::ostringstream out;
    for (const auto& f : fields()) {
        out << f.key << " = " << f.get(params) << '\n';
    }
    return out.str();
}

} // namespace cabm
