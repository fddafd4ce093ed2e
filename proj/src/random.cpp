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
#include "cabm/random.hpp"

namespace cabm
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto k : keys) {
        h = splitmix64(h ^ splitmix64(k));
    }
    return h;
}

double RandomStream::beta(double a, double b)
{
    double x = std::gamma_distribution<double>(a, 1.0)(m_engine);
    double y = std::gamma_distribution<double>(b, 1.0)(m_engine);
    if (x + y == 0.0) {
        return 0.5;
    }
    return x / (x + y);
}

} // namespace cabm
