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
#ifndef CABM_RANDOM_HPP
#define CABM_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cabm
{

/// Mix a list of integers into one 64 bit seed (splitmix64 finalizer chained over the inputs).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys);

/// Labels of the independent streams a run draws from.
enum class StreamPurpose : std::uint64_t
{
    Structure = 1, ///< world construction
    Seeding   = 2, ///< initial infected/immune selection
    Movement  = 3, ///< per-person movement noise
    Health    = 4, ///< per-person contagion and disease draws
    Economy   = 5, ///< routing of expenses and supplier payments
};

/**
 * A seeded pseudo random stream with the handful of draws the model needs.
 *
 * Copyable; a copy continues the same sequence independently.
 */
class RandomStream
{
public:
    RandomStream() = default;
    explicit RandomStream(std::uint64_t seed)
        : m_engine(seed)
    {
    }

    /// Uniform in [0, 1).
    double uniform()
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(m_engine);
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in the closed interval [lo, hi].
    int uniform_int(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(m_engine);
    }

    /// Uniform index in [0, n); n must be positive.
    std::size_t index(std::size_t n)
    {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(m_engine);
    }

    double normal(double mean, double stddev)
    {
        return std::normal_distribution<double>(mean, stddev)(m_engine);
    }

    /// Beta(a, b) through the ratio of two gamma draws.
    double beta(double a, double b);

    bool bernoulli(double p)
    {
        return uniform() < p;
    }

    std::mt19937_64& engine()
    {
        return m_engine;
    }

private:
    std::mt19937_64 m_engine{0};
};

} // namespace cabm

#endif // CABM_RANDOM_HPP
