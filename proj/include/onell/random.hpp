#pragma once

#include <cstdint>
#include <random>

namespace onell {

/// One SplitMix64 step: the finalizer applied to z + 0x9e3779b97f4a7c15. Bijective.
std::uint64_t mix64(std::uint64_t z);

/// Seed of run `index` under `master`: mix64(master + mix64(index + 1)).
/// Distinct indices give distinct seeds for a fixed master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Explicit source of randomness. Identical seeds yield identical streams within one build.
/// Not thread-safe; give each concurrent run its own instance.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return engine_; }

    /// Child source for run `index`, independent of this source's state.
    RandomSource child(std::uint64_t index) const { return RandomSource(derive_seed(seed_, index)); }

    /// Uniform in [0, 1).
    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    /// Uniform in [0, bound).
    std::int64_t below(std::int64_t bound)
    {
        return std::uniform_int_distribution<std::int64_t>(0, bound - 1)(engine_);
    }
    bool coin() { return (engine_() >> 63) != 0; }
    bool bernoulli(double p) { return uniform01() < p; }
    std::int64_t binomial(std::int64_t trials, double p);
    double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(engine_); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace onell
