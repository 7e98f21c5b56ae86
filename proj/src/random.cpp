#include "onell/random.hpp"

namespace onell {

std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(master + mix64(index + 1));
}

std::int64_t RandomSource::binomial(std::int64_t trials, double p)
{
    if (trials <= 0 || p <= 0.0)
        return 0;
    if (p >= 1.0)
        return trials;
    // small trial counts are cheaper as explicit coin flips
    if (trials <= 16) {
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < trials; ++i)
            k += bernoulli(p) ? 1 : 0;
        return k;
    }
    return std::binomial_distribution<std::int64_t>(trials, p)(engine_);
}

} // namespace onell
