#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "onell/genome.hpp"
#include "onell/random.hpp"

namespace onell {

/// Nearest integer; exact halves round up.
std::int64_t nint(double r);

/// Binomial distribution conditioned on a positive outcome.
class ConditionalBinomial {
public:
    ConditionalBinomial(int n, double p);

    int n() const { return n_; }
    double p() const { return p_; }

    /// C(n,k) p^k (1-p)^(n-k) / (1 - (1-p)^n) for 1 <= k <= n, zero elsewhere.
    double pmf(int k) const;
    double mean() const;

    int sample(RandomSource& rng) const;

private:
    int n_;
    double p_;
};

/// Draws from Bin>0(n, p) by rejecting zeros of the plain binomial.
int sample_bin_gt0(int n, double p, RandomSource& rng);

/// Number of marked items in `draws` draws without replacement from `population`
/// items of which `marked` are marked. Setup costs a few lgamma calls; each draw walks
/// the support outward from the mode, O(standard deviation) steps.
class HypergeometricSampler {
public:
    HypergeometricSampler(std::int64_t population, std::int64_t marked, std::int64_t draws);

    std::int64_t operator()(RandomSource& rng) const;

private:
    double population_, marked_, draws_;
    std::int64_t lo_, hi_, mode_;
    double p_mode_ = 1.0;
};

std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t marked, std::int64_t draws,
    RandomSource& rng);

/// Binomial(trials, p) by inverse transform over a precomputed CDF; meant for many
/// draws with fixed parameters. Falls back to std::binomial_distribution when the
/// table would underflow.
class BinomialSampler {
public:
    BinomialSampler(std::int64_t trials, double p);

    std::int64_t operator()(RandomSource& rng) const;

private:
    std::int64_t trials_;
    double p_;
    bool mirrored_ = false;
    std::vector<double> cdf_;
};

/// Flips exactly `ell` positions chosen uniformly among all C(n, ell) subsets.
BitString mutate_exact(const BitString& x, int ell, RandomSource& rng);

/// Takes each position from `xp` with probability c, from `x` otherwise.
BitString crossover_biased(const BitString& x, const BitString& xp, double c, RandomSource& rng);

/// Index of a maximum entry, uniform among ties.
std::size_t best_of_uar(std::span<const Fitness> fitness, RandomSource& rng);

/// Streaming counterpart of best_of_uar: reservoir-style tie-breaking gives every
/// tied maximum the same probability of being the one held at the end.
class UniformArgmax {
public:
    /// Offers a candidate; returns true if it becomes the held one.
    bool offer(Fitness f, RandomSource& rng)
    {
        if (ties_ == 0 || f > best_) {
            best_ = f;
            ties_ = 1;
            return true;
        }
        if (f == best_) {
            ++ties_;
            return rng.below(ties_) == 0;
        }
        return false;
    }

    bool empty() const { return ties_ == 0; }
    Fitness best() const { return best_; }

private:
    Fitness best_ = 0;
    std::int64_t ties_ = 0;
};

} // namespace onell
