#include "onell/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace onell {

std::int64_t nint(double r)
{
    if (!(r >= 0.0))
        throw DomainError("nint: argument must be nonnegative");
    const double lower = std::floor(r);
    return static_cast<std::int64_t>(r - lower < 0.5 ? lower : std::ceil(r));
}

namespace {

void check_probability(double p, const char* what)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError(std::string(what) + ": probability must lie in (0, 1)");
}

double log_choose(double n, double k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

ConditionalBinomial::ConditionalBinomial(int n, double p) : n_(n), p_(p)
{
    if (n < 1)
        throw DomainError("Bin>0: n must be positive");
    check_probability(p, "Bin>0");
}

double ConditionalBinomial::pmf(int k) const
{
    if (k < 1 || k > n_)
        return 0.0;
    const double log_term = log_choose(n_, k) + k * std::log(p_) + (n_ - k) * std::log1p(-p_);
    // 1 - (1-p)^n without cancellation
    const double positive_mass = -std::expm1(n_ * std::log1p(-p_));
    return std::exp(log_term) / positive_mass;
}

double ConditionalBinomial::mean() const
{
    return n_ * p_ / -std::expm1(n_ * std::log1p(-p_));
}

int ConditionalBinomial::sample(RandomSource& rng) const
{
    for (;;) {
        const auto ell = rng.binomial(n_, p_);
        if (ell > 0)
            return static_cast<int>(ell);
    }
}

int sample_bin_gt0(int n, double p, RandomSource& rng)
{
    return ConditionalBinomial(n, p).sample(rng);
}

HypergeometricSampler::HypergeometricSampler(std::int64_t population, std::int64_t marked, std::int64_t draws)
    : population_(static_cast<double>(population))
    , marked_(static_cast<double>(marked))
    , draws_(static_cast<double>(draws))
{
    if (population < 0 || marked < 0 || draws < 0 || marked > population || draws > population)
        throw DomainError("hypergeometric: invalid parameters");
    lo_ = std::max<std::int64_t>(0, draws - (population - marked));
    hi_ = std::min(draws, marked);
    mode_ = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor((draws_ + 1.0) * (marked_ + 1.0) / (population_ + 2.0))), lo_, hi_);
    if (lo_ < hi_) {
        const double k = static_cast<double>(mode_);
        p_mode_ = std::exp(log_choose(marked_, k) + log_choose(population_ - marked_, draws_ - k)
            - log_choose(population_, draws_));
    }
}

std::int64_t HypergeometricSampler::operator()(RandomSource& rng) const
{
    if (lo_ == hi_)
        return lo_;

    // Inverse transform over the support visited outward from the mode; any fixed
    // enumeration order gives an exact sampler.
    const double u = rng.uniform01();
    double acc = p_mode_;
    if (u < acc)
        return mode_;

    const double N = population_, K = marked_, d = draws_;
    std::int64_t up = mode_, down = mode_;
    double p_up = p_mode_, p_down = p_mode_;
    while (up < hi_ || down > lo_) {
        if (up < hi_) {
            // pmf(k+1)/pmf(k) = (K-k)(d-k) / ((k+1)(N-K-d+k+1))
            const double k = static_cast<double>(up);
            p_up *= (K - k) * (d - k) / ((k + 1.0) * (N - K - d + k + 1.0));
            ++up;
            acc += p_up;
            if (u < acc)
                return up;
        }
        if (down > lo_) {
            const double k = static_cast<double>(down);
            p_down *= k * (N - K - d + k) / ((K - k + 1.0) * (d - k + 1.0));
            --down;
            acc += p_down;
            if (u < acc)
                return down;
        }
    }
    // u fell into the rounding slack above the accumulated mass
    return mode_;
}

std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t marked, std::int64_t draws,
    RandomSource& rng)
{
    return HypergeometricSampler(population, marked, draws)(rng);
}

BinomialSampler::BinomialSampler(std::int64_t trials, double p) : trials_(trials), p_(p)
{
    if (trials < 0 || !(p >= 0.0 && p <= 1.0))
        throw DomainError("binomial: invalid parameters");
    if (trials == 0 || p == 0.0 || p == 1.0)
        return;
    if (p > 0.5) {
        mirrored_ = true;
        p = 1.0 - p;
    }
    const double log_q0 = static_cast<double>(trials) * std::log1p(-p);
    if (log_q0 < -600.0)
        return;
    cdf_.resize(static_cast<std::size_t>(trials + 1));
    double pmf = std::exp(log_q0);
    const double odds = p / (1.0 - p);
    double acc = 0.0;
    for (std::int64_t k = 0; k <= trials; ++k) {
        acc += pmf;
        cdf_[static_cast<std::size_t>(k)] = acc;
        pmf *= odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    }
}

std::int64_t BinomialSampler::operator()(RandomSource& rng) const
{
    if (trials_ == 0 || p_ == 0.0)
        return 0;
    if (p_ == 1.0)
        return trials_;
    if (cdf_.empty())
        return rng.binomial(trials_, p_);
    const double u = rng.uniform01() * cdf_.back();
    const auto k = static_cast<std::int64_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    const auto draw = std::min(k, trials_);
    return mirrored_ ? trials_ - draw : draw;
}

BitString mutate_exact(const BitString& x, int ell, RandomSource& rng)
{
    const int n = x.size();
    if (ell < 1 || ell > n)
        throw DomainError("mutate_exact: radius must lie in [1, n]");
    std::vector<int> positions(static_cast<std::size_t>(n));
    std::iota(positions.begin(), positions.end(), 0);
    BitString y = x;
    // partial Fisher-Yates: the first ell slots end up a uniform ell-subset
    for (int i = 0; i < ell; ++i) {
        const auto j = i + static_cast<int>(rng.below(n - i));
        std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
        y.flip(positions[static_cast<std::size_t>(i)]);
    }
    return y;
}

BitString crossover_biased(const BitString& x, const BitString& xp, double c, RandomSource& rng)
{
    if (x.size() != xp.size())
        throw DimensionError("crossover_biased: length mismatch");
    check_probability(c, "crossover_biased");
    BitString y = x;
    for (int i = 0; i < x.size(); ++i)
        if (rng.bernoulli(c))
            y.set(i, xp[i]);
    return y;
}

std::size_t best_of_uar(std::span<const Fitness> fitness, RandomSource& rng)
{
    if (fitness.empty())
        throw std::invalid_argument("best_of_uar: empty candidate list");
    const Fitness best = *std::max_element(fitness.begin(), fitness.end());
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < fitness.size(); ++i)
        if (fitness[i] == best)
            ties.push_back(i);
    return ties[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(ties.size())))];
}

} // namespace onell
