#pragma once

// Statistical property checks shared by the unit tests (small samples) and the
// acceptance binary (full sample sizes).

#include <cstdint>
#include <string>
#include <vector>

#include "onell/algorithms.hpp"
#include "onell/tuning.hpp"

namespace onell::testing {

struct Check {
    bool pass = false;
    std::string detail;
};

/// Chi-square goodness of fit of sample_bin_gt0(n, p) against the analytic pmf at level alpha.
Check bin_gt0_fit(int n, double p, int samples, std::uint64_t seed, double alpha = 0.001);
/// Chi-square fit of the hypergeometric and binomial table samplers against exact pmfs.
Check hypergeometric_fit(int population, int marked, int draws, int samples, std::uint64_t seed);
Check binomial_table_fit(int trials, double p, int samples, std::uint64_t seed);
/// hamming(x, mutate_exact(x, l)) == l on `calls` random (n, l, x).
Check mutate_radius(int calls, std::uint64_t seed);
/// Position pairs chosen by mutate_exact(n = 4, l = 2) are uniform over the 6 pairs.
Check mutate_pairs_uniform(int samples, std::uint64_t seed);
/// crossover_biased keeps every position where the parents agree, for all parent pairs
/// of every length up to max_n.
Check crossover_fixed_positions(int max_n, std::uint64_t seed);
/// best_of_uar tie frequencies within 3 standard deviations of uniform.
Check best_of_uar_ties(int draws, std::uint64_t seed);

/// Two-sample KS test at level 0.001 between run_dyn and the straight-line reference.
Check dyn_matches_reference(const DynConfig& cfg, int n, int runs, std::uint64_t seed);

} // namespace onell::testing

namespace onell::testing {

struct SyntheticOutcome {
    bool within = false;
    std::vector<double> best;
    std::int64_t consumed = 0;
};

/// Tunes a noisy convex bowl with known optimum (0.3, 0.7, 12) over two real and one
/// integer parameter. Success means every coordinate lies within 10% of its range.
SyntheticOutcome synthetic_tuning(std::uint64_t seed, std::int64_t budget);

} // namespace onell::testing
