#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onell/trace.hpp"

namespace onell {

/// Summary of a runtime distribution.
struct RunStats {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;     // sample standard deviation (divisor count-1; 0 for a single sample)
    double q20 = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double q98 = 0.0;
    double rsd = 0.0;    // percent
    double normalized_mean = 0.0;   // mean / n
};

/// Quantile of sorted data by linear interpolation at position q*(size-1).
double quantile_sorted(std::span<const double> sorted, double q);

RunStats summarize(std::span<const double> samples, int n);
RunStats summarize(std::span<const std::int64_t> samples, int n);

/// Generalized success rate 1 - ln(b)/ln(A) of the update rule; lambda is stationary
/// when one iteration in that many succeeds.
double success_rate(double A, double b);

/// Reference schedule sqrt(n / (n - fitness)).
double lambda_star(int n, int fitness);

/// Finite-difference slope of avg_evals over consecutive targets.
struct GradientCurve {
    std::vector<int> targets;
    std::vector<double> values;

    std::optional<double> at(int target) const;
};

constexpr int default_gradient_window = 25;

/// Centered differences (one-sided at the ends) of avg_evals over the targets hit by at
/// least one run, smoothed by a centered moving average of `window` targets.
GradientCurve ft_gradient(const FixedTargetTable& table, int window = default_gradient_window);

enum class CrossingMode { FirstHit, Gradient };

/// Smallest shared target v such that `a` is at most `b` on every shared target >= v.
std::optional<int> ft_crossing(const FixedTargetTable& a, const FixedTargetTable& b, CrossingMode mode,
    int window = default_gradient_window);

struct TestReport {
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> significant_at;   // subset of {0.05, 0.01, 0.001}
    bool degenerate = false;              // zero-variance or all-zero differences
    double mean_difference = 0.0;         // mean of a - b
};

/// Two-sided paired Student t-test on a - b.
TestReport paired_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided Wilcoxon signed-rank test on a - b. Zero differences are dropped; the
/// statistic is min(W+, W-). Exact null distribution below 20 nonzero pairs, normal
/// approximation with tie correction from 20 on.
TestReport wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

} // namespace onell
