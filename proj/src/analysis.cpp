#include "onell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "onell/errors.hpp"

namespace onell {

double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty())
        throw std::invalid_argument("quantile of empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

RunStats summarize(std::span<const double> samples, int n)
{
    if (samples.empty())
        throw std::invalid_argument("summarize: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    RunStats s;
    s.count = sorted.size();
    // summing the sorted copy keeps the result independent of sample order
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : sorted)
            ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    s.q20 = quantile_sorted(sorted, 0.20);
    s.q25 = quantile_sorted(sorted, 0.25);
    s.q50 = quantile_sorted(sorted, 0.50);
    s.q75 = quantile_sorted(sorted, 0.75);
    s.q98 = quantile_sorted(sorted, 0.98);
    s.rsd = s.mean != 0.0 ? 100.0 * s.sd / s.mean : 0.0;
    s.normalized_mean = s.mean / n;
    return s;
}

RunStats summarize(std::span<const std::int64_t> samples, int n)
{
    std::vector<double> v(samples.begin(), samples.end());
    return summarize(std::span<const double>(v), n);
}

double success_rate(double A, double b)
{
    if (!(A > 1.0) || !(b > 0.0 && b < 1.0))
        throw DomainError("success_rate: requires A > 1 and 0 < b < 1");
    return 1.0 - std::log(b) / std::log(A);
}

double lambda_star(int n, int fitness)
{
    if (fitness < 0 || fitness >= n)
        throw DomainError("lambda_star: fitness must lie in [0, n)");
    return std::sqrt(static_cast<double>(n) / static_cast<double>(n - fitness));
}

std::optional<double> GradientCurve::at(int target) const
{
    if (targets.empty() || target < targets.front() || target > targets.back())
        return std::nullopt;
    return values[static_cast<std::size_t>(target - targets.front())];
}

GradientCurve ft_gradient(const FixedTargetTable& table, int window)
{
    if (window < 1)
        throw std::invalid_argument("ft_gradient: window must be at least 1");

    GradientCurve curve;
    std::vector<double> evals;
    for (const auto& row : table.rows) {
        if (row.hit_count == 0)
            break;
        curve.targets.push_back(row.target);
        evals.push_back(row.avg_evals);
    }
    const auto m = evals.size();
    if (m < 2)
        throw std::invalid_argument("ft_gradient: need at least two consecutive targets");

    std::vector<double> raw(m);
    raw.front() = evals[1] - evals[0];
    raw.back() = evals[m - 1] - evals[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i)
        raw[i] = (evals[i + 1] - evals[i - 1]) / 2.0;

    // centered moving average, truncated at the ends
    std::vector<double> prefix(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        prefix[i + 1] = prefix[i] + raw[i];
    const auto left = static_cast<std::size_t>((window - 1) / 2);
    const auto right = static_cast<std::size_t>(window / 2);
    curve.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i >= left ? i - left : 0;
        const std::size_t hi = std::min(m - 1, i + right);
        curve.values[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return curve;
}

std::optional<int> ft_crossing(const FixedTargetTable& a, const FixedTargetTable& b, CrossingMode mode,
    int window)
{
    std::vector<int> targets;
    std::vector<double> va, vb;
    if (mode == CrossingMode::FirstHit) {
        const auto rows = std::min(a.rows.size(), b.rows.size());
        for (std::size_t i = 0; i < rows; ++i) {
            if (a.rows[i].hit_count == 0 || b.rows[i].hit_count == 0)
                continue;
            targets.push_back(a.rows[i].target);
            va.push_back(a.rows[i].avg_evals);
            vb.push_back(b.rows[i].avg_evals);
        }
    } else {
        const auto ga = ft_gradient(a, window);
        const auto gb = ft_gradient(b, window);
        for (int v : ga.targets) {
            const auto y = gb.at(v);
            if (!y)
                continue;
            targets.push_back(v);
            va.push_back(*ga.at(v));
            vb.push_back(*y);
        }
    }

    std::optional<int> crossing;
    for (std::size_t i = targets.size(); i-- > 0;) {
        if (va[i] > vb[i])
            break;
        crossing = targets[i];
    }
    return crossing;
}

namespace {

void mark_levels(TestReport& r)
{
    for (double level : {0.05, 0.01, 0.001})
        if (r.p_value < level)
            r.significant_at.push_back(level);
}

std::vector<double> differences(std::span<const double> a, std::span<const double> b, std::size_t min_size)
{
    if (a.size() != b.size())
        throw DimensionError("paired test: samples differ in length");
    if (a.size() < min_size)
        throw std::invalid_argument("paired test: too few pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return d;
}

} // namespace

TestReport paired_t_test(std::span<const double> a, std::span<const double> b)
{
    const auto d = differences(a, b, 2);
    const double m = static_cast<double>(d.size());
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / m;
    double ss = 0.0;
    for (double v : d)
        ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (m - 1.0));

    TestReport r;
    r.mean_difference = mean;
    if (sd == 0.0) {
        r.degenerate = true;
        if (mean == 0.0) {
            r.statistic = 0.0;
            r.p_value = 1.0;
        } else {
            r.statistic = std::copysign(std::numeric_limits<double>::infinity(), mean);
            r.p_value = 0.0;
        }
    } else {
        r.statistic = mean / (sd / std::sqrt(m));
        const boost::math::students_t dist(m - 1.0);
        r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.statistic))));
    }
    mark_levels(r);
    return r;
}

TestReport wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b)
{
    const auto all = differences(a, b, 1);
    std::vector<double> d;
    for (double v : all)
        if (v != 0.0)
            d.push_back(v);

    TestReport r;
    r.mean_difference = std::accumulate(all.begin(), all.end(), 0.0) / static_cast<double>(all.size());
    if (d.empty()) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    if (d.size() < 5)
        throw std::invalid_argument("wilcoxon: fewer than 5 nonzero differences");

    // average ranks of |d|, kept doubled so tied ranks stay integral
    const auto m = d.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return std::fabs(d[i]) < std::fabs(d[j]); });
    std::vector<long> rank2(m);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        while (j + 1 < m && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]]))
            ++j;
        const long doubled = static_cast<long>(i + 1 + j + 1);   // 2 * average of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k)
            rank2[order[k]] = doubled;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }

    long w_plus2 = 0, total2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        total2 += rank2[i];
        if (d[i] > 0)
            w_plus2 += rank2[i];
    }
    r.statistic = static_cast<double>(std::min(w_plus2, total2 - w_plus2)) / 2.0;

    const double md = static_cast<double>(m);
    if (m < 20) {
        // exact null distribution of doubled W+ under random signs
        std::vector<double> count(static_cast<std::size_t>(total2 + 1), 0.0);
        count[0] = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            for (long s = total2; s >= rank2[i]; --s)
                count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - rank2[i])];
        const double all_patterns = std::ldexp(1.0, static_cast<int>(m));
        double lower = 0.0, upper = 0.0;
        for (long s = 0; s <= total2; ++s) {
            if (s <= w_plus2)
                lower += count[static_cast<std::size_t>(s)];
            if (s >= w_plus2)
                upper += count[static_cast<std::size_t>(s)];
        }
        r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all_patterns);
    } else {
        const double mean = md * (md + 1.0) / 4.0;
        const double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0 - tie_term / 48.0;
        const double z = (static_cast<double>(w_plus2) / 2.0 - mean) / std::sqrt(var);
        r.p_value = std::erfc(std::fabs(z) / std::sqrt(2.0));
    }
    mark_levels(r);
    return r;
}

} // namespace onell
