#include "onell/trace.hpp"

#include <stdexcept>

namespace onell {

TraceSink::TraceSink(int n)
    : n_(n)
    , first_hit_(static_cast<std::size_t>(n + 1), -1)
    , lambda_(static_cast<std::size_t>(n + 1), 0)
{
    if (n < 1)
        throw DomainError("TraceSink: n must be positive");
}

void TraceSink::record_hit(Fitness fitness, std::int64_t evaluations, int lambda1)
{
    if (fitness < 0 || fitness > n_)
        throw DomainError("TraceSink: fitness out of range");
    for (int v = reached_ + 1; v <= fitness; ++v) {
        first_hit_[static_cast<std::size_t>(v)] = evaluations;
        lambda_[static_cast<std::size_t>(v)] = lambda1;
    }
    if (fitness > reached_)
        reached_ = fitness;
}

std::optional<std::int64_t> TraceSink::first_hit(int target) const
{
    if (target < 0 || target > reached_)
        return std::nullopt;
    return first_hit_[static_cast<std::size_t>(target)];
}

std::optional<int> TraceSink::lambda_at_hit(int target) const
{
    if (target < 0 || target > reached_)
        return std::nullopt;
    return lambda_[static_cast<std::size_t>(target)];
}

FixedTargetTable aggregate_fixed_target(std::span<const TraceSink> traces, int n)
{
    if (traces.empty())
        throw std::invalid_argument("aggregate_fixed_target: no traces");

    FixedTargetTable table;
    table.n = n;
    table.runs = static_cast<int>(traces.size());
    table.rows.resize(static_cast<std::size_t>(n + 1));

    std::vector<double> eval_sum(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> lambda_sum(static_cast<std::size_t>(n + 1), 0.0);
    for (const auto& trace : traces) {
        if (trace.n() != n)
            throw DimensionError("aggregate_fixed_target: traces of different dimension");
        for (int v = 0; v <= trace.reached(); ++v) {
            const auto i = static_cast<std::size_t>(v);
            eval_sum[i] += static_cast<double>(*trace.first_hit(v));
            lambda_sum[i] += *trace.lambda_at_hit(v);
            ++table.rows[i].hit_count;
        }
    }
    for (int v = 0; v <= n; ++v) {
        auto& row = table.rows[static_cast<std::size_t>(v)];
        row.target = v;
        if (row.hit_count > 0) {
            row.avg_evals = eval_sum[static_cast<std::size_t>(v)] / row.hit_count;
            row.avg_lambda1 = lambda_sum[static_cast<std::size_t>(v)] / row.hit_count;
        }
    }
    return table;
}

} // namespace onell
