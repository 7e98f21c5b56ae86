#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onell/genome.hpp"

namespace onell {

/// Fixed-target instrumentation of a single run. For every target v in [0, n] it keeps
/// the evaluation count at which the parent first reached f(x) >= v, and lambda1 of
/// the iteration that produced that parent. Entries are written once.
class TraceSink {
public:
    explicit TraceSink(int n);

    int n() const { return n_; }

    /// Fills every target in (best recorded, fitness] that is still empty.
    void record_hit(Fitness fitness, std::int64_t evaluations, int lambda1);

    std::optional<std::int64_t> first_hit(int target) const;
    std::optional<int> lambda_at_hit(int target) const;
    /// Highest target recorded so far, or -1.
    int reached() const { return reached_; }

private:
    int n_;
    int reached_ = -1;
    std::vector<std::int64_t> first_hit_;
    std::vector<int> lambda_;
};

struct FixedTargetRow {
    int target = 0;
    double avg_evals = 0.0;   // over runs that hit the target
    int hit_count = 0;
    double avg_lambda1 = 0.0;
};

struct FixedTargetTable {
    int n = 0;
    int runs = 0;
    std::vector<FixedTargetRow> rows;   // one per target 0..n

    const FixedTargetRow& at(int target) const { return rows.at(static_cast<std::size_t>(target)); }
};

FixedTargetTable aggregate_fixed_target(std::span<const TraceSink> traces, int n);

} // namespace onell
