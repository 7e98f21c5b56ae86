#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "onell/algorithms.hpp"
#include "onell/analysis.hpp"

namespace onell {

constexpr std::int64_t default_budget = 150000;

/// Calls body(i) for i in [0, count) on up to `jobs` threads. Bodies must not share
/// mutable state; the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

/// A batch of independent runs of one algorithm.
struct ExperimentSpec {
    AlgorithmSpec algorithm = DynConfig {};
    int n = 1000;
    int runs = 1;
    std::int64_t budget = default_budget;
    std::uint64_t master_seed = 1;
    bool trace = false;
};

struct RunRecord {
    std::uint64_t seed = 0;
    RunResult result;
};

/// Executes spec.runs runs; run i uses derive_seed(master_seed, i). Output is ordered by
/// run index whatever the job count.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, unsigned jobs = 1);

std::vector<double> evaluations_of(const std::vector<RunRecord>& records);

/// Statistics over all runs (unsuccessful runs count with their evaluations).
RunStats summarize_runs(const std::vector<RunRecord>& records, int n);

FixedTargetTable fixed_target_table(const std::vector<RunRecord>& records, int n);

} // namespace onell
