#include "onell/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace onell {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body)
{
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next {0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const auto i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                    return;
                }
            }
        });
    }
    for (auto& t : workers)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, unsigned jobs)
{
    if (spec.runs < 1)
        throw ConfigError("runs must be at least 1");
    validate(spec.algorithm, spec.n);
    if (spec.budget < 1)
        throw ConfigError("budget must be at least 1");

    std::vector<RunRecord> records(static_cast<std::size_t>(spec.runs));
    RunObserver observer;
    observer.trace = spec.trace;
    parallel_for(records.size(), jobs, [&](std::size_t i) {
        const auto seed = derive_seed(spec.master_seed, i);
        RandomSource rng(seed);
        records[i] = {seed, run_algorithm(spec.algorithm, spec.n, spec.budget, rng, observer)};
    });
    return records;
}

std::vector<double> evaluations_of(const std::vector<RunRecord>& records)
{
    std::vector<double> evals;
    evals.reserve(records.size());
    for (const auto& r : records)
        evals.push_back(static_cast<double>(r.result.evaluations));
    return evals;
}

RunStats summarize_runs(const std::vector<RunRecord>& records, int n)
{
    const auto evals = evaluations_of(records);
    return summarize(std::span<const double>(evals), n);
}

FixedTargetTable fixed_target_table(const std::vector<RunRecord>& records, int n)
{
    std::vector<TraceSink> traces;
    traces.reserve(records.size());
    for (const auto& r : records) {
        if (!r.result.trace)
            throw std::invalid_argument("fixed_target_table: runs were executed without tracing");
        traces.push_back(*r.result.trace);
    }
    return aggregate_fixed_target(traces, n);
}

} // namespace onell
