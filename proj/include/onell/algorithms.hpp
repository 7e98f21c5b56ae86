#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "onell/genome.hpp"
#include "onell/random.hpp"
#include "onell/trace.hpp"

namespace onell {

/// Hyper-parameters of the self-adjusting (1+(lambda,lambda)) GA:
/// p = alpha*lambda/n, lambda2 = nint(beta*lambda), c = gamma/lambda, lambda <- A*lambda on
/// failure and b*lambda on success.
struct DynConfig {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double A = std::pow(1.5, 0.25);
    double b = 2.0 / 3.0;

    /// Throws ConfigError unless alpha, beta, gamma > 0, A > 1 and 0 < b < 1.
    void validate() const;
};

/// Static (1+(lambda,lambda)) GA with p = k/n and a fixed crossover bias.
struct StaticConfig {
    int lambda1 = 1;
    int lambda2 = 1;
    int k = 1;
    double c = 0.5;
    /// Whether the best mutant x' competes with the crossover offspring for y, as in the
    /// dynamic variant. With false, y is drawn from the crossover offspring only.
    bool include_mutant = true;

    void validate(int n) const;
};

/// Randomized local search: one uniformly chosen bit flip per iteration, elitist.
struct RlsConfig { };

/// RLS until the parent reaches `target`, then the dynamic GA with lambda reset to 1.
struct SwitchConfig {
    int target = 0;
    DynConfig dyn;
};

using AlgorithmSpec = std::variant<DynConfig, StaticConfig, RlsConfig, SwitchConfig>;

/// "dyn", "static", "rls" or "switch".
std::string algorithm_name(const AlgorithmSpec& spec);
void validate(const AlgorithmSpec& spec, int n);

struct RunResult {
    std::int64_t evaluations = 0;
    bool success = false;
    Fitness final_fitness = 0;
    std::optional<TraceSink> trace;
};

/// Bookkeeping of one iteration, handed to RunObserver::on_iteration.
struct IterationRecord {
    std::int64_t iteration = 0;
    double lambda = 1.0;          // value used by this iteration
    int lambda1 = 1;
    int lambda2 = 0;
    int ell = 1;
    std::int64_t charged = 0;     // evaluations charged by this iteration
    int distinct_offspring = 0;   // crossover offspring differing from both parents
    Fitness parent_before = 0;
    Fitness parent_after = 0;
    bool complete = true;         // false if the run stopped inside the iteration
};

struct RunObserver {
    bool trace = false;
    std::function<void(const IterationRecord&)> on_iteration;
};

RunResult run_dyn(const DynConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer = {});
RunResult run_static(const StaticConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer = {});
RunResult run_rls(int n, std::int64_t budget, RandomSource& rng, const RunObserver& observer = {});
RunResult run_switch(int target, const DynConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer = {});

RunResult run_algorithm(const AlgorithmSpec& spec, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer = {});

} // namespace onell
