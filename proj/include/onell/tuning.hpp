#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "onell/algorithms.hpp"
#include "onell/experiment.hpp"

namespace onell {

// ---------------------------------------------------------------------------
// (A, b) grid sweep

struct SweepSpec {
    int a_count = 50;
    double a_min = 1.02;
    double a_max = 2.0;
    int b_count = 50;
    double b_min = 0.4;
    double b_max = 0.988;
    int runs = 100;
    int n = 1000;
    std::int64_t budget = default_budget;
    /// Reported as the mean of cells without any successful run; 0 means `budget`.
    double display_cap = 0.0;

    void validate() const;
};

struct SweepCell {
    double A = 0.0;
    double b = 0.0;
    double success_rate = 0.0;
    double mean_successful = 0.0;
    int success_count = 0;
    int runs = 0;
};

/// Value i of `count` equally spaced points in [lo, hi]; a single point sits at lo.
double grid_value(int count, double lo, double hi, int i);

/// Runs `spec.runs` dyn runs per (A, b) cell, A-major order. Alpha, beta and gamma come from
/// `tmpl`. Run r of every cell uses derive_seed(master_seed, r), so a 1x1 grid reproduces
/// run_experiment with the same master seed. Means are over successful runs only.
std::vector<SweepCell> grid_sweep(const SweepSpec& spec, const DynConfig& tmpl, std::uint64_t master_seed,
    unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Iterated racing with adaptive capping

enum class ParamKind { Real, Integer };

/// Real parameters range over the open interval (lower, upper), integers over the closed
/// one. lower == upper pins the parameter.
struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Real;
    double lower = 0.0;
    double upper = 1.0;
};

struct ParamSpace {
    std::vector<ParamSpec> params;

    void validate() const;
    std::size_t size() const { return params.size(); }
    /// Number of parameters that are not pinned.
    std::size_t free_count() const;
};

/// A in (1, 2.5), b in (0.4, 1).
ParamSpace dyn_ab_space();
/// alpha in (1/3, 10), beta in (1, 10), gamma in (1/3, 10), A in (1.01, 2.5), b in (0.4, 0.99).
ParamSpace dyn_full_space();
/// lambda1, lambda2, k in [1, 100] (k capped at n), c in (0.01, 0.5).
ParamSpace static_space(int n);

using Configuration = std::vector<double>;

/// Outcome of one run of a configuration on one instance.
struct Trial {
    double cost = 0.0;               // runtime; equals the cap when censored
    std::int64_t evaluations = 0;    // budget consumed
    bool censored = false;
};

/// Runs `config` on the instance identified by `seed`, stopping at `cap` (may be +inf).
using Evaluator = std::function<Trial(const Configuration& config, std::uint64_t seed, double cap)>;

/// Maps the space's parameter names (alpha, beta, gamma, A, b) onto a copy of `base`.
DynConfig dyn_config_from(const ParamSpace& space, const Configuration& values, DynConfig base = {});
/// Maps lambda1, lambda2, k, c onto a copy of `base`.
StaticConfig static_config_from(const ParamSpace& space, const Configuration& values, StaticConfig base = {});

Evaluator make_dyn_evaluator(const ParamSpace& space, DynConfig base, int n, std::int64_t run_budget);
Evaluator make_static_evaluator(const ParamSpace& space, StaticConfig base, int n, std::int64_t run_budget);

struct TunerOptions {
    int first_test = 5;            // instances before the first elimination test
    double significance = 0.05;    // Wilcoxon level for elimination
    double cap_factor = 2.0;       // runs stop at cap_factor * incumbent mean
    int iterations = 0;            // 0: floor(2 + log2(free parameters))
    int survivors = 0;             // elites kept per iteration; 0: same formula
    int max_configs = 200;         // per iteration
    int max_instances = 60;        // per race
    double initial_spread = 0.5;   // sd of the first resampling, as a fraction of the range
};

struct AuditEntry {
    int iteration = 0;
    int config_id = 0;
    Configuration values;
    int instance = 0;
    std::uint64_t seed = 0;
    std::int64_t evaluations = 0;
    double cost = 0.0;
    bool censored = false;
};

struct TuneResult {
    Configuration best;
    int best_id = 0;
    double best_mean = 0.0;        // over the instances the final elites share
    int best_instances = 0;
    std::vector<Configuration> elites;
    std::int64_t consumed = 0;
    bool budget_warning = false;   // budget ran out before first_test instances
    std::vector<AuditEntry> audit;
};

/// Seed of racing instance t; shared by every configuration and iteration.
std::uint64_t instance_seed(std::uint64_t master_seed, int instance);

/// Iterated racing: sample configurations (uniformly at first, then truncated-normal around
/// the elites with the spread halved every iteration), race them on a common seed sequence,
/// drop configurations whose paired Wilcoxon test against the incumbent is significant, and
/// cap every non-incumbent run at cap_factor times the incumbent's mean.
TuneResult race_tune(const ParamSpace& space, const Evaluator& evaluator, std::int64_t total_budget,
    std::uint64_t master_seed, const TunerOptions& options = {});

enum class TuneFamily { Dyn, Static };

TuneResult race_tune(const ParamSpace& space, TuneFamily family, int n, std::int64_t run_budget,
    std::int64_t total_budget, std::uint64_t master_seed, const TunerOptions& options = {});

} // namespace onell
