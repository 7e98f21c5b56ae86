#include "onell/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

#include "onell/analysis.hpp"
#include "onell/errors.hpp"
#include "onell/random.hpp"

namespace onell {

void SweepSpec::validate() const
{
    if (a_count < 1 || b_count < 1)
        throw ConfigError("sweep: grid counts must be at least 1");
    if (runs < 1)
        throw ConfigError("sweep: runs must be at least 1");
    if (budget < 1)
        throw ConfigError("sweep: budget must be at least 1");
    if (n < 2)
        throw ConfigError("sweep: n must be at least 2");
}

double grid_value(int count, double lo, double hi, int i)
{
    if (count <= 1)
        return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<SweepCell> grid_sweep(const SweepSpec& spec, const DynConfig& tmpl, std::uint64_t master_seed,
    unsigned jobs)
{
    spec.validate();
    const double cap = spec.display_cap > 0.0 ? spec.display_cap : static_cast<double>(spec.budget);

    std::vector<SweepCell> cells;
    cells.reserve(static_cast<std::size_t>(spec.a_count * spec.b_count));
    for (int i = 0; i < spec.a_count; ++i)
        for (int j = 0; j < spec.b_count; ++j) {
            SweepCell cell;
            cell.A = grid_value(spec.a_count, spec.a_min, spec.a_max, i);
            cell.b = grid_value(spec.b_count, spec.b_min, spec.b_max, j);
            cell.success_rate = success_rate(cell.A, cell.b);
            cell.runs = spec.runs;
            cells.push_back(cell);
        }

    // one task per (cell, run) keeps the workers busy when cells differ wildly in cost
    const auto runs = static_cast<std::size_t>(spec.runs);
    std::vector<RunResult> results(cells.size() * runs);
    parallel_for(results.size(), jobs, [&](std::size_t task) {
        const auto& cell = cells[task / runs];
        DynConfig cfg = tmpl;
        cfg.A = cell.A;
        cfg.b = cell.b;
        RandomSource rng(derive_seed(master_seed, task % runs));
        results[task] = run_dyn(cfg, spec.n, spec.budget, rng);
    });

    for (std::size_t c = 0; c < cells.size(); ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < runs; ++r) {
            const auto& res = results[c * runs + r];
            if (res.success) {
                ++cells[c].success_count;
                sum += static_cast<double>(res.evaluations);
            }
        }
        cells[c].mean_successful = cells[c].success_count > 0 ? sum / cells[c].success_count : cap;
    }
    return cells;
}

// ---------------------------------------------------------------------------

void ParamSpace::validate() const
{
    if (params.empty())
        throw ConfigError("parameter space is empty");
    for (const auto& p : params) {
        if (!(p.lower <= p.upper))
            throw ConfigError("parameter " + p.name + ": lower bound exceeds upper bound");
        if (p.kind == ParamKind::Integer && (std::floor(p.lower) != p.lower || std::floor(p.upper) != p.upper))
            throw ConfigError("parameter " + p.name + ": integer bounds must be integral");
    }
}

std::size_t ParamSpace::free_count() const
{
    return static_cast<std::size_t>(
        std::count_if(params.begin(), params.end(), [](const ParamSpec& p) { return p.lower < p.upper; }));
}

ParamSpace dyn_ab_space()
{
    return {{{"A", ParamKind::Real, 1.0, 2.5}, {"b", ParamKind::Real, 0.4, 1.0}}};
}

ParamSpace dyn_full_space()
{
    return {{
        {"alpha", ParamKind::Real, 1.0 / 3.0, 10.0},
        {"beta", ParamKind::Real, 1.0, 10.0},
        {"gamma", ParamKind::Real, 1.0 / 3.0, 10.0},
        {"A", ParamKind::Real, 1.01, 2.5},
        {"b", ParamKind::Real, 0.4, 0.99},
    }};
}

ParamSpace static_space(int n)
{
    return {{
        {"lambda1", ParamKind::Integer, 1.0, 100.0},
        {"lambda2", ParamKind::Integer, 1.0, 100.0},
        {"k", ParamKind::Integer, 1.0, static_cast<double>(std::min(100, n))},
        {"c", ParamKind::Real, 0.01, 0.5},
    }};
}

DynConfig dyn_config_from(const ParamSpace& space, const Configuration& values, DynConfig base)
{
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto& name = space.params[i].name;
        const double v = values.at(i);
        if (name == "alpha")
            base.alpha = v;
        else if (name == "beta")
            base.beta = v;
        else if (name == "gamma")
            base.gamma = v;
        else if (name == "A")
            base.A = v;
        else if (name == "b")
            base.b = v;
        else
            throw ConfigError("unknown dyn parameter: " + name);
    }
    return base;
}

StaticConfig static_config_from(const ParamSpace& space, const Configuration& values, StaticConfig base)
{
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto& name = space.params[i].name;
        const double v = values.at(i);
        if (name == "lambda1")
            base.lambda1 = static_cast<int>(std::lround(v));
        else if (name == "lambda2")
            base.lambda2 = static_cast<int>(std::lround(v));
        else if (name == "k")
            base.k = static_cast<int>(std::lround(v));
        else if (name == "c")
            base.c = v;
        else
            throw ConfigError("unknown static parameter: " + name);
    }
    return base;
}

namespace {

std::int64_t run_budget_under(double cap, std::int64_t run_budget)
{
    if (!std::isfinite(cap) || cap >= static_cast<double>(run_budget))
        return run_budget;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(cap)));
}

Trial trial_from(const RunResult& r, std::int64_t budget)
{
    if (r.success)
        return {static_cast<double>(r.evaluations), r.evaluations, false};
    return {static_cast<double>(budget), r.evaluations, true};
}

} // namespace

Evaluator make_dyn_evaluator(const ParamSpace& space, DynConfig base, int n, std::int64_t run_budget)
{
    return [=](const Configuration& values, std::uint64_t seed, double cap) {
        const auto cfg = dyn_config_from(space, values, base);
        const auto budget = run_budget_under(cap, run_budget);
        RandomSource rng(seed);
        return trial_from(run_dyn(cfg, n, budget, rng), budget);
    };
}

Evaluator make_static_evaluator(const ParamSpace& space, StaticConfig base, int n, std::int64_t run_budget)
{
    return [=](const Configuration& values, std::uint64_t seed, double cap) {
        const auto cfg = static_config_from(space, values, base);
        const auto budget = run_budget_under(cap, run_budget);
        RandomSource rng(seed);
        return trial_from(run_static(cfg, n, budget, rng), budget);
    };
}

std::uint64_t instance_seed(std::uint64_t master_seed, int instance)
{
    return derive_seed(mix64(master_seed ^ 0x72616365ULL), static_cast<std::uint64_t>(instance));
}

namespace {

struct Candidate {
    int id = 0;
    Configuration values;
    std::vector<std::optional<Trial>> results;   // indexed by instance

    bool has(int t) const { return t < static_cast<int>(results.size()) && results[static_cast<std::size_t>(t)]; }

    double mean(int instances) const
    {
        double sum = 0.0;
        for (int t = 0; t < instances; ++t)
            sum += results[static_cast<std::size_t>(t)]->cost;
        return sum / instances;
    }

    std::vector<double> costs(int instances) const
    {
        std::vector<double> v;
        for (int t = 0; t < instances; ++t)
            v.push_back(results[static_cast<std::size_t>(t)]->cost);
        return v;
    }
};

class Racer {
public:
    Racer(const ParamSpace& space, const Evaluator& evaluator, std::int64_t total_budget, std::uint64_t master_seed,
        const TunerOptions& options)
        : space_(space), evaluator_(evaluator), total_(total_budget), master_(master_seed), opt_(options),
          rng_(mix64(master_seed))
    {
    }

    TuneResult run()
    {
        const double d = static_cast<double>(std::max<std::size_t>(1, space_.free_count()));
        const int iterations = opt_.iterations > 0 ? opt_.iterations : static_cast<int>(std::floor(2.0 + std::log2(d)));
        const int survivors = opt_.survivors > 0 ? opt_.survivors : static_cast<int>(std::floor(2.0 + std::log2(d)));

        std::vector<Candidate> elites;
        double cost_estimate = 0.0;
        for (int it = 1; it <= iterations && consumed_ < total_; ++it) {
            iteration_ = it;
            std::vector<Candidate> alive = elites;

            if (it == 1) {
                // probe one configuration to size the first population
                alive.push_back(fresh(sample_uniform()));
                evaluate(alive.back(), 0, std::numeric_limits<double>::infinity());
                cost_estimate = static_cast<double>(consumed_);
            } else if (trials_ > 0) {
                cost_estimate = static_cast<double>(consumed_) / static_cast<double>(trials_);
            }

            const double iteration_budget = static_cast<double>(total_ - consumed_) / (iterations - it + 1);
            const double per_config = std::max(1.0, cost_estimate) * (opt_.first_test + std::min(5, it));
            const int population = std::clamp(static_cast<int>(iteration_budget / per_config),
                static_cast<int>(elites.size()) + 1, opt_.max_configs);
            const double spread = opt_.initial_spread * std::ldexp(1.0, -(it - 2));
            while (static_cast<int>(alive.size()) < population)
                alive.push_back(fresh(it == 1 ? sample_uniform() : sample_around(elites, spread)));

            const int instances = race(alive, survivors, consumed_ + static_cast<std::int64_t>(iteration_budget));
            if (it == 1 && instances < opt_.first_test)
                warning_ = true;

            std::sort(alive.begin(), alive.end(), [&](const Candidate& a, const Candidate& b) {
                return a.mean(instances) < b.mean(instances);
            });
            if (static_cast<int>(alive.size()) > survivors)
                alive.resize(static_cast<std::size_t>(survivors));
            elites = std::move(alive);
            common_ = instances;
        }

        TuneResult result;
        result.consumed = consumed_;
        result.budget_warning = warning_;
        result.audit = std::move(audit_);
        if (!elites.empty()) {
            result.best = elites.front().values;
            result.best_id = elites.front().id;
            result.best_instances = common_;
            result.best_mean = common_ > 0 ? elites.front().mean(common_) : 0.0;
            for (const auto& e : elites)
                result.elites.push_back(e.values);
        }
        return result;
    }

private:
    Candidate fresh(Configuration values)
    {
        Candidate c;
        c.id = next_id_++;
        c.values = std::move(values);
        return c;
    }

    double snap(const ParamSpec& p, double v) const
    {
        return p.kind == ParamKind::Integer ? std::clamp(std::round(v), p.lower, p.upper) : v;
    }

    bool inside(const ParamSpec& p, double v) const
    {
        if (p.kind == ParamKind::Integer)
            return v >= p.lower && v <= p.upper;
        return v > p.lower && v < p.upper;
    }

    Configuration sample_uniform()
    {
        Configuration values;
        for (const auto& p : space_.params) {
            if (p.lower == p.upper) {
                values.push_back(p.lower);
                continue;
            }
            double v;
            do {
                v = p.kind == ParamKind::Integer
                    ? p.lower + static_cast<double>(rng_.below(static_cast<std::int64_t>(p.upper - p.lower) + 1))
                    : p.lower + rng_.uniform01() * (p.upper - p.lower);
            } while (!inside(p, v));
            values.push_back(v);
        }
        return values;
    }

    // Picks an elite with probability proportional to (k - rank) and perturbs every
    // parameter by a normal truncated to the parameter's range.
    Configuration sample_around(const std::vector<Candidate>& elites, double spread)
    {
        if (elites.empty())
            return sample_uniform();
        const auto k = static_cast<std::int64_t>(elites.size());
        std::int64_t ticket = rng_.below(k * (k + 1) / 2);
        std::size_t parent = 0;
        for (std::int64_t w = k; ticket >= w; --w, ++parent)
            ticket -= w;

        Configuration values;
        for (std::size_t i = 0; i < space_.size(); ++i) {
            const auto& p = space_.params[i];
            const double center = elites[parent].values[i];
            if (p.lower == p.upper) {
                values.push_back(p.lower);
                continue;
            }
            const double sd = spread * (p.upper - p.lower);
            double v;
            int attempts = 0;
            do {
                v = snap(p, rng_.normal(center, sd));
            } while (!inside(p, v) && ++attempts < 1000);
            if (!inside(p, v))
                v = center;
            values.push_back(v);
        }
        return values;
    }

    bool exhausted() const { return consumed_ >= total_; }

    void evaluate(Candidate& c, int t, double cap)
    {
        const auto seed = instance_seed(master_, t);
        const Trial trial = evaluator_(c.values, seed, cap);
        if (c.results.size() <= static_cast<std::size_t>(t))
            c.results.resize(static_cast<std::size_t>(t) + 1);
        c.results[static_cast<std::size_t>(t)] = trial;
        consumed_ += trial.evaluations;
        ++trials_;
        audit_.push_back({iteration_, c.id, c.values, t, seed, trial.evaluations, trial.cost, trial.censored});
    }

    // Returns the number of instances every surviving configuration has been run on.
    int race(std::vector<Candidate>& alive, int survivors, std::int64_t iteration_end)
    {
        int complete = 0;
        for (int t = 0; t < opt_.max_instances; ++t) {
            if (exhausted() || (consumed_ >= iteration_end && complete >= opt_.first_test))
                break;

            // incumbent: lowest mean over the instances everyone has, ties to the oldest
            std::size_t inc = 0;
            if (complete > 0) {
                for (std::size_t i = 1; i < alive.size(); ++i)
                    if (alive[i].mean(complete) < alive[inc].mean(complete))
                        inc = i;
            } else {
                for (std::size_t i = 0; i < alive.size(); ++i)
                    if (alive[i].has(0)) {
                        inc = i;
                        break;
                    }
            }
            if (!alive[inc].has(t))
                evaluate(alive[inc], t, std::numeric_limits<double>::infinity());
            const double bound = opt_.cap_factor * (alive[inc].mean(t + 1));

            bool finished = true;
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (alive[i].has(t))
                    continue;
                if (exhausted()) {
                    finished = false;
                    break;
                }
                evaluate(alive[i], t, bound);
            }
            if (!finished)
                break;
            complete = t + 1;

            if (complete >= opt_.first_test)
                eliminate(alive, complete, survivors);
            if (static_cast<int>(alive.size()) <= survivors)
                break;
        }
        // configurations that missed the last instance cannot be compared on it
        return complete;
    }

    void eliminate(std::vector<Candidate>& alive, int instances, int survivors)
    {
        std::size_t inc = 0;
        for (std::size_t i = 1; i < alive.size(); ++i)
            if (alive[i].mean(instances) < alive[inc].mean(instances))
                inc = i;
        const auto reference = alive[inc].costs(instances);
        const double reference_mean = alive[inc].mean(instances);

        std::vector<std::pair<double, std::size_t>> losers;
        for (std::size_t i = 0; i < alive.size(); ++i) {
            if (i == inc)
                continue;
            const auto costs = alive[i].costs(instances);
            const auto nonzero = std::inner_product(costs.begin(), costs.end(), reference.begin(), 0,
                std::plus<>(), [](double a, double b) { return a != b ? 1 : 0; });
            if (nonzero < 5)
                continue;
            const auto report = wilcoxon_signed_rank(costs, reference);
            if (report.p_value < opt_.significance && alive[i].mean(instances) > reference_mean)
                losers.emplace_back(alive[i].mean(instances), i);
        }
        // never race below the survivor count: drop the worst losers first
        std::sort(losers.begin(), losers.end(), std::greater<>());
        const auto removable = alive.size() > static_cast<std::size_t>(survivors)
            ? alive.size() - static_cast<std::size_t>(survivors)
            : 0;
        if (losers.size() > removable)
            losers.resize(removable);
        std::vector<bool> drop(alive.size(), false);
        for (const auto& l : losers)
            drop[l.second] = true;
        std::vector<Candidate> kept;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (!drop[i])
                kept.push_back(std::move(alive[i]));
        alive = std::move(kept);
    }

    const ParamSpace& space_;
    const Evaluator& evaluator_;
    std::int64_t total_;
    std::uint64_t master_;
    TunerOptions opt_;
    RandomSource rng_;
    std::int64_t consumed_ = 0;
    std::int64_t trials_ = 0;
    int iteration_ = 0;
    int next_id_ = 0;
    int common_ = 0;
    bool warning_ = false;
    std::vector<AuditEntry> audit_;
};

} // namespace

TuneResult race_tune(const ParamSpace& space, const Evaluator& evaluator, std::int64_t total_budget,
    std::uint64_t master_seed, const TunerOptions& options)
{
    space.validate();
    if (total_budget < 1)
        throw ConfigError("tuning budget must be positive");
    return Racer(space, evaluator, total_budget, master_seed, options).run();
}

TuneResult race_tune(const ParamSpace& space, TuneFamily family, int n, std::int64_t run_budget,
    std::int64_t total_budget, std::uint64_t master_seed, const TunerOptions& options)
{
    const Evaluator evaluator = family == TuneFamily::Dyn
        ? make_dyn_evaluator(space, DynConfig {}, n, run_budget)
        : make_static_evaluator(space, StaticConfig {}, n, run_budget);
    return race_tune(space, evaluator, total_budget, master_seed, options);
}

} // namespace onell
