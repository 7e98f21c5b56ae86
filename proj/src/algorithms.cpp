#include "onell/algorithms.hpp"

#include <algorithm>
#include <vector>

#include "onell/operators.hpp"

namespace onell {

void DynConfig::validate() const
{
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
        throw ConfigError("dyn: alpha, beta and gamma must be positive");
    if (!(A > 1.0))
        throw ConfigError("dyn: A must be greater than 1");
    if (!(b > 0.0 && b < 1.0))
        throw ConfigError("dyn: b must lie in (0, 1)");
}

void StaticConfig::validate(int n) const
{
    if (lambda1 < 1 || lambda2 < 1)
        throw ConfigError("static: lambda1 and lambda2 must be at least 1");
    if (k < 1 || k > n)
        throw ConfigError("static: k must lie in [1, n]");
    if (!(c > 0.0 && c < 1.0))
        throw ConfigError("static: c must lie in (0, 1)");
}

std::string algorithm_name(const AlgorithmSpec& spec)
{
    struct Name {
        std::string operator()(const DynConfig&) const { return "dyn"; }
        std::string operator()(const StaticConfig&) const { return "static"; }
        std::string operator()(const RlsConfig&) const { return "rls"; }
        std::string operator()(const SwitchConfig&) const { return "switch"; }
    };
    return std::visit(Name {}, spec);
}

namespace {

void check_run_args(int n, std::int64_t budget)
{
    if (n < 2)
        throw ConfigError("problem dimension n must be at least 2");
    if (budget < 1)
        throw ConfigError("budget must be at least 1");
}

} // namespace

void validate(const AlgorithmSpec& spec, int n)
{
    if (n < 2)
        throw ConfigError("problem dimension n must be at least 2");
    if (const auto* dyn = std::get_if<DynConfig>(&spec))
        dyn->validate();
    else if (const auto* stat = std::get_if<StaticConfig>(&spec))
        stat->validate(n);
    else if (const auto* sw = std::get_if<SwitchConfig>(&spec)) {
        if (sw->target < 0 || sw->target > n)
            throw DomainError("switch target must lie in [0, n]");
        sw->dyn.validate();
    }
}

namespace {

// Parent genome together with its zero and one positions. Offspring are simulated by
// counts only; by symmetry of OneMax and of both variation operators, an offspring that
// flips `good` zeros and `bad` ones of the parent is distributed as flipping a uniform
// good-subset of the zeros and a uniform bad-subset of the ones, which is what
// `apply` materializes for the accepted offspring.
class Parent {
public:
    Parent(int n, RandomSource& rng) : x_(BitString::random(n, rng))
    {
        for (int i = 0; i < n; ++i)
            (x_[i] ? ones_ : zeros_).push_back(i);
    }

    int n() const { return x_.size(); }
    Fitness fitness() const { return static_cast<Fitness>(ones_.size()); }
    int zeros() const { return static_cast<int>(zeros_.size()); }
    const BitString& genome() const { return x_; }

    void apply(int good, int bad, RandomSource& rng)
    {
        pick_tail(ones_, bad, rng);
        pick_tail(zeros_, good, rng);
        moved_.assign(ones_.end() - bad, ones_.end());
        ones_.resize(ones_.size() - static_cast<std::size_t>(bad));
        const auto split = moved_.size();
        moved_.insert(moved_.end(), zeros_.end() - good, zeros_.end());
        zeros_.resize(zeros_.size() - static_cast<std::size_t>(good));
        for (std::size_t i = 0; i < moved_.size(); ++i) {
            const int pos = moved_[i];
            x_.flip(pos);
            (i < split ? zeros_ : ones_).push_back(pos);
        }
    }

private:
    // partial Fisher-Yates that leaves a uniform `count`-subset in the last slots
    static void pick_tail(std::vector<int>& v, int count, RandomSource& rng)
    {
        const auto size = static_cast<std::int64_t>(v.size());
        for (std::int64_t i = 0; i < count; ++i) {
            const auto last = size - 1 - i;
            const auto j = rng.below(last + 1);
            std::swap(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(last)]);
        }
    }

    BitString x_;
    std::vector<int> zeros_;
    std::vector<int> ones_;
    std::vector<int> moved_;
};

enum class Stop { None, Optimum, Budget };

class Run {
public:
    Run(int n, std::int64_t budget, RandomSource& rng, const RunObserver& observer)
        : rng_(rng), observer_(observer), budget_(budget), parent_(n, rng)
    {
        if (observer.trace)
            trace_.emplace(n);
        charge();
        hit(1);
        if (parent_.fitness() == n)
            stop_ = Stop::Optimum;
        else if (evaluations_ >= budget_)
            stop_ = Stop::Budget;
    }

    bool running() const { return stop_ == Stop::None; }

    void rls_until(Fitness target)
    {
        const int n = parent_.n();
        while (running() && parent_.fitness() < target) {
            IterationRecord rec = begin(1.0, 1, 0, 1);
            const bool improves = rng_.below(n) < parent_.zeros();
            const Fitness fy = parent_.fitness() + (improves ? 1 : -1);
            evaluate(fy);
            if (improves) {
                parent_.apply(1, 0, rng_);
                hit(1);
            }
            end(rec, true);
        }
    }

    void dyn(const DynConfig& cfg)
    {
        const int n = parent_.n();
        double lambda = 1.0;
        while (running()) {
            const int lambda1 = static_cast<int>(nint(lambda));
            const int lambda2 = static_cast<int>(std::max<std::int64_t>(1, nint(cfg.beta * lambda)));
            const double p = std::clamp(cfg.alpha * lambda / n, 1.0 / n, 0.99);
            const double c = std::clamp(cfg.gamma / lambda, 1.0 / n, 0.99);
            const Fitness f = parent_.fitness();
            IterationRecord rec = begin(lambda, lambda1, lambda2, sample_bin_gt0(n, p, rng_));
            const auto outcome = iterate(rec, c, /*mutant_selectable=*/true);
            if (!outcome)
                return end(rec, false);
            if (outcome->fitness > f) {
                parent_.apply(outcome->good, outcome->bad, rng_);
                lambda = std::max(cfg.b * lambda, 1.0);
                hit(lambda1);
            } else {
                if (outcome->fitness == f)
                    parent_.apply(outcome->good, outcome->bad, rng_);
                lambda = std::min(cfg.A * lambda, static_cast<double>(n - 1));
            }
            end(rec, true);
        }
    }

    void stat(const StaticConfig& cfg)
    {
        const int n = parent_.n();
        const double p = std::clamp(static_cast<double>(cfg.k) / n, 1.0 / n, 0.99);
        const double c = std::clamp(cfg.c, 1.0 / n, 0.99);
        while (running()) {
            const Fitness f = parent_.fitness();
            IterationRecord rec = begin(cfg.lambda1, cfg.lambda1, cfg.lambda2, sample_bin_gt0(n, p, rng_));
            const auto outcome = iterate(rec, c, cfg.include_mutant);
            if (!outcome)
                return end(rec, false);
            if (outcome->fitness >= f) {
                parent_.apply(outcome->good, outcome->bad, rng_);
                if (outcome->fitness > f)
                    hit(cfg.lambda1);
            }
            end(rec, true);
        }
    }

    RunResult finish()
    {
        RunResult result;
        result.evaluations = evaluations_;
        result.success = stop_ == Stop::Optimum;
        result.final_fitness = parent_.fitness();
        result.trace = std::move(trace_);
        return result;
    }

private:
    struct Offspring {
        Fitness fitness;
        int good;
        int bad;
    };

    // One mutation + crossover phase. Returns the selected offspring y, or nothing if
    // the run stopped inside the iteration (in which case the parent is already final).
    std::optional<Offspring> iterate(IterationRecord& rec, double c, bool mutant_selectable)
    {
        const int n = parent_.n();
        const Fitness f = parent_.fitness();
        const int ell = rec.ell;
        const int zeros = parent_.zeros();

        const HypergeometricSampler good_flips(n, zeros, ell);
        UniformArgmax best_mutant;
        int mutant_good = 0;
        for (int i = 0; i < rec.lambda1; ++i) {
            const auto good = static_cast<int>(good_flips(rng_));
            const Fitness fm = f + 2 * good - ell;
            if (best_mutant.offer(fm, rng_))
                mutant_good = good;
            if (!evaluate(fm)) {
                if (stop_ == Stop::Optimum)
                    finish_at_optimum(good, ell - good, rec.lambda1);
                return std::nullopt;
            }
        }

        const int mutant_bad = ell - mutant_good;
        UniformArgmax best_child;
        Offspring chosen {best_mutant.best(), mutant_good, mutant_bad};
        if (mutant_selectable)
            best_child.offer(chosen.fitness, rng_);
        const BinomialSampler take_good(mutant_good, c);
        const BinomialSampler take_bad(mutant_bad, c);
        for (int j = 0; j < rec.lambda2; ++j) {
            const auto good = static_cast<int>(take_good(rng_));
            const auto bad = static_cast<int>(take_bad(rng_));
            const Fitness fy = f + good - bad;
            if (best_child.offer(fy, rng_))
                chosen = {fy, good, bad};
            // copies of x or x' are free: their fitness is already known
            if (good + bad == 0 || good + bad == ell)
                continue;
            ++rec.distinct_offspring;
            if (!evaluate(fy)) {
                if (stop_ == Stop::Optimum)
                    finish_at_optimum(good, bad, rec.lambda1);
                return std::nullopt;
            }
        }
        return chosen;
    }

    void finish_at_optimum(int good, int bad, int lambda1)
    {
        parent_.apply(good, bad, rng_);
        hit(lambda1);
    }

    // Charges one evaluation of a point with fitness `f`; false once the run must stop.
    bool evaluate(Fitness f)
    {
        charge();
        if (f == parent_.n())
            stop_ = Stop::Optimum;
        else if (evaluations_ >= budget_)
            stop_ = Stop::Budget;
        return running();
    }

    void charge() { ++evaluations_; }

    void hit(int lambda1)
    {
        if (trace_)
            trace_->record_hit(parent_.fitness(), evaluations_, lambda1);
    }

    IterationRecord begin(double lambda, int lambda1, int lambda2, int ell)
    {
        IterationRecord rec;
        rec.iteration = ++iterations_;
        rec.lambda = lambda;
        rec.lambda1 = lambda1;
        rec.lambda2 = lambda2;
        rec.ell = ell;
        rec.parent_before = parent_.fitness();
        rec.charged = evaluations_;
        return rec;
    }

    void end(IterationRecord& rec, bool complete)
    {
        if (!observer_.on_iteration)
            return;
        rec.charged = evaluations_ - rec.charged;
        rec.parent_after = parent_.fitness();
        rec.complete = complete;
        observer_.on_iteration(rec);
    }

    RandomSource& rng_;
    const RunObserver& observer_;
    std::int64_t budget_;
    std::int64_t evaluations_ = 0;
    std::int64_t iterations_ = 0;
    Stop stop_ = Stop::None;
    Parent parent_;
    std::optional<TraceSink> trace_;
};

} // namespace

RunResult run_dyn(const DynConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer)
{
    cfg.validate();
    check_run_args(n, budget);
    Run run(n, budget, rng, observer);
    run.dyn(cfg);
    return run.finish();
}

RunResult run_static(const StaticConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer)
{
    check_run_args(n, budget);
    cfg.validate(n);
    Run run(n, budget, rng, observer);
    run.stat(cfg);
    return run.finish();
}

RunResult run_rls(int n, std::int64_t budget, RandomSource& rng, const RunObserver& observer)
{
    check_run_args(n, budget);
    Run run(n, budget, rng, observer);
    run.rls_until(n);
    return run.finish();
}

RunResult run_switch(int target, const DynConfig& cfg, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer)
{
    check_run_args(n, budget);
    if (target < 0 || target > n)
        throw DomainError("switch target must lie in [0, n]");
    cfg.validate();
    Run run(n, budget, rng, observer);
    run.rls_until(target);
    run.dyn(cfg);
    return run.finish();
}

RunResult run_algorithm(const AlgorithmSpec& spec, int n, std::int64_t budget, RandomSource& rng,
    const RunObserver& observer)
{
    struct Dispatch {
        int n;
        std::int64_t budget;
        RandomSource& rng;
        const RunObserver& observer;
        RunResult operator()(const DynConfig& c) const { return run_dyn(c, n, budget, rng, observer); }
        RunResult operator()(const StaticConfig& c) const { return run_static(c, n, budget, rng, observer); }
        RunResult operator()(const RlsConfig&) const { return run_rls(n, budget, rng, observer); }
        RunResult operator()(const SwitchConfig& c) const
        {
            return run_switch(c.target, c.dyn, n, budget, rng, observer);
        }
    };
    return std::visit(Dispatch {n, budget, rng, observer}, spec);
}

} // namespace onell
