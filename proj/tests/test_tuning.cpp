#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "onell/analysis.hpp"
#include "onell/errors.hpp"
#include "onell/experiment.hpp"
#include "onell/tuning.hpp"
#include "properties.hpp"

using namespace onell;

TEST_CASE("grid values")
{
    CHECK(grid_value(50, 1.02, 2.0, 0) == 1.02);
    CHECK(grid_value(50, 1.02, 2.0, 49) == doctest::Approx(2.0));
    CHECK(grid_value(50, 1.02, 2.0, 2) == doctest::Approx(1.06));
    CHECK(grid_value(50, 0.4, 0.988, 35) == doctest::Approx(0.82));
    CHECK(grid_value(1, 3.0, 4.0, 0) == 3.0);
}

TEST_CASE("1x1 sweep equals direct runs")
{
    SweepSpec spec;
    spec.a_count = spec.b_count = 1;
    spec.a_min = 1.2;
    spec.b_min = 0.75;
    spec.runs = 20;
    spec.n = 200;
    const auto cells = grid_sweep(spec, DynConfig {}, 77);
    REQUIRE(cells.size() == 1);

    ExperimentSpec direct;
    direct.algorithm = DynConfig {1, 1, 1, 1.2, 0.75};
    direct.n = 200;
    direct.runs = 20;
    direct.master_seed = 77;
    const auto stats = summarize_runs(run_experiment(direct), 200);
    CHECK(cells[0].success_count == 20);
    CHECK(cells[0].mean_successful == stats.mean);
    CHECK(cells[0].success_rate == doctest::Approx(success_rate(1.2, 0.75)));
}

TEST_CASE("toy sweep")
{
    SweepSpec spec;
    spec.a_count = spec.b_count = 3;
    spec.a_min = 1.1;
    spec.a_max = 1.5;
    spec.b_min = 0.5;
    spec.b_max = 0.9;
    spec.runs = 5;
    spec.n = 100;
    spec.budget = 3000;
    const auto cells = grid_sweep(spec, DynConfig {}, 3, 2);
    REQUIRE(cells.size() == 9);
    CHECK(cells[1].A == 1.1);
    CHECK(cells[1].b == doctest::Approx(0.7));
    CHECK(cells[3].A == doctest::Approx(1.3));
    for (const auto& c : cells) {
        CHECK(c.runs == 5);
        CHECK((c.success_count >= 0 && c.success_count <= 5));
        if (c.success_count == 0)
            CHECK(c.mean_successful == 3000.0);
        else
            CHECK(c.mean_successful <= 3000.0);
    }
    CHECK_THROWS_AS(grid_sweep(SweepSpec {0}, DynConfig {}, 1), ConfigError);
}

TEST_CASE("parameter spaces")
{
    CHECK(dyn_ab_space().size() == 2);
    CHECK(dyn_full_space().free_count() == 5);
    const auto s = static_space(50);
    CHECK(s.params[2].upper == 50.0);
    CHECK_THROWS_AS((ParamSpace {{{"x", ParamKind::Real, 2.0, 1.0}}}.validate()), ConfigError);
    CHECK_THROWS_AS((ParamSpace {{{"k", ParamKind::Integer, 0.5, 3.0}}}.validate()), ConfigError);
    CHECK_THROWS_AS(ParamSpace {}.validate(), ConfigError);

    const auto d = dyn_config_from(dyn_full_space(), {0.5, 2, 0.7, 1.3, 0.6});
    CHECK(d.alpha == 0.5);
    CHECK(d.beta == 2.0);
    CHECK(d.gamma == 0.7);
    CHECK(d.A == 1.3);
    CHECK(d.b == 0.6);
    const auto st = static_config_from(static_space(1000), {5, 60, 7, 0.0143});
    CHECK(st.lambda1 == 5);
    CHECK(st.lambda2 == 60);
    CHECK(st.k == 7);
    CHECK(st.c == 0.0143);
    CHECK_THROWS_AS(dyn_config_from(ParamSpace {{{"q", ParamKind::Real, 0, 1}}}, {0.5}), ConfigError);
}

TEST_CASE("evaluators honour the cap")
{
    const auto eval = make_dyn_evaluator(dyn_ab_space(), DynConfig {}, 500, 150'000);
    const auto free = eval({1.2, 0.7}, 5, std::numeric_limits<double>::infinity());
    CHECK_FALSE(free.censored);
    CHECK(free.cost == static_cast<double>(free.evaluations));
    const auto capped = eval({1.2, 0.7}, 5, 100.0);
    CHECK(capped.censored);
    CHECK(capped.cost == 100.0);
    CHECK(capped.evaluations == 100);

    const auto st = make_static_evaluator(static_space(500), StaticConfig {}, 500, 150'000);
    CHECK_FALSE(st({6, 49, 7, 0.0151}, 5, 1e9).censored);
}

TEST_CASE("pinned space returns its point")
{
    const ParamSpace point {{{"A", ParamKind::Real, 1.3, 1.3}, {"b", ParamKind::Real, 0.7, 0.7}}};
    const auto r = race_tune(point, TuneFamily::Dyn, 200, 150'000, 300'000, 4);
    CHECK(r.best == Configuration {1.3, 0.7});
    for (const auto& e : r.elites)
        CHECK(e == Configuration {1.3, 0.7});
}

TEST_CASE("racing bookkeeping")
{
    const auto space = dyn_ab_space();
    const std::int64_t budget = 3'000'000;
    const auto r = race_tune(space, TuneFamily::Dyn, 300, 150'000, budget, 8);
    REQUIRE_FALSE(r.audit.empty());

    std::int64_t total = 0, largest = 0;
    std::map<std::pair<int, int>, std::set<std::uint64_t>> seeds;
    std::map<std::pair<int, int>, bool> some_uncapped;
    for (const auto& e : r.audit) {
        total += e.evaluations;
        largest = std::max(largest, e.evaluations);
        CHECK(e.seed == instance_seed(8, e.instance));
        seeds[{e.iteration, e.instance}].insert(e.seed);
        some_uncapped[{e.iteration, e.instance}] |= !e.censored;
        if (e.censored)
            CHECK(e.cost == static_cast<double>(e.evaluations));
        for (std::size_t i = 0; i < space.size(); ++i)
            CHECK((e.values[i] > space.params[i].lower && e.values[i] < space.params[i].upper));
    }
    CHECK(total == r.consumed);
    CHECK(r.consumed <= budget + largest);
    for (const auto& [key, s] : seeds)
        CHECK(s.size() == 1);
    for (const auto& [key, uncapped] : some_uncapped)
        CHECK(uncapped);
    CHECK_FALSE(r.budget_warning);
    CHECK(r.best_instances >= 5);
}

TEST_CASE("tiny budget is flagged")
{
    const auto r = race_tune(dyn_ab_space(), TuneFamily::Dyn, 1000, 150'000, 20'000, 1);
    CHECK(r.budget_warning);
    CHECK(r.best.size() == 2);
}

TEST_CASE("racing finds the optimum of a noisy bowl")
{
    int within = 0;
    for (std::uint64_t s = 0; s < 5; ++s)
        within += testing::synthetic_tuning(100 + s, 3'000'000).within;
    CHECK(within >= 4);
}
