#include <doctest.h>

#include <numeric>

#include "onell/experiment.hpp"
#include "onell/presets.hpp"
#include "onell/trace.hpp"

using namespace onell;

TEST_CASE("record_hit fills the range once")
{
    TraceSink t(10);
    t.record_hit(4, 50, 2);
    t.record_hit(7, 120, 3);
    for (int v : {5, 6, 7}) {
        CHECK(t.first_hit(v) == 120);
        CHECK(t.lambda_at_hit(v) == 3);
    }
    CHECK(t.first_hit(4) == 50);
    CHECK(t.first_hit(0) == 50);
    CHECK_FALSE(t.first_hit(8).has_value());

    t.record_hit(7, 200, 9);
    CHECK(t.first_hit(7) == 120);
    CHECK(t.lambda_at_hit(7) == 3);
    t.record_hit(5, 300, 1);
    CHECK(t.first_hit(5) == 120);
    CHECK(t.reached() == 7);
}

TEST_CASE("aggregation")
{
    SUBCASE("single trace is reproduced")
    {
        TraceSink t(3);
        t.record_hit(1, 1, 1);
        t.record_hit(3, 9, 2);
        const std::vector<TraceSink> one {t};
        const auto table = aggregate_fixed_target(one, 3);
        CHECK(table.runs == 1);
        CHECK(table.at(0).avg_evals == 1.0);
        CHECK(table.at(2).avg_evals == 9.0);
        CHECK(table.at(3).avg_lambda1 == 2.0);
        CHECK(table.at(3).hit_count == 1);
    }
    SUBCASE("mean over hitting runs only")
    {
        TraceSink a(4), b(4);
        a.record_hit(2, 10, 1);
        b.record_hit(2, 20, 3);
        b.record_hit(4, 40, 5);
        const std::vector<TraceSink> two {a, b};
        const auto table = aggregate_fixed_target(two, 4);
        CHECK(table.at(2).avg_evals == 15.0);
        CHECK(table.at(2).hit_count == 2);
        CHECK(table.at(2).avg_lambda1 == 2.0);
        CHECK(table.at(4).avg_evals == 40.0);
        CHECK(table.at(4).hit_count == 1);
    }
    SUBCASE("errors")
    {
        CHECK_THROWS(aggregate_fixed_target(std::vector<TraceSink> {}, 4));
        CHECK_THROWS(aggregate_fixed_target(std::vector<TraceSink> {TraceSink(3)}, 4));
    }
}

TEST_CASE("traces of real runs")
{
    for (const char* name : {"dyn-C", "stat-1000", "rls"}) {
        ExperimentSpec spec;
        spec.algorithm = *find_preset(name);
        spec.n = 300;
        spec.runs = 30;
        spec.trace = true;
        const auto records = run_experiment(spec);
        for (const auto& r : records) {
            const auto& t = *r.result.trace;
            for (int v = 0; v <= spec.n; ++v) {
                // defined exactly up to the final fitness, nondecreasing in v
                REQUIRE(t.first_hit(v).has_value() == (v <= r.result.final_fitness));
                if (v > 0 && t.first_hit(v))
                    REQUIRE(*t.first_hit(v) >= *t.first_hit(v - 1));
            }
            REQUIRE(t.first_hit(spec.n) == r.result.evaluations);
        }
        const auto table = fixed_target_table(records, spec.n);
        const auto evals = evaluations_of(records);
        CHECK(table.at(spec.n).hit_count == spec.runs);
        CHECK(table.at(spec.n).avg_evals
            == doctest::Approx(std::accumulate(evals.begin(), evals.end(), 0.0) / spec.runs).epsilon(1e-15));
        CHECK(table.at(0).avg_evals == 1.0);
    }
}

TEST_CASE("budget-limited runs leave high targets undefined")
{
    ExperimentSpec spec;
    spec.algorithm = RlsConfig {};
    spec.n = 1000;
    spec.runs = 3;
    spec.budget = 800;
    spec.trace = true;
    const auto records = run_experiment(spec);
    const auto table = fixed_target_table(records, spec.n);
    CHECK(table.at(1000).hit_count == 0);
    CHECK(table.at(500).hit_count == 3);
}
