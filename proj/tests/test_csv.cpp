#include <doctest.h>

#include <sstream>

#include "onell/csv.hpp"
#include "onell/errors.hpp"
#include "onell/presets.hpp"

using namespace onell;

TEST_CASE("reals round-trip with 17 digits")
{
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(6671.5) == "6671.5");
    CHECK(format_real(3.0) == "3");
    for (double v : {std::pow(1.5, 0.25), 2.0 / 3.0, 1e-300, 123456789.123})
        CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("split")
{
    CHECK(split_csv_line("a,,b\r") == std::vector<std::string> {"a", "", "b"});
    CHECK(split_csv_line("") == std::vector<std::string> {""});
}

TEST_CASE("runs CSV round trip")
{
    for (const char* preset : {"dyn-C", "stat-1000", "rls"}) {
        ExperimentSpec spec;
        spec.algorithm = *find_preset(preset);
        spec.n = 150;
        spec.runs = 9;
        spec.master_seed = 3;
        const auto records = run_experiment(spec);
        std::stringstream csv;
        write_runs_csv(csv, spec, records);
        const auto text = csv.str();
        CHECK(text.rfind(std::string(runs_csv_header) + "\n", 0) == 0);

        const auto rows = read_runs_csv(csv);
        REQUIRE(rows.size() == records.size());
        std::vector<double> evals;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].algo == algorithm_name(spec.algorithm));
            CHECK(rows[i].seed == records[i].seed);
            CHECK(rows[i].evaluations == records[i].result.evaluations);
            CHECK(rows[i].success == records[i].result.success);
            CHECK(rows[i].budget == spec.budget);
            evals.push_back(static_cast<double>(rows[i].evaluations));
        }
        const auto a = summarize(evals, spec.n);
        const auto b = summarize_runs(records, spec.n);
        CHECK(a.mean == b.mean);
        CHECK(a.sd == b.sd);
        CHECK(a.q98 == b.q98);
    }
}

TEST_CASE("inapplicable columns are empty")
{
    ExperimentSpec spec;
    spec.algorithm = *find_preset("stat-1000");
    spec.n = 50;
    std::ostringstream csv;
    RunRecord r;
    r.seed = 12;
    r.result.evaluations = 77;
    r.result.success = true;
    r.result.final_fitness = 50;
    write_runs_csv(csv, spec, {r});
    CHECK(csv.str().substr(csv.str().find('\n') + 1) == "static,50,12,,,,,,5,60,7,0.0143,150000,77,1,50\n");

    spec.algorithm = RlsConfig {};
    std::ostringstream rls;
    write_runs_csv(rls, spec, {r});
    CHECK(rls.str().substr(rls.str().find('\n') + 1) == "rls,50,12,,,,,,,,,,150000,77,1,50\n");
}

TEST_CASE("malformed runs CSV")
{
    std::istringstream bad_header("algo,n\n");
    CHECK_THROWS_AS(read_runs_csv(bad_header), ConfigError);
    std::istringstream bad_row(std::string(runs_csv_header) + "\nrls,50,x,,,,,,,,,,1,1,1,1\n");
    CHECK_THROWS_AS(read_runs_csv(bad_row), ConfigError);
    std::istringstream short_row(std::string(runs_csv_header) + "\nrls,50\n");
    CHECK_THROWS_AS(read_runs_csv(short_row), ConfigError);
}

TEST_CASE("sweep, fixed-target and audit CSV layout")
{
    std::ostringstream sweep;
    write_sweep_csv(sweep, {SweepCell {1.5, 0.5, 2.5, 100.0, 3, 4}});
    CHECK(sweep.str() == "A,b,success_rate,mean_successful,success_count,runs\n1.5,0.5,2.5,100,3,4\n");

    FixedTargetTable t;
    t.n = 1;
    t.runs = 2;
    t.rows = {{0, 1.0, 2, 1.0}, {1, 0.0, 0, 0.0}};
    const GradientCurve g {{0}, {0.25}};
    std::ostringstream ft;
    write_fixed_target_csv(ft, t, &g);
    CHECK(ft.str() == "target,avg_evals,hit_count,avg_lambda1,gradient\n0,1,2,1,0.25\n1,,0,,\n");

    const ParamSpace space {{{"A", ParamKind::Real, 1, 2}, {"k", ParamKind::Integer, 1, 9}}};
    std::ostringstream audit;
    write_audit_csv(audit, space, {AuditEntry {1, 4, {1.25, 3.0}, 2, 99, 500, 500.0, true}});
    CHECK(audit.str() == "iteration,config_id,A,k,instance,seed,evaluations,cost,censored\n1,4,1.25,3,2,99,500,500,1\n");
}
