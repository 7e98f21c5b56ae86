// Command-line front end: run, sweep, tune, fixed-target, compare, stats.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "onell/analysis.hpp"
#include "onell/csv.hpp"
#include "onell/errors.hpp"
#include "onell/experiment.hpp"
#include "onell/presets.hpp"
#include "onell/tuning.hpp"

using namespace onell;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgoFlags {
    std::string preset;
    std::string algo;
    std::optional<double> alpha, beta, gamma, A, b, c;
    std::optional<int> lambda1, lambda2, k, switch_target;
    bool offspring_only = false;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--preset", preset, "named configuration");
        cmd.add_option("--algo", algo, "dyn | static | rls | switch")
            ->check(CLI::IsMember({"dyn", "static", "rls", "switch"}));
        cmd.add_option("--alpha", alpha);
        cmd.add_option("--beta", beta);
        cmd.add_option("--gamma", gamma);
        cmd.add_option("--A", A);
        cmd.add_option("--b", b);
        cmd.add_option("--lambda1", lambda1);
        cmd.add_option("--lambda2", lambda2);
        cmd.add_option("--k", k);
        cmd.add_option("--c", c);
        cmd.add_option("--switch-target", switch_target, "fitness at which RLS hands over to dyn");
        cmd.add_flag("--offspring-only", offspring_only, "static: y is the best crossover offspring only");
    }

    void apply(DynConfig& d) const
    {
        if (alpha) d.alpha = *alpha;
        if (beta) d.beta = *beta;
        if (gamma) d.gamma = *gamma;
        if (A) d.A = *A;
        if (b) d.b = *b;
    }

    AlgorithmSpec resolve() const
    {
        std::optional<AlgorithmSpec> base;
        if (!preset.empty()) {
            base = find_preset(preset);
            if (!base)
                throw ConfigError("unknown preset: " + preset);
        }
        std::string family = algo.empty() ? (base ? algorithm_name(*base) : "dyn") : algo;

        if (family == "dyn" || family == "switch") {
            DynConfig d;
            if (base) {
                if (const auto* p = std::get_if<DynConfig>(&*base))
                    d = *p;
                else if (const auto* s = std::get_if<SwitchConfig>(&*base))
                    d = s->dyn;
                else
                    throw ConfigError("preset " + preset + " is not a dyn configuration");
            }
            apply(d);
            if (family == "dyn") {
                if (switch_target)
                    throw ConfigError("--switch-target requires --algo switch");
                return d;
            }
            if (!switch_target)
                throw ConfigError("--algo switch requires --switch-target");
            return SwitchConfig {*switch_target, d};
        }
        if (family == "static") {
            StaticConfig s;
            if (base) {
                const auto* p = std::get_if<StaticConfig>(&*base);
                if (!p)
                    throw ConfigError("preset " + preset + " is not a static configuration");
                s = *p;
            } else if (!lambda1 || !lambda2 || !k || !c) {
                throw ConfigError("--algo static needs --lambda1 --lambda2 --k --c or a preset");
            }
            if (lambda1) s.lambda1 = *lambda1;
            if (lambda2) s.lambda2 = *lambda2;
            if (k) s.k = *k;
            if (c) s.c = *c;
            s.include_mutant = !offspring_only;
            return s;
        }
        if (base && !std::holds_alternative<RlsConfig>(*base))
            throw ConfigError("preset " + preset + " is not rls");
        return RlsConfig {};
    }
};

struct BatchFlags {
    int n = 1000;
    int runs = 1;
    std::int64_t budget = default_budget;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--n", n, "problem size");
        cmd.add_option("--runs", runs);
        cmd.add_option("--budget", budget, "evaluations per run")->capture_default_str();
        cmd.add_option("--seed", seed, "master seed");
        cmd.add_option("--jobs", jobs, "worker threads");
        cmd.add_option("--out", out, "CSV path (default: standard output)");
    }

    void validate() const
    {
        if (n < 2)
            throw ConfigError("--n must be at least 2");
        if (runs < 1)
            throw ConfigError("--runs must be at least 1");
        if (budget < 1)
            throw ConfigError("--budget must be positive");
        if (jobs < 1)
            throw ConfigError("--jobs must be at least 1");
    }

    ExperimentSpec experiment(const AlgorithmSpec& algorithm, bool trace) const
    {
        validate();
        onell::validate(algorithm, n);
        return {algorithm, n, runs, budget, seed, trace};
    }
};

// Writes through a string so a failing path never leaves a partial file behind.
void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush())
        throw IoError("cannot write " + path);
}

std::vector<RunRow> load_runs(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot read " + path);
    return read_runs_csv(file);
}

std::ostream& report_stream(const std::string& out)
{
    // keep standard output clean when it carries the CSV
    return out.empty() || out == "-" ? std::cerr : std::cout;
}

void print_crossings(std::ostream& os, const FixedTargetTable& a, const FixedTargetTable& b, int window)
{
    const auto first = ft_crossing(a, b, CrossingMode::FirstHit, window);
    const auto grad = ft_crossing(a, b, CrossingMode::Gradient, window);
    os << "crossing first-hit " << (first ? std::to_string(*first) : "none") << '\n';
    os << "crossing gradient " << (grad ? std::to_string(*grad) : "none") << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app {"(1+(lambda,lambda)) GA experiments on OneMax"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "independent runs; writes the runs CSV and prints statistics");
    AlgoFlags run_algo;
    BatchFlags run_batch;
    bool run_trace = false;
    run_algo.attach(*run);
    run_batch.attach(*run);
    run->add_flag("--trace", run_trace, "also write <out>.fixed-target.csv");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "(A, b) grid of dyn runs; writes the heatmap CSV");
    SweepSpec sweep_spec;
    AlgoFlags sweep_algo;
    BatchFlags sweep_batch;
    sweep_batch.runs = sweep_spec.runs;
    sweep_algo.attach(*sweep);
    sweep_batch.attach(*sweep);
    sweep->add_option("--a-min", sweep_spec.a_min)->capture_default_str();
    sweep->add_option("--a-max", sweep_spec.a_max)->capture_default_str();
    sweep->add_option("--a-count", sweep_spec.a_count)->capture_default_str();
    sweep->add_option("--b-min", sweep_spec.b_min)->capture_default_str();
    sweep->add_option("--b-max", sweep_spec.b_max)->capture_default_str();
    sweep->add_option("--b-count", sweep_spec.b_count)->capture_default_str();

    // tune
    auto* tune = app.add_subcommand("tune", "iterated racing; prints the best configuration, writes the audit CSV");
    std::string tune_space = "ab";
    std::int64_t tune_total = 50'000'000;
    TunerOptions tune_opt;
    BatchFlags tune_batch;
    tune_batch.attach(*tune);
    tune->add_option("--space", tune_space, "ab | full | static")->check(CLI::IsMember({"ab", "full", "static"}));
    tune->add_option("--tuning-budget", tune_total, "total evaluations across all runs")->capture_default_str();
    tune->add_option("--first-test", tune_opt.first_test)->capture_default_str();
    tune->add_option("--iterations", tune_opt.iterations, "0 picks from the parameter count");
    tune->add_option("--max-configs", tune_opt.max_configs)->capture_default_str();
    tune->add_option("--max-instances", tune_opt.max_instances)->capture_default_str();
    tune->add_option("--cap-factor", tune_opt.cap_factor)->capture_default_str();

    // fixed-target
    auto* ft = app.add_subcommand("fixed-target", "fixed-target table with smoothed gradient");
    AlgoFlags ft_algo;
    BatchFlags ft_batch;
    int ft_window = default_gradient_window;
    std::string ft_against, ft_against_out;
    ft_algo.attach(*ft);
    ft_batch.attach(*ft);
    ft->add_option("--window", ft_window, "moving-average window")->capture_default_str();
    ft->add_option("--against", ft_against, "preset to compare with; prints crossing targets");
    ft->add_option("--against-out", ft_against_out, "CSV path for the comparison table");

    // compare
    auto* compare = app.add_subcommand("compare", "paired t-test and Wilcoxon test on two runs CSVs");
    std::string cmp_a, cmp_b;
    compare->add_option("file_a", cmp_a)->required();
    compare->add_option("file_b", cmp_b)->required();

    // stats
    auto* stats = app.add_subcommand("stats", "statistics of a runs CSV");
    std::string stats_file;
    stats->add_option("file", stats_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run->parsed()) {
            const auto spec = run_batch.experiment(run_algo.resolve(), run_trace);
            if (run_trace && (run_batch.out.empty() || run_batch.out == "-"))
                throw ConfigError("--trace needs --out");
            const auto records = run_experiment(spec, run_batch.jobs);
            std::ostringstream csv;
            write_runs_csv(csv, spec, records);
            emit(run_batch.out, csv.str());
            if (run_trace) {
                const auto table = fixed_target_table(records, spec.n);
                const auto gradient = ft_gradient(table, default_gradient_window);
                std::ostringstream ft_csv;
                write_fixed_target_csv(ft_csv, table, &gradient);
                emit(run_batch.out + ".fixed-target.csv", ft_csv.str());
            }
            print_stats(report_stream(run_batch.out), summarize_runs(records, spec.n));
        } else if (sweep->parsed()) {
            sweep_batch.validate();
            const auto algorithm = sweep_algo.resolve();
            const auto* tmpl = std::get_if<DynConfig>(&algorithm);
            if (!tmpl)
                throw ConfigError("sweep runs the dyn algorithm only");
            sweep_spec.n = sweep_batch.n;
            sweep_spec.runs = sweep_batch.runs;
            sweep_spec.budget = sweep_batch.budget;
            const auto cells = grid_sweep(sweep_spec, *tmpl, sweep_batch.seed, sweep_batch.jobs);
            std::ostringstream csv;
            write_sweep_csv(csv, cells);
            emit(sweep_batch.out, csv.str());
        } else if (tune->parsed()) {
            tune_batch.validate();
            const auto space = tune_space == "ab" ? dyn_ab_space()
                : tune_space == "full"            ? dyn_full_space()
                                                  : static_space(tune_batch.n);
            const auto family = tune_space == "static" ? TuneFamily::Static : TuneFamily::Dyn;
            const auto result = race_tune(space, family, tune_batch.n, tune_batch.budget, tune_total,
                tune_batch.seed, tune_opt);
            std::ostringstream csv;
            write_audit_csv(csv, space, result.audit);
            emit(tune_batch.out, csv.str());

            auto& os = report_stream(tune_batch.out);
            if (result.budget_warning)
                std::cerr << "warning: tuning budget exhausted before " << tune_opt.first_test
                          << " instances; result is best effort\n";
            os << "best";
            for (std::size_t i = 0; i < space.size(); ++i)
                os << ' ' << space.params[i].name << '=' << format_real(result.best[i]);
            os << "\nmean " << format_real(result.best_mean) << " over " << result.best_instances
               << " instances\nconsumed " << result.consumed << '\n';
            if (family == TuneFamily::Dyn) {
                const auto cfg = dyn_config_from(space, result.best);
                os << "success rate " << format_real(success_rate(cfg.A, cfg.b)) << '\n';
            }
        } else if (ft->parsed()) {
            const auto spec = ft_batch.experiment(ft_algo.resolve(), true);
            const auto table = fixed_target_table(run_experiment(spec, ft_batch.jobs), spec.n);
            const auto gradient = ft_gradient(table, ft_window);
            std::ostringstream csv;
            write_fixed_target_csv(csv, table, &gradient);
            emit(ft_batch.out, csv.str());

            if (!ft_against.empty()) {
                const auto other_algo = find_preset(ft_against);
                if (!other_algo)
                    throw ConfigError("unknown preset: " + ft_against);
                auto other_spec = spec;
                other_spec.algorithm = *other_algo;
                onell::validate(other_spec.algorithm, spec.n);
                const auto other = fixed_target_table(run_experiment(other_spec, ft_batch.jobs), spec.n);
                if (!ft_against_out.empty()) {
                    const auto other_gradient = ft_gradient(other, ft_window);
                    std::ostringstream other_csv;
                    write_fixed_target_csv(other_csv, other, &other_gradient);
                    emit(ft_against_out, other_csv.str());
                }
                print_crossings(report_stream(ft_batch.out), table, other, ft_window);
            }
        } else if (compare->parsed()) {
            const auto a = load_runs(cmp_a);
            const auto b = load_runs(cmp_b);
            if (a.size() != b.size())
                throw ConfigError("pairing error: files differ in run count");
            std::vector<double> ea, eb;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].seed != b[i].seed)
                    throw ConfigError("pairing error: seed mismatch at row " + std::to_string(i + 1));
                ea.push_back(static_cast<double>(a[i].evaluations));
                eb.push_back(static_cast<double>(b[i].evaluations));
            }
            print_test_report(std::cout, "paired t-test", paired_t_test(ea, eb));
            print_test_report(std::cout, "wilcoxon signed-rank", wilcoxon_signed_rank(ea, eb));
        } else if (stats->parsed()) {
            const auto rows = load_runs(stats_file);
            if (rows.empty())
                throw ConfigError("no runs in " + stats_file);
            std::vector<double> evals;
            for (const auto& r : rows)
                evals.push_back(static_cast<double>(r.evaluations));
            print_stats(std::cout, summarize(evals, rows.front().n));
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
