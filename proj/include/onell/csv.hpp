#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onell/algorithms.hpp"
#include "onell/analysis.hpp"
#include "onell/experiment.hpp"
#include "onell/trace.hpp"
#include "onell/tuning.hpp"

namespace onell {

/// Locale-independent rendering with 17 significant digits.
std::string format_real(double value);

/// Splits one CSV line on commas. Fields are never quoted by this library.
std::vector<std::string> split_csv_line(std::string_view line);

inline constexpr std::string_view runs_csv_header =
    "algo,n,seed,alpha,beta,gamma,A,b,lambda1,lambda2,k,c,budget,evaluations,success,final_fitness";

/// One parsed row of a runs CSV; parameter columns are kept as written.
struct RunRow {
    std::string algo;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> params;   // alpha .. c, empty where inapplicable
    std::int64_t budget = 0;
    std::int64_t evaluations = 0;
    bool success = false;
    int final_fitness = 0;
};

void write_runs_csv(std::ostream& out, const ExperimentSpec& spec, const std::vector<RunRecord>& records);
/// Throws ConfigError on a wrong header or a malformed row.
std::vector<RunRow> read_runs_csv(std::istream& in);

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

/// `gradient` may be empty; otherwise its values fill the column where defined.
void write_fixed_target_csv(std::ostream& out, const FixedTargetTable& table, const GradientCurve* gradient);

void write_audit_csv(std::ostream& out, const ParamSpace& space, const std::vector<AuditEntry>& audit);

/// Human-readable block used by the CLI.
void print_stats(std::ostream& out, const RunStats& stats);
void print_test_report(std::ostream& out, std::string_view name, const TestReport& report);

} // namespace onell
