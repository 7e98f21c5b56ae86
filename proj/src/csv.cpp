#include "onell/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <type_traits>

#include "onell/errors.hpp"

namespace onell {

std::string format_real(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

namespace {

template <typename T>
T parse_number(const std::string& field, std::string_view what)
{
    T value {};
    const auto* end = field.data() + field.size();
    const auto res = std::from_chars(field.data(), end, value);
    if (field.empty() || res.ec != std::errc() || res.ptr != end)
        throw ConfigError("runs CSV: malformed " + std::string(what) + " '" + field + "'");
    return value;
}

std::vector<std::string> parameter_columns(const AlgorithmSpec& spec)
{
    std::vector<std::string> cols(9);
    const auto dyn_cols = [&](const DynConfig& d) {
        cols[0] = format_real(d.alpha);
        cols[1] = format_real(d.beta);
        cols[2] = format_real(d.gamma);
        cols[3] = format_real(d.A);
        cols[4] = format_real(d.b);
    };
    std::visit(
        [&](const auto& cfg) {
            using T = std::decay_t<decltype(cfg)>;
            if constexpr (std::is_same_v<T, DynConfig>) {
                dyn_cols(cfg);
            } else if constexpr (std::is_same_v<T, SwitchConfig>) {
                dyn_cols(cfg.dyn);
            } else if constexpr (std::is_same_v<T, StaticConfig>) {
                cols[5] = std::to_string(cfg.lambda1);
                cols[6] = std::to_string(cfg.lambda2);
                cols[7] = std::to_string(cfg.k);
                cols[8] = format_real(cfg.c);
            }
        },
        spec);
    return cols;
}

} // namespace

void write_runs_csv(std::ostream& out, const ExperimentSpec& spec, const std::vector<RunRecord>& records)
{
    const auto name = algorithm_name(spec.algorithm);
    std::string params;
    for (const auto& col : parameter_columns(spec.algorithm))
        params += col + ',';
    out << runs_csv_header << '\n';
    for (const auto& r : records)
        out << name << ',' << spec.n << ',' << r.seed << ',' << params << spec.budget << ','
            << r.result.evaluations << ',' << (r.result.success ? 1 : 0) << ',' << r.result.final_fitness << '\n';
}

std::vector<RunRow> read_runs_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("runs CSV: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != runs_csv_header)
        throw ConfigError("runs CSV: unexpected header");

    std::vector<RunRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        auto f = split_csv_line(line);
        if (f.size() != 16)
            throw ConfigError("runs CSV: expected 16 fields, got " + std::to_string(f.size()));
        RunRow row;
        row.algo = f[0];
        row.n = parse_number<int>(f[1], "n");
        row.seed = parse_number<std::uint64_t>(f[2], "seed");
        row.params.assign(f.begin() + 3, f.begin() + 12);
        row.budget = parse_number<std::int64_t>(f[12], "budget");
        row.evaluations = parse_number<std::int64_t>(f[13], "evaluations");
        const int success = parse_number<int>(f[14], "success");
        if (success != 0 && success != 1)
            throw ConfigError("runs CSV: success must be 0 or 1");
        row.success = success == 1;
        row.final_fitness = parse_number<int>(f[15], "final_fitness");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells)
{
    out << "A,b,success_rate,mean_successful,success_count,runs\n";
    for (const auto& c : cells)
        out << format_real(c.A) << ',' << format_real(c.b) << ',' << format_real(c.success_rate) << ','
            << format_real(c.mean_successful) << ',' << c.success_count << ',' << c.runs << '\n';
}

void write_fixed_target_csv(std::ostream& out, const FixedTargetTable& table, const GradientCurve* gradient)
{
    out << "target,avg_evals,hit_count,avg_lambda1,gradient\n";
    for (const auto& row : table.rows) {
        out << row.target << ',';
        if (row.hit_count > 0)
            out << format_real(row.avg_evals);
        out << ',' << row.hit_count << ',';
        if (row.hit_count > 0)
            out << format_real(row.avg_lambda1);
        out << ',';
        if (gradient)
            if (const auto g = gradient->at(row.target))
                out << format_real(*g);
        out << '\n';
    }
}

void write_audit_csv(std::ostream& out, const ParamSpace& space, const std::vector<AuditEntry>& audit)
{
    out << "iteration,config_id";
    for (const auto& p : space.params)
        out << ',' << p.name;
    out << ",instance,seed,evaluations,cost,censored\n";
    for (const auto& e : audit) {
        out << e.iteration << ',' << e.config_id;
        for (std::size_t i = 0; i < space.size(); ++i) {
            const auto& p = space.params[i];
            out << ',';
            if (p.kind == ParamKind::Integer)
                out << std::llround(e.values[i]);
            else
                out << format_real(e.values[i]);
        }
        out << ',' << e.instance << ',' << e.seed << ',' << e.evaluations << ',' << format_real(e.cost) << ','
            << (e.censored ? 1 : 0) << '\n';
    }
}

void print_stats(std::ostream& out, const RunStats& s)
{
    out << "runs " << s.count << '\n'
        << "mean " << format_real(s.mean) << '\n'
        << "sd " << format_real(s.sd) << '\n'
        << "rsd% " << format_real(s.rsd) << '\n'
        << "q20 " << format_real(s.q20) << '\n'
        << "q25 " << format_real(s.q25) << '\n'
        << "median " << format_real(s.q50) << '\n'
        << "q75 " << format_real(s.q75) << '\n'
        << "q98 " << format_real(s.q98) << '\n'
        << "mean/n " << format_real(s.normalized_mean) << '\n';
}

void print_test_report(std::ostream& out, std::string_view name, const TestReport& r)
{
    out << name << ": statistic " << format_real(r.statistic) << ", p " << format_real(r.p_value)
        << ", mean difference " << format_real(r.mean_difference);
    if (r.degenerate)
        out << ", degenerate";
    out << ", significant at";
    if (r.significant_at.empty())
        out << " none";
    for (double level : r.significant_at) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, level);
        out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
}

} // namespace onell
