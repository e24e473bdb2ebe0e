#include "commands.hpp"

#include "podsum/asymptotics.hpp"
#include "podsum/config.hpp"
#include "podsum/errors.hpp"
#include "podsum/parallel.hpp"
#include "podsum/podsum.hpp"
#include "podsum/spod.hpp"
#include "podsum/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#ifndef PODSUM_VERSION
#define PODSUM_VERSION "unknown"
#endif

namespace podsum::cli {

namespace {

using json = nlohmann::ordered_json;

/// Failure that maps directly to an exit code.
struct Exit {
    int code;
    std::string message;
};

struct GridOptions {
    std::vector<double> m;
    std::vector<double> m_log;
};

struct CommonOptions {
    std::string csv;
    bool timing = false;
};

struct SumOptions {
    std::string spec;
    GridOptions grid;
    double rtol = 1e-8;
    std::size_t max_d = kDefaultMaxPrefix;
    CommonOptions common;
};

struct BoundOptions {
    std::string spec;
    GridOptions grid;
    std::size_t max_order = 32;
    double rtol = 1e-8;
    std::size_t max_d = kDefaultMaxPrefix;
    CommonOptions common;
};

struct RateOptions {
    GridOptions grid;
    double rho = 2.0;
    double sigma = 0.0;
    std::vector<double> c{1.0};
    std::size_t alpha = 1;
    double theta = 0.0;
    double rtol = 1e-6;
    std::size_t max_d = 1u << 16;
    std::size_t d = 256;
    std::size_t max_order = 24;
    CommonOptions common;
};

struct VerifyOptions {
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::size_t n = 1000;
    std::size_t mc_samples = 100'000;
    std::string spec;
    bool text = false;
    CommonOptions common;
};

struct LoadedSpec {
    FamilySpec family;
    std::string digest;
};

LoadedSpec load_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Exit{kUsage, "cannot open spec file '" + path + "'"};
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {parse_family(text), spec_digest(text)};
}

std::vector<double> make_grid(const GridOptions& g, std::vector<double> fallback)
{
    std::vector<double> grid = g.m;
    if (!g.m_log.empty()) {
        if (g.m_log.size() != 3) {
            throw Exit{kUsage, "--m-log expects three values: a b n"};
        }
        const double n = g.m_log[2];
        if (!(n >= 1.0) || n != std::floor(n)) {
            throw Exit{kUsage, "--m-log point count n must be a positive integer"};
        }
        const auto extra = log_grid(g.m_log[0], g.m_log[1], static_cast<std::size_t>(n));
        grid.insert(grid.end(), extra.begin(), extra.end());
    }
    if (grid.empty()) {
        grid = std::move(fallback);
    }
    for (double m : grid) {
        if (!std::isfinite(m) || !(m > 0.0)) {
            throw Exit{kUsage, "every m must be finite and positive"};
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

/// Finite values as numbers, everything else as the given flag strings.
json value_or_flag(double v, const char* pos_inf_flag, const char* neg_inf_flag = "zero")
{
    if (std::isfinite(v)) {
        return v;
    }
    return v > 0 ? pos_inf_flag : neg_inf_flag;
}

json naive_field(const std::optional<NaiveBound>& naive)
{
    if (!naive) {
        return "n/a";
    }
    switch (naive->status) {
    case NaiveBound::Status::Finite:
        return naive->log_value;
    case NaiveBound::Status::Diverged:
        return "diverged";
    case NaiveBound::Status::Indeterminate:
        return "indeterminate";
    }
    return "n/a";
}

json environment(std::optional<std::uint64_t> seed)
{
    json env;
    env["version"] = PODSUM_VERSION;
    env["seed"] = seed ? json(*seed) : json(nullptr);
    return env;
}

std::string csv_cell(const json& v)
{
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string quoted = "\"";
        for (char ch : s) {
            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        }
        return quoted + "\"";
    }
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

void write_csv(const std::string& path, const json& rows)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Exit{kUsage, "cannot write CSV file '" + path + "'"};
    }
    if (rows.empty()) {
        return;
    }
    bool first = true;
    for (const auto& item : rows.front().items()) {
        out << (first ? "" : ",") << item.key();
        first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& item : row.items()) {
            out << (first ? "" : ",") << csv_cell(item.value());
            first = false;
        }
        out << '\n';
    }
}

json command_echo(const std::vector<std::string>& args)
{
    json a = json::array();
    for (const auto& s : args) {
        a.push_back(s);
    }
    return a;
}

void emit(json report, const json& rows, const CommonOptions& common, std::chrono::steady_clock::time_point start,
          std::ostream& out)
{
    report["rows"] = rows;
    if (common.timing) {
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (!common.csv.empty()) {
        write_csv(common.csv, rows);
    }
    out << report.dump(2) << '\n';
}

json base_report(const std::string& command, const std::vector<std::string>& args, const std::string& digest,
                 const char* family, std::optional<std::uint64_t> seed)
{
    json r;
    r["command"] = command;
    r["argv"] = command_echo(args);
    r["spec_digest"] = digest.empty() ? json(nullptr) : json(digest);
    r["family"] = family ? json(family) : json(nullptr);
    r["environment"] = environment(seed);
    return r;
}

void require_spod_summable(const SPODSpec& spec)
{
    const SpodClassification cls = spod_classify(spec);
    if (cls.status != SpodClass::Summable) {
        throw NotSummable(cls.reason);
    }
}

json truncation_fields(json row, const AdaptiveResult& r, bool converged)
{
    row["exact_lo"] = value_or_flag(r.log_value, "diverged");
    row["converged"] = converged;
    row["d"] = r.truncation.d;
    row["L"] = r.truncation.max_order;
    row["rel_change"] = value_or_flag(r.truncation.rel_change, "n/a");
    return row;
}

template <class F>
std::pair<AdaptiveResult, bool> adaptive_or_last(F&& f)
{
    try {
        return {f(), true};
    } catch (const BudgetExceeded& e) {
        return {AdaptiveResult{e.last_log_value(), Truncation{e.prefix_length(), e.max_order(), kPosInf}}, false};
    }
}

int cmd_sum(const SumOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const LoadedSpec spec = load_spec(o.spec);
    const auto grid = make_grid(o.grid, {1.0});
    json rows = json::array();
    std::vector<json> built(grid.size());
    const bool is_pod = std::holds_alternative<PODSpec>(spec.family);
    if (const auto* pod = std::get_if<PODSpec>(&spec.family)) {
        const Classification cls = classify(*pod);
        if (!cls.summable) {
            throw NotSummable(cls.reason);
        }
        parallel_for(grid.size(), [&](std::size_t i) {
            const double m = grid[i];
            const auto [r, ok] = adaptive_or_last([&] { return adaptive_sum(*pod, m, o.rtol, o.max_d); });
            json row;
            row["m"] = m;
            row = truncation_fields(std::move(row), r, ok);
            row["naive"] = naive_field(pod->gamma.is_factorial_power(1.0) ? std::optional(naive_bound(*pod, m))
                                                                          : std::nullopt);
            built[i] = std::move(row);
        });
    } else {
        const auto& sp = std::get<SPODSpec>(spec.family);
        require_spod_summable(sp);
        parallel_for(grid.size(), [&](std::size_t i) {
            const double m = grid[i];
            const auto [r, ok] = adaptive_or_last([&] { return spod_adaptive_sum(sp, m, o.rtol, o.max_d); });
            json row;
            row["m"] = m;
            row = truncation_fields(std::move(row), r, ok);
            row["naive"] = "n/a";
            built[i] = std::move(row);
        });
    }
    for (auto& r : built) {
        rows.push_back(std::move(r));
    }
    json report = base_report("sum", args, spec.digest, is_pod ? "pod" : "spod", std::nullopt);
    report["rtol"] = o.rtol;
    emit(std::move(report), rows, o.common, start, out);
    return kOk;
}

int cmd_bound(const BoundOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    if (o.max_order == 0) {
        throw Exit{kUsage, "--L must be positive"};
    }
    const LoadedSpec spec = load_spec(o.spec);
    const auto grid = make_grid(o.grid, {1.0});
    std::vector<json> built(grid.size());
    std::vector<char> violation(grid.size(), 0);
    const bool is_pod = std::holds_alternative<PODSpec>(spec.family);

    std::optional<PODSpec> reduced;
    if (const auto* sp = std::get_if<SPODSpec>(&spec.family)) {
        require_spod_summable(*sp);
        reduced = PODSpec{sp->gamma(), reduced_upsilon(*sp)};
    } else {
        const Classification cls = classify(std::get<PODSpec>(spec.family));
        if (!cls.summable) {
            throw NotSummable(cls.reason);
        }
    }

    parallel_for(grid.size(), [&](std::size_t i) {
        const double m = grid[i];
        json row;
        row["m"] = m;
        AdaptiveResult exact;
        bool converged = true;
        Theorem1Bound t1;
        std::optional<NaiveBound> naive;
        if (const auto* pod = std::get_if<PODSpec>(&spec.family)) {
            std::tie(exact, converged) = adaptive_or_last([&] { return adaptive_sum(*pod, m, o.rtol, o.max_d); });
            t1 = theorem1_bound(*pod, m, o.max_order);
            if (pod->gamma.is_factorial_power(1.0)) {
                naive = naive_bound(*pod, m);
            }
        } else {
            const auto& sp = std::get<SPODSpec>(spec.family);
            std::tie(exact, converged) =
                adaptive_or_last([&] { return spod_adaptive_sum(sp, m, o.rtol, o.max_d); });
            // S(m) <= S(max(m, 1)) <= reduced POD sum at max(m, 1).
            t1 = theorem1_bound(*reduced, std::max(m, 1.0), o.max_order);
        }
        row = truncation_fields(std::move(row), exact, converged);
        row["theorem1"] = t1.certified ? value_or_flag(t1.log_value, "unbounded-at-L") : json("unbounded-at-L");
        row["theorem1_partial"] = value_or_flag(t1.log_partial, "diverged");
        row["certified_from"] = t1.ratio_certified_from ? json(*t1.ratio_certified_from) : json("none");
        row["naive"] = is_pod ? naive_field(naive) : json("n/a");
        if (t1.certified && std::isfinite(t1.log_value) && exact.log_value != kNegInf &&
            exact.log_value - t1.log_value > 1e-12 * std::max(1.0, std::abs(t1.log_value))) {
            violation[i] = 1;
        }
        row["dominance"] = violation[i] ? "violated" : "ok";
        built[i] = std::move(row);
    });

    json rows = json::array();
    for (auto& r : built) {
        rows.push_back(std::move(r));
    }
    json report = base_report("bound", args, spec.digest, is_pod ? "pod" : "spod", std::nullopt);
    report["L"] = o.max_order;
    report["rtol"] = o.rtol;
    emit(std::move(report), rows, o.common, start, out);
    const auto bad = std::count(violation.begin(), violation.end(), 1);
    if (bad > 0) {
        err << "error: certified lower bound exceeded the theorem1 bound on " << bad << " row(s)\n";
        return kDominanceBug;
    }
    return kOk;
}

int cmd_rate(const RateOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const auto grid = make_grid(o.grid, {1e2, 1e3, 1e4});
    json rows = json::array();
    json report;

    if (o.theta > 0.0) {
        const ThetaSeries ts(o.theta);
        const auto rate = theta_rate(ts, grid);
        report = base_report("rate", args, "", nullptr, std::nullopt);
        report["mode"] = "theta";
        report["theta"] = o.theta;
        for (const auto& [m, v] : rate) {
            const double scale = std::exp(-std::log(m) / o.theta);
            const Interval s = theta_sandwich(ts, m);
            json row;
            row["m"] = m;
            row["normalized_log"] = v;
            row["theta"] = o.theta;
            row["sandwich_lo"] = scale * s.lo;
            row["sandwich_hi"] = scale * s.hi;
            rows.push_back(std::move(row));
        }
    } else if (o.alpha > 1 || o.c.size() > 1) {
        const auto g = SpodGrowthConstants::make(o.alpha, o.rho, o.sigma, o.c);
        const std::size_t d = std::max(o.d, o.max_order);
        const auto bracket = spod_growth_bracket(g, grid, d, o.max_order);
        report = base_report("rate", args, "", "spod", std::nullopt);
        report["mode"] = "spod";
        json c;
        c["alpha"] = g.alpha;
        c["rho"] = g.rho;
        c["sigma"] = g.sigma;
        c["c_values"] = g.c_values;
        c["c_max"] = g.c_max;
        c["c_prime"] = g.c_prime;
        c["c_alpha_rho"] = g.c_alpha_rho;
        c["ell_star"] = g.ell_star;
        c["lower_const"] = g.lower_const;
        c["upper_const"] = g.upper_const;
        c["d"] = d;
        c["L"] = o.max_order;
        report["constants"] = c;
        for (const auto& p : bracket.points) {
            json row;
            row["m"] = p.m;
            row["lower"] = p.lower;
            row["truncated"] = p.truncated ? value_or_flag(*p.truncated, "diverged") : json("n/a");
            row["upper"] = value_or_flag(p.upper, "diverged");
            row["lower_const"] = g.lower_const;
            row["upper_const"] = g.upper_const;
            rows.push_back(std::move(row));
        }
    } else {
        const RateBracket b = theorem5_bracket(o.rho, o.sigma, o.c.front());
        const PODSpec spec{OrderProfile::factorial_power(o.sigma), WeightSequence::poly_decay(o.c.front(), o.rho)};
        const auto points = empirical_rate(spec, grid, o.rtol, o.max_d);
        report = base_report("rate", args, "", "pod", std::nullopt);
        report["mode"] = "pod";
        json c;
        c["rho"] = b.rho;
        c["sigma"] = b.sigma;
        c["c_upsilon"] = b.c_upsilon;
        c["c_rho"] = b.c_rho;
        c["lower_const"] = b.lower_const;
        c["upper_const"] = b.upper_const;
        report["bracket"] = c;
        for (const auto& p : points) {
            json row;
            row["m"] = p.m;
            row["lower_series"] = p.lower_series;
            row["exact_lo"] = value_or_flag(p.exact_lo, "diverged");
            row["exact_converged"] = p.exact_converged;
            row["upper"] = value_or_flag(p.upper, "unbounded-at-L");
            row["upper_L"] = p.upper_order;
            row["lower_const"] = b.lower_const;
            row["upper_const"] = b.upper_const;
            rows.push_back(std::move(row));
        }
    }
    emit(std::move(report), rows, o.common, start, out);
    return kOk;
}

int cmd_verify(const VerifyOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    verify::Options opts;
    opts.seed = o.seed;
    opts.n = o.n;
    opts.mc_samples = o.mc_samples;
    std::string digest;
    if (!o.spec.empty()) {
        LoadedSpec spec = load_spec(o.spec);
        opts.spec = std::move(spec.family);
        digest = spec.digest;
    }
    const auto checks = verify::run_suite(o.suite, opts);
    bool all_passed = true;
    json rows = json::array();
    for (const auto& c : checks) {
        all_passed = all_passed && c.passed;
        json row;
        row["check"] = c.name;
        row["passed"] = c.passed;
        row["observed"] = c.observed;
        row["required"] = c.required;
        rows.push_back(std::move(row));
    }
    if (o.text) {
        for (const auto& c : checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << ": observed " << c.observed << "; required "
                << c.required << '\n';
        }
        out << (all_passed ? "all checks passed" : "some checks FAILED") << '\n';
        if (!o.common.csv.empty()) {
            write_csv(o.common.csv, rows);
        }
    } else {
        json report = base_report("verify", args, digest, nullptr, o.seed);
        report["suite"] = o.suite;
        report["n"] = o.n;
        report["mc_samples"] = o.mc_samples;
        report["passed"] = all_passed;
        emit(std::move(report), rows, o.common, start, out);
    }
    return all_passed ? kOk : kCheckFailed;
}

void add_grid(CLI::App* sub, GridOptions& g)
{
    sub->add_option("--m", g.m, "Evaluation points m (comma separated or repeated)")
        ->delimiter(',')
        ->envname("PODSUM_M");
    sub->add_option("--m-log", g.m_log, "Log-spaced grid: a b n (n points from a to b)")
        ->expected(3)
        ->delimiter(',')
        ->envname("PODSUM_M_LOG");
}

void add_common(CLI::App* sub, CommonOptions& c)
{
    sub->add_option("--csv", c.csv, "Also write the row table as CSV to PATH")->envname("PODSUM_CSV");
    sub->add_flag("--timing", c.timing, "Include wall time in the report (breaks byte-identical output)")
        ->envname("PODSUM_TIMING");
}

} // namespace

std::string spec_digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> log_grid(double a, double b, std::size_t n)
{
    if (!(a > 0.0) || !(b > 0.0) || n == 0) {
        throw InvalidArgument("log grid needs a, b > 0 and n >= 1");
    }
    if (n == 1) {
        return {a};
    }
    std::vector<double> out(n);
    const double la = std::log10(a);
    const double step = (std::log10(b) - la) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, la + step * static_cast<double>(i));
    }
    out.front() = a;
    out.back() = b;
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bounds and growth rates for POD and SPOD weighted sums"};
    app.name("podsum");
    app.set_version_flag("--version", PODSUM_VERSION);
    app.require_subcommand(1);

    SumOptions sum;
    auto* sum_cmd = app.add_subcommand("sum", "Certified lower bounds on log S_gamma(m)");
    sum_cmd->add_option("--spec", sum.spec, "Weight-family JSON file")->required()->envname("PODSUM_SPEC");
    add_grid(sum_cmd, sum.grid);
    sum_cmd->add_option("--rtol", sum.rtol, "Relative tolerance of the adaptive refinement")
        ->envname("PODSUM_RTOL")
        ->check(CLI::PositiveNumber);
    sum_cmd->add_option("--max-d", sum.max_d, "Largest prefix length d")->envname("PODSUM_MAX_D");
    add_common(sum_cmd, sum.common);

    BoundOptions bound;
    auto* bound_cmd = app.add_subcommand("bound", "Lower bound next to the theorem1 and geometric bounds");
    bound_cmd->add_option("--spec", bound.spec, "Weight-family JSON file")->required()->envname("PODSUM_SPEC");
    add_grid(bound_cmd, bound.grid);
    bound_cmd->add_option("--L", bound.max_order, "Order cutoff L of the theorem1 partial sum")
        ->envname("PODSUM_L");
    bound_cmd->add_option("--rtol", bound.rtol, "Relative tolerance of the adaptive refinement")
        ->envname("PODSUM_RTOL")
        ->check(CLI::PositiveNumber);
    bound_cmd->add_option("--max-d", bound.max_d, "Largest prefix length d")->envname("PODSUM_MAX_D");
    add_common(bound_cmd, bound.common);

    RateOptions rate;
    auto* rate_cmd = app.add_subcommand("rate", "Normalized growth curves against their bracket constants");
    add_grid(rate_cmd, rate.grid);
    rate_cmd->add_option("--rho", rate.rho, "Decay exponent rho")->envname("PODSUM_RHO");
    rate_cmd->add_option("--sigma", rate.sigma, "Factorial power sigma")->envname("PODSUM_SIGMA");
    rate_cmd->add_option("--c", rate.c, "C_Upsilon, or c_1..c_alpha for SPOD")
        ->delimiter(',')
        ->envname("PODSUM_C");
    rate_cmd->add_option("--alpha", rate.alpha, "SPOD smoothness alpha")
        ->envname("PODSUM_ALPHA")
        ->check(CLI::PositiveNumber);
    rate_cmd->add_option("--theta", rate.theta, "Theta-series mode with this theta")->envname("PODSUM_THETA");
    rate_cmd->add_option("--rtol", rate.rtol, "Tolerance of the exact-sum curve")
        ->envname("PODSUM_RTOL")
        ->check(CLI::PositiveNumber);
    rate_cmd->add_option("--max-d", rate.max_d, "Largest prefix length of the exact-sum curve")
        ->envname("PODSUM_MAX_D");
    rate_cmd->add_option("--d", rate.d, "Prefix length of the SPOD truncated curve")->envname("PODSUM_D");
    rate_cmd->add_option("--L", rate.max_order, "Order cutoff of the SPOD truncated curve")->envname("PODSUM_L");
    add_common(rate_cmd, rate.common);

    VerifyOptions ver;
    auto* verify_cmd = app.add_subcommand("verify", "Property suites with pass/fail per check");
    verify_cmd->add_option("suite", ver.suite, "lemma2, spod-reduction, mc or all")
        ->check(CLI::IsMember({"lemma2", "spod-reduction", "mc", "all"}))
        ->envname("PODSUM_SUITE");
    verify_cmd->add_option("--seed", ver.seed, "Random seed")->envname("PODSUM_SEED");
    verify_cmd->add_option("--n", ver.n, "Random instances per check")->envname("PODSUM_N");
    verify_cmd->add_option("--mc-samples", ver.mc_samples, "Draws per Monte Carlo run")
        ->envname("PODSUM_MC_SAMPLES");
    verify_cmd->add_option("--spec", ver.spec, "Optional weight-family file to check as well")
        ->envname("PODSUM_SPEC");
    verify_cmd->add_flag("--text", ver.text, "Print one line per check instead of JSON")->envname("PODSUM_TEXT");
    add_common(verify_cmd, ver.common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << PODSUM_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*sum_cmd) {
            return cmd_sum(sum, args, out);
        }
        if (*bound_cmd) {
            return cmd_bound(bound, args, out, err);
        }
        if (*rate_cmd) {
            return cmd_rate(rate, args, out);
        }
        return cmd_verify(ver, args, out);
    } catch (const Exit& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const ConfigError& e) {
        err << "error: invalid spec: " << e.what() << '\n';
        return kUsage;
    } catch (const NotSummable& e) {
        err << "not summable: " << e.what() << '\n';
        return kNotSummable;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace podsum::cli
