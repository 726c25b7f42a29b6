#include "cli_app.hpp"

#include "report.hpp"

#include "mincollector/asymptotics.hpp"
#include "mincollector/constants.hpp"
#include "mincollector/errors.hpp"
#include "mincollector/exact_moments.hpp"
#include "mincollector/simulation.hpp"
#include "mincollector/stirling.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace mincollector::cli {

namespace {

std::string str(const BigFloat& x) { return x.to_string(); }
std::string str(double x) { return format_double(x); }
std::string str(std::uint64_t x) { return std::to_string(x); }
std::string str(unsigned x) { return std::to_string(x); }
std::string str(const mpq_class& q) { return q.get_str(); }

std::string join(const std::vector<unsigned>& values) {
    std::string out;
    for (unsigned v : values) out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
}

// MINCOLLECTOR_BITS, else the library default.
Precision default_bits() {
    if (const char* env = std::getenv("MINCOLLECTOR_BITS")) {
        char* end = nullptr;
        const long bits = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || bits < 64 || bits > (1 << 20))
            throw DomainError("MINCOLLECTOR_BITS must be an integer in [64, 1048576]");
        return bits;
    }
    return kDefaultBits;
}

struct GlobalOptions {
    std::string format = "text";
    std::string output;
};

struct ExactArgs {
    unsigned n = 0;
    unsigned p = 0;
    double eps = 1e-12;
    bool second = false;
    std::string mode = "auto";
    long bits = 0;
    std::uint64_t budget = kDefaultWorkBudget;
};

Report exact_report(const ExactArgs& a) {
    MomentOptions options;
    options.epsilon = a.eps;
    options.bits = a.bits > 0 ? a.bits : default_bits();
    options.work_budget = a.budget;
    if (a.mode == "exact")
        options.mode = ArithmeticMode::exact_rational;
    else if (a.mode == "float")
        options.mode = ArithmeticMode::high_precision;
    else
        options.mode = ArithmeticMode::automatic;

    const MomentResult r = a.second ? exact_second_moment(a.n, a.p, options) : exact_mean(a.n, a.p, options);
    Report report;
    report.command = "exact";
    report.params = {{"N", str(a.n)}, {"p", str(a.p)}, {"eps", str(a.eps)}, {"bits", std::to_string(options.bits)},
                     {"second_moment", a.second ? "true" : "false"}};
    report.columns = {"N", "p", "mode", "precision_bits", "terms_used", "truncation_bound", "mean"};
    std::vector<std::string> row = {str(r.species), str(r.collectors), std::string(to_string(r.mode)),
                                    std::to_string(r.bits), str(r.terms_used), str(r.truncation_bound), str(r.mean)};
    if (a.second) {
        report.columns.insert(report.columns.end(), {"second_moment", "variance"});
        row.push_back(str(*r.second_moment));
        row.push_back(str(*r.variance));
    }
    report.add_row(std::move(row));
    return report;
}

Report closed_form_report(unsigned n, std::uint64_t budget) {
    const mpq_class closed = pair_closed_form_mean(n, budget);
    const MomentResult series = exact_mean(n, 2, {.epsilon = 1e-12, .work_budget = budget});
    const Precision bits = series.bits;
    const BigFloat closed_value(closed, bits);
    Report report;
    report.command = "closed-form-p2";
    report.params = {{"N", str(n)}};
    report.columns = {"N", "closed_form_mean", "series_mean", "series_truncation_bound", "delta"};
    report.add_row({str(n), str(closed_value), str(series.mean), str(series.truncation_bound),
                    str(closed_value - series.mean)});
    return report;
}

void add_constants_columns(Report& report) {
    report.columns = {"p", "c_p", "w_p", "a_p", "precision_bits", "cancellation_bits", "error_estimate"};
}

Report constants_report(unsigned p, long bits) {
    const Precision requested = bits > 0 ? bits : default_bits();
    const CollectorConstants k = constants(p, requested);
    Report report;
    report.command = "constants";
    report.params = {{"p", str(p)}, {"bits", std::to_string(requested)}};
    add_constants_columns(report);
    report.add_row({str(p), str(k.c), str(k.w), str(k.a), std::to_string(k.precision_bits),
                    std::to_string(k.cancellation_bits), str(k.error_estimate)});
    return report;
}

Report scan_report(unsigned p_max, long bits) {
    const Precision requested = bits > 0 ? bits : default_bits();
    const ScanReport scan = conjecture_scan(p_max, requested);
    Report report;
    report.command = "constants scan";
    report.params = {{"p_max", str(p_max)}, {"bits", std::to_string(requested)}};
    report.columns = {"p", "c_p", "w_p", "a_p", "error_estimate"};
    for (const ScanEntry& e : scan.entries) report.add_row({str(e.p), str(e.c), str(e.w), str(e.a), str(e.error_estimate)});
    std::string diagnostics;
    for (const auto& [p, e] : scan.diagnostics) diagnostics += (diagnostics.empty() ? "" : " ") + str(p) + ":" + e.to_string(20);
    report.summary = {{"precision_bits", std::to_string(scan.precision_bits)},
                      {"violations_positivity", join(scan.nonpositive)},
                      {"violations_decreasing", join(scan.not_decreasing)},
                      {"violations_diagnostic", join(scan.diagnostic_violations)},
                      {"flags_precision", join(scan.precision_flags)},
                      {"flags_nonnegative_c", join(scan.nonnegative_c)},
                      {"diagnostic_e_p", diagnostics},
                      {"conjecture_holds", scan.clean() ? "true" : "false"}};
    return report;
}

Report asym_report(unsigned n, unsigned p, std::uint64_t budget) {
    const CollectorConstants k = constants(p, std::max<Precision>(kEstimatorBits, default_bits()));
    const AsymptoticEstimate e = estimate(n, k);
    Report report;
    report.command = "asym";
    report.params = {{"N", str(n)}, {"p", str(p)}};
    report.columns = {"N", "p", "mean_estimate", "second_moment_estimate", "variance_estimate"};
    std::vector<std::string> row = {str(n), str(p), str(e.mean), str(e.second_moment), str(e.variance)};

    // Exact values only when the series fits the work budget.
    try {
        const MomentResult exact = exact_second_moment(n, p, {.epsilon = 1e-12, .work_budget = budget});
        const Precision bits = exact.bits;
        const BigFloat ln_n = BigFloat::log_of(n, bits);
        const double ln = std::log(static_cast<double>(n));
        const BigFloat nn(static_cast<long>(n), bits);
        const BigFloat mean_gap = exact.mean - e.mean.with_precision(bits);
        const BigFloat second_gap = *exact.second_moment - e.second_moment.with_precision(bits);
        const double mean_residual = std::fabs((mean_gap / nn).to_double()) * n / (ln * ln);
        const double second_residual = std::fabs((second_gap / square(nn)).to_double()) * n / (ln * ln * ln);
        report.columns.insert(report.columns.end(), {"exact_mean", "exact_second_moment", "exact_variance",
                                                     "mean_scaled_residual", "second_moment_scaled_residual",
                                                     "variance_ratio"});
        row.insert(row.end(), {str(exact.mean), str(*exact.second_moment), str(*exact.variance), str(mean_residual),
                               str(second_residual), str((*exact.variance / e.variance.with_precision(bits)).to_double())});
    } catch (const WorkBudgetError&) {
        report.summary.push_back({"exact", "skipped: work budget"});
    }
    report.add_row(std::move(row));
    return report;
}

Report stirling_report(unsigned n, std::uint64_t k, bool regime_only) {
    Report report;
    report.command = "stirling";
    report.params = {{"N", str(n)}, {"k", str(k)}};
    const std::string regime = k >= 2 ? std::string(to_string(regime_of(k, n))) : "other";
    if (regime_only) {
        report.columns = {"N", "k", "regime"};
        report.add_row({str(n), str(k), regime});
        return report;
    }
    const mpq_class q = completion_cdf(n, k);
    const Precision bits = default_bits();
    const BigFloat exact(q, bits);
    report.columns = {"N", "k", "q_k", "regime", "approximation", "relative_error"};
    if (regime == "erdos_szekeres") {
        const BigFloat approx = stirling_erdos_szekeres(k, n, bits);
        report.add_row({str(n), str(k), str(exact), regime, str(approx), str((abs(approx - exact) / exact).to_double())});
    } else {
        report.add_row({str(n), str(k), str(exact), regime, "", ""});
    }
    return report;
}

Report louchard_report(std::uint64_t k, double alpha) {
    const BigFloat approx = stirling_louchard_log(k, alpha);
    const std::uint64_t m = louchard_deficit(k, alpha);
    const BigFloat exact = log(BigFloat(stirling_near_diagonal(k, m), kDefaultBits));
    const BigFloat gap = abs(approx - exact);
    Report report;
    report.command = "louchard";
    report.params = {{"k", str(k)}, {"alpha", str(alpha)}};
    report.columns = {"k", "alpha", "N", "log_main_term", "log_exact", "abs_log_error", "relative_log_error"};
    report.add_row({str(k), str(alpha), str(k - m), str(approx), str(exact), str(gap.to_double()),
                    str((gap / exact).to_double())});
    return report;
}

Report threshold_report(std::uint64_t n) {
    Report report;
    report.command = "threshold";
    report.params = {{"N", str(n)}};
    report.columns = {"N", "c_N"};
    report.add_row({str(n), str(threshold_c_N(n))});
    return report;
}

Report simulate_report(unsigned n, unsigned p, std::uint64_t reps, std::uint64_t seed, const std::string& sampler,
                       std::uint64_t budget) {
    SamplerMode mode = SamplerMode::inverse_transform;
    if (sampler == "bernoulli")
        mode = SamplerMode::bernoulli_loop;
    else if (sampler != "inverse")
        throw DomainError("sampler must be 'inverse' or 'bernoulli'");
    const SimulationStats s = run_simulation(n, p, reps, seed, mode);
    Report report;
    report.command = "simulate";
    report.params = {{"N", str(n)}, {"p", str(p)}, {"reps", str(reps)}, {"seed", str(seed)},
                     {"sampler", std::string(to_string(mode))}};
    report.columns = {"N", "p", "replications", "seed", "sample_mean", "sample_variance", "std_error", "ci95_low",
                      "ci95_high"};
    std::vector<std::string> row = {str(n), str(p), str(reps), str(seed), str(s.sample_mean), str(s.sample_variance),
                                    str(s.std_error), str(s.ci95_low), str(s.ci95_high)};
    try {
        const MomentResult exact = exact_mean(n, p, {.epsilon = 1e-12, .work_budget = budget});
        const double mean = exact.mean.to_double();
        report.columns.insert(report.columns.end(), {"exact_mean", "z_score"});
        row.push_back(str(exact.mean));
        row.push_back(s.std_error > 0 ? str((s.sample_mean - mean) / s.std_error) : str(0.0));
    } catch (const WorkBudgetError&) {
        report.summary.push_back({"exact", "skipped: work budget"});
    }
    report.add_row(std::move(row));
    return report;
}

Report altsum_report(unsigned n, unsigned power, bool expansion, long bits) {
    const Precision requested = bits > 0 ? bits : default_bits();
    const AltSum sum = alt_binomial_log_sum(n, power, requested);
    Report report;
    report.command = "altsum";
    report.params = {{"n", str(n)}, {"power", str(power)}, {"bits", std::to_string(requested)}};
    report.columns = {"n", "power", "precision_bits", "sum", "error_estimate"};
    std::vector<std::string> row = {str(n), str(power), std::to_string(sum.precision_bits), str(sum.value),
                                    str(sum.error_estimate)};
    if (expansion) {
        const BigFloat approx = flajolet_expansion(n, power);
        report.columns.insert(report.columns.end(), {"expansion", "gap"});
        row.push_back(str(approx));
        row.push_back(str(abs(sum.value - approx).to_double()));
    }
    report.add_row(std::move(row));
    return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"High-precision toolkit for the minimum of p independent coupon collectors", "mincollector"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("mincollector ") + MINCOLLECTOR_VERSION);
    GlobalOptions global;
    app.add_option("--format", global.format, "Output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--output", global.output, "Write the report to this file instead of stdout");
    app.fallthrough();

    std::function<Report()> action;
    std::uint64_t budget = kDefaultWorkBudget;

    ExactArgs exact_args;
    auto* exact = app.add_subcommand("exact", "Exact E[M] (and E[M^2], Var[M]) from the Stirling series");
    exact->add_option("--N", exact_args.n, "Number of coupon types")->required()->check(CLI::PositiveNumber);
    exact->add_option("--p", exact_args.p, "Number of collectors")->required()->check(CLI::PositiveNumber);
    exact->add_option("--eps", exact_args.eps, "Absolute truncation tolerance")->check(CLI::PositiveNumber);
    exact->add_flag("--second-moment", exact_args.second, "Also compute E[M^2] and Var[M]");
    exact->add_option("--mode", exact_args.mode, "auto, exact or float")->check(CLI::IsMember({"auto", "exact", "float"}));
    exact->add_option("--bits", exact_args.bits, "MPFR precision for results");
    exact->add_option("--budget", exact_args.budget, "Work budget in big-number operations");
    exact->callback([&] { action = [&] { return exact_report(exact_args); }; });

    unsigned closed_n = 0;
    auto* closed = app.add_subcommand("closed-form-p2", "p = 2 closed-form mean with series cross-check");
    closed->add_option("--N", closed_n, "Number of coupon types")->required()->check(CLI::PositiveNumber);
    closed->add_option("--budget", budget, "Work budget in big-number operations");
    closed->callback([&] { action = [&] { return closed_form_report(closed_n, budget); }; });

    unsigned const_p = 0;
    long const_bits = 0;
    unsigned scan_p_max = 0;
    long scan_bits = 0;
    auto* consts = app.add_subcommand("constants", "Constants c_p, w_p, a_p");
    consts->add_option("--p", const_p, "Number of collectors")->check(CLI::PositiveNumber);
    consts->add_option("--bits", const_bits, "Requested precision (raised to p + 128)");
    auto* scan = consts->add_subcommand("scan", "Check a_p > 0 and decreasing for p = 1..p_max");
    scan->add_option("--p-max", scan_p_max, "Largest p")->required()->check(CLI::PositiveNumber);
    scan->add_option("--bits", scan_bits, "Requested precision (raised to p_max + 128)");
    consts->callback([&] {
        if (scan->parsed()) {
            action = [&] { return scan_report(scan_p_max, scan_bits); };
        } else {
            if (const_p == 0) throw CLI::RequiredError("--p");
            action = [&] { return constants_report(const_p, const_bits); };
        }
    });

    unsigned asym_n = 0, asym_p = 0;
    auto* asym = app.add_subcommand("asym", "Asymptotic estimates, with exact values when affordable");
    asym->add_option("--N", asym_n, "Number of coupon types")->required()->check(CLI::Range(2u, 1u << 30));
    asym->add_option("--p", asym_p, "Number of collectors")->required()->check(CLI::PositiveNumber);
    asym->add_option("--budget", budget, "Work budget for the exact comparison");
    asym->callback([&] { action = [&] { return asym_report(asym_n, asym_p, budget); }; });

    unsigned st_n = 0;
    std::uint64_t st_k = 0;
    bool st_regime = false;
    auto* stirling = app.add_subcommand("stirling", "Exact q_k and the Erdos-Szekeres approximation");
    stirling->add_option("--N", st_n, "Number of coupon types")->required()->check(CLI::PositiveNumber);
    stirling->add_option("--k", st_k, "Number of draws")->required();
    stirling->add_flag("--regime", st_regime, "Only classify (k, N)");
    stirling->callback([&] { action = [&] { return stirling_report(st_n, st_k, st_regime); }; });

    std::uint64_t lo_k = 0;
    double lo_alpha = 0.0;
    auto* louchard = app.add_subcommand("louchard", "Large-deviation main term of ln S(k, k - ceil(k^alpha))");
    louchard->add_option("--k", lo_k, "k")->required();
    louchard->add_option("--alpha", lo_alpha, "alpha in (1/2, 1)")->required();
    louchard->callback([&] { action = [&] { return louchard_report(lo_k, lo_alpha); }; });

    std::uint64_t th_n = 0;
    auto* threshold = app.add_subcommand("threshold", "Smallest j >= 1 with (N+j)/ln(N+j) > N");
    threshold->add_option("--N", th_n, "Number of coupon types")->required()->check(CLI::PositiveNumber);
    threshold->callback([&] { action = [&] { return threshold_report(th_n); }; });

    unsigned sim_n = 0, sim_p = 0;
    std::uint64_t sim_reps = 0, sim_seed = 0;
    std::string sampler = "inverse";
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo estimate of E[M] and Var[M]");
    simulate->add_option("--N", sim_n, "Number of coupon types")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--p", sim_p, "Number of collectors")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--reps", sim_reps, "Replications (>= 2)")->required();
    simulate->add_option("--seed", sim_seed, "64-bit seed")->required();
    simulate->add_option("--sampler", sampler, "inverse or bernoulli")->check(CLI::IsMember({"inverse", "bernoulli"}));
    simulate->add_option("--budget", budget, "Work budget for the exact mean");
    simulate->callback([&] { action = [&] { return simulate_report(sim_n, sim_p, sim_reps, sim_seed, sampler, budget); }; });

    unsigned alt_n = 0, alt_power = 1;
    bool alt_expansion = false;
    long alt_bits = 0;
    auto* altsum = app.add_subcommand("altsum", "sum_k C(n,k) (-1)^k (ln k)^power");
    altsum->add_option("--n", alt_n, "n")->required()->check(CLI::PositiveNumber);
    altsum->add_option("--power", alt_power, "1 or 2")->check(CLI::IsMember({1u, 2u}));
    altsum->add_flag("--expansion", alt_expansion, "Also evaluate the large-n expansion");
    altsum->add_option("--bits", alt_bits, "Requested precision (raised to n + 128)");
    altsum->callback([&] { action = [&] { return altsum_report(alt_n, alt_power, alt_expansion, alt_bits); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "mincollector " << MINCOLLECTOR_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Report report = action();
        const Format format = parse_format(global.format);
        if (global.output.empty()) {
            write(out, report, format);
        } else {
            std::ofstream file(global.output);
            if (!file) throw DomainError("cannot open output file '" + global.output + "'");
            write(file, report, format);
        }
    } catch (const DomainError& e) {
        err << "error: usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionError& e) {
        err << "error: precision: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const WorkBudgetError& e) {
        err << "error: budget: " << e.what() << '\n';
        return kExitBudget;
    }
    return kExitOk;
}

}  // namespace mincollector::cli
