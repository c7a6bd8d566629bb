// epibranch: two-type branching-process toolkit for partially observed
// epidemics. Subcommands: simulate | estimate | forecast | backtest | report.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ebp/errors.hpp"
#include "ebp/estimate.hpp"
#include "ebp/ingest.hpp"
#include "ebp/io.hpp"
#include "ebp/model.hpp"
#include "ebp/simulate.hpp"
#include "ebp/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ebp;

namespace {

struct Options {
    // io
    std::vector<std::string> inputs;
    std::string out = ".";
    std::string formats = "csv,json";
    bool want_csv = true, want_json = true, want_svg = false;

    // ingestion
    std::string value_kind = "daily";
    std::string region;
    bool fill_missing_zero = false;
    bool allow_corrections = false;
    bool keep_leading_zeros = false;

    // model / simulation
    std::string law_spec; // file path or inline JSON
    std::string family = "geometric";
    double m = 1.1;
    double q = 0.3;
    std::string init_dist; // comma-separated weights
    std::int64_t init_n = 1;
    int days = 30;
    std::int64_t reps = 1000;
    std::int64_t cap = 100'000'000;
    int threads = 0;

    // estimation
    std::string estimator = "harris";
    int window = 5;
    double ci_level = 0.95;
    int ci_reps = 2000;
    double ci_q = 0.05;
    int s_day = 0;
    int horizon = 5;
    double m_override = 0.0;
    bool has_m_override = false;
    bool rolling = false;

    std::uint64_t seed = 0;
    bool has_seed = false;

    std::vector<std::string> argv_echo;
};

void resolve_formats(Options& opt) {
    opt.want_csv = opt.want_json = opt.want_svg = false;
    std::string item;
    std::istringstream ss(opt.formats);
    while (std::getline(ss, item, ',')) {
        if (item == "csv") opt.want_csv = true;
        else if (item == "json") opt.want_json = true;
        else if (item == "svg") opt.want_svg = true;
        else throw DomainError("unknown format '" + item + "'");
    }
}

ParseOptions ingest_options(const Options& opt) {
    ParseOptions p;
    p.value_kind = opt.value_kind == "cumulative" ? ValueKind::cumulative
                                                  : ValueKind::daily;
    if (!opt.region.empty()) p.region_filter = opt.region;
    p.fill_missing_zero = opt.fill_missing_zero;
    p.allow_corrections = opt.allow_corrections;
    p.trim_leading_zeros = !opt.keep_leading_zeros;
    return p;
}

ParseResult load_series(const std::string& path, const Options& opt) {
    return parse_csv(read_file(path), ingest_options(opt));
}

std::string out_path(const Options& opt, const std::string& name) {
    fs::create_directories(opt.out);
    return (fs::path(opt.out) / name).string();
}

json warnings_json(const std::vector<ParseWarning>& warnings) {
    json w = json::array();
    for (const auto& x : warnings) {
        json e;
        e["message"] = x.message;
        if (x.line > 0) e["line"] = x.line;
        w.push_back(e);
    }
    return w;
}

json config_echo(const Options& opt) {
    json c;
    c["argv"] = opt.argv_echo;
    if (opt.has_seed) c["seed"] = opt.seed;
    return c;
}

BootstrapOptions bootstrap_options(const Options& opt) {
    BootstrapOptions b;
    b.level = opt.ci_level;
    b.replicates = opt.ci_reps;
    b.q = opt.ci_q;
    b.window = opt.window;
    return b;
}

void require_seed_for_ci(const Options& opt) {
    if (opt.ci_reps > 0 && !opt.has_seed)
        throw DomainError("--seed is required when confidence intervals are "
                          "on (disable with --ci-reps 0)");
}

OffspringLaw resolve_law(const Options& opt) {
    if (!opt.law_spec.empty()) {
        std::string text = opt.law_spec;
        if (fs::exists(opt.law_spec)) text = read_file(opt.law_spec);
        return law_from_json(text);
    }
    Family fam;
    if (opt.family == "geometric") fam = Family::geometric;
    else if (opt.family == "poisson") fam = Family::poisson;
    else if (opt.family == "finite") fam = Family::finite;
    else throw DomainError("unknown family '" + opt.family + "'");
    return calibrate(fam, opt.m, opt.q);
}

InitialPopulation resolve_init(const Options& opt) {
    if (opt.init_dist.empty()) return InitialPopulation::fixed(opt.init_n);
    std::vector<double> weights;
    std::istringstream ss(opt.init_dist);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            weights.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw DomainError("bad --init-dist weight '" + item + "'");
        }
    }
    return InitialPopulation::distribution(weights);
}

std::vector<std::pair<double, double>> day_points(const EstimatorPath& path) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : path.points)
        pts.push_back({static_cast<double>(p.day), p.value});
    return pts;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Options& opt) {
    ModelConfig cfg{resolve_law(opt), resolve_init(opt), opt.days, opt.cap};
    EnsembleSummary summary = monte_carlo(cfg, opt.reps, opt.seed, opt.threads);

    json meta;
    meta["command"] = "simulate";
    meta["config"] = config_echo(opt);
    meta["law"] = json::parse(law_to_json(cfg.law));
    meta["init"] = json::parse(init_to_json(cfg.init));
    meta["days"] = cfg.days;
    meta["cap"] = cfg.cap;
    meta["reps"] = summary.reps;
    meta["included"] = summary.included;
    meta["exploded"] = summary.exploded;
    meta["extinct_fraction"] = summary.extinct_fraction;
    meta["mean_offspring"] = cfg.law.mean_offspring();
    meta["criticality"] = to_string(classify(cfg.law.mean_offspring()));

    if (opt.want_csv) {
        write_file(out_path(opt, "ensemble.csv"), ensemble_csv(summary));
        try {
            Trajectory traj = simulate_trajectory(cfg, opt.seed, 0);
            write_file(out_path(opt, "trajectory.csv"), trajectory_csv(traj));
            CaseSeries synthetic(parse_date("2020-01-01"), traj.z2);
            write_file(out_path(opt, "cases.csv"), case_series_csv(synthetic));
        } catch (const ExplosionError& e) {
            meta["trajectory_skipped"] = e.what();
        }
    }
    if (opt.want_svg) {
        std::vector<ChartSeries> chart(3);
        chart[0].name = "mean z1";
        chart[1].name = "q2.5";
        chart[2].name = "q97.5";
        for (const auto& d : summary.days) {
            chart[0].points.push_back({double(d.day), d.mean_z1});
            chart[1].points.push_back({double(d.day), d.q025});
            chart[2].points.push_back({double(d.day), d.q975});
        }
        write_file(out_path(opt, "ensemble.svg"),
                   render_line_chart("simulated contaminated population", chart));
    }
    write_file(out_path(opt, "simulate_metadata.json"), meta.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const Options& opt) {
    require_seed_for_ci(opt);
    auto parsed = load_series(opt.inputs.at(0), opt);
    const CaseSeries& series = parsed.series;

    EstimateReport report;
    report.source = opt.inputs.at(0);
    report.start = series.start();
    report.length = series.n();
    report.total = series.total();

    json warnings = warnings_json(parsed.warnings);
    const EstimatorKind kinds[] = {EstimatorKind::harris,
                                   EstimatorKind::lotka_nagaev,
                                   EstimatorKind::crump_hove};
    for (EstimatorKind kind : kinds) {
        try {
            report.paths.push_back(estimator_path(series, kind, opt.window));
        } catch (const Error& e) {
            warnings.push_back({{"message", std::string(e.what())}});
        }
    }
    if (report.paths.empty())
        throw InsufficientDataError("no estimator is defined on this series");

    for (const EstimatorPath& path : report.paths) {
        if (path.points.empty()) continue;
        MeanEstimate point = path.points.back();
        if (opt.ci_reps > 0) {
            try {
                point.ci = ci_mean(series, path.kind, bootstrap_options(opt),
                                   opt.seed);
            } catch (const Error& e) {
                warnings.push_back({{"message", std::string(e.what())}});
            }
        }
        report.point_estimates.push_back(point);
    }

    EstimatorKind selected = estimator_from_string(opt.estimator);
    for (const EstimatorPath& path : report.paths)
        if (path.kind == selected) report.alphas = alpha_path(series, path);

    if (opt.want_csv) {
        for (const EstimatorPath& path : report.paths) {
            std::string name = "m_path_";
            name += to_string(path.kind);
            std::replace(name.begin(), name.end(), '-', '_');
            write_file(out_path(opt, name + ".csv"), estimator_path_csv(path));
        }
    }
    if (opt.want_json) {
        json j = json::parse(estimate_report_json(report));
        j["config"] = config_echo(opt);
        j["warnings"] = warnings;
        write_file(out_path(opt, "estimates.json"), j.dump(2) + "\n");
    }
    if (opt.want_svg) {
        std::vector<ChartSeries> chart;
        for (const EstimatorPath& path : report.paths)
            chart.push_back({to_string(path.kind), day_points(path)});
        write_file(out_path(opt, "m_dynamics.svg"),
                   render_line_chart("daily reproduction mean", chart));
    }
    json meta;
    meta["command"] = "estimate";
    meta["config"] = config_echo(opt);
    meta["warnings"] = warnings;
    meta["validation"] = json::parse(validation_report_json(validate_series(series)));
    write_file(out_path(opt, "estimate_metadata.json"), meta.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- forecast

int cmd_forecast(const Options& opt) {
    auto parsed = load_series(opt.inputs.at(0), opt);
    const CaseSeries& series = parsed.series;
    if (opt.s_day < 1 || opt.s_day > series.n())
        throw DomainError("--s must name a day inside the series (1.." +
                          std::to_string(series.n()) + ")");

    json warnings = warnings_json(parsed.warnings);
    json jf;
    jf["config"] = config_echo(opt);
    jf["base_day"] = opt.s_day;
    jf["horizon"] = opt.horizon;
    jf["curves"] = json::array();

    std::vector<ChartSeries> m1_chart, alpha_chart;
    const EstimatorKind kinds[] = {EstimatorKind::harris,
                                   EstimatorKind::lotka_nagaev,
                                   EstimatorKind::crump_hove};
    int emitted = 0;
    for (EstimatorKind kind : kinds) {
        MeanEstimate m_est;
        try {
            m_est = latest_estimate(series, kind, opt.window);
        } catch (const Error& e) {
            warnings.push_back({{"message", std::string(e.what())}});
            continue;
        }
        if (opt.has_m_override) m_est.value = opt.m_override;
        Forecast f = forecast_unregistered(series, opt.s_day, opt.horizon, m_est);
        std::string stem = to_string(kind);
        std::replace(stem.begin(), stem.end(), '-', '_');
        if (opt.want_csv) {
            write_file(out_path(opt, "forecast_" + stem + ".csv"),
                       forecast_csv(f));
            write_file(out_path(opt, "alpha_" + stem + ".csv"),
                       forecast_alpha_csv(f));
        }
        json jc;
        jc["kind"] = to_string(kind);
        jc["m"] = f.m;
        jc["entries"] = json::array();
        ChartSeries m1s{to_string(kind), {}};
        ChartSeries als{to_string(kind), {}};
        for (const ForecastEntry& e : f.entries) {
            json je;
            je["day"] = e.day;
            je["m1_hat"] = e.m1_hat;
            je["in_sample"] = e.in_sample;
            if (e.alpha) je["alpha"] = *e.alpha;
            jc["entries"].push_back(je);
            m1s.points.push_back({double(e.day), e.m1_hat});
            if (e.alpha) als.points.push_back({double(e.day), *e.alpha});
        }
        jf["curves"].push_back(jc);
        m1_chart.push_back(std::move(m1s));
        alpha_chart.push_back(std::move(als));
        ++emitted;
    }
    if (emitted == 0)
        throw InsufficientDataError("no estimator is defined on this series");

    jf["warnings"] = warnings;
    if (opt.want_json)
        write_file(out_path(opt, "forecast.json"), jf.dump(2) + "\n");
    if (opt.want_svg) {
        write_file(out_path(opt, "forecast.svg"),
                   render_line_chart("expected hidden contaminated mean",
                                     m1_chart));
        write_file(out_path(opt, "alpha.svg"),
                   render_line_chart("registered share", alpha_chart));
    }
    json meta;
    meta["command"] = "forecast";
    meta["config"] = config_echo(opt);
    meta["warnings"] = warnings;
    write_file(out_path(opt, "forecast_metadata.json"), meta.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- backtest

int cmd_backtest(const Options& opt) {
    require_seed_for_ci(opt);
    auto parsed = load_series(opt.inputs.at(0), opt);
    const CaseSeries& series = parsed.series;

    std::optional<double> m_override;
    if (opt.has_m_override) m_override = opt.m_override;
    auto protocol = opt.rolling ? BacktestProtocol::rolling
                                : BacktestProtocol::full_sample;
    auto rows = backtest(series, opt.horizon, m_override, protocol);
    if (opt.ci_reps > 0) {
        auto bounds = ci_backtest(series, opt.horizon, m_override,
                                  bootstrap_options(opt), opt.seed);
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].ci = bounds[i];
    }

    if (opt.want_csv)
        write_file(out_path(opt, "backtest.csv"), backtest_csv(rows));
    if (opt.want_json) {
        json j;
        j["config"] = config_echo(opt);
        j["protocol"] = opt.rolling ? "rolling" : "full-sample";
        if (m_override) j["m_override"] = *m_override;
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["k"] = r.k;
            jr["predicted"] = r.predicted;
            jr["observed"] = r.observed;
            if (r.ci)
                jr["ci"] = {{"lower", r.ci->lower},
                            {"upper", r.ci->upper},
                            {"level", r.ci->level}};
            j["rows"].push_back(jr);
        }
        j["warnings"] = warnings_json(parsed.warnings);
        write_file(out_path(opt, "backtest.json"), j.dump(2) + "\n");
    }
    json meta;
    meta["command"] = "backtest";
    meta["config"] = config_echo(opt);
    write_file(out_path(opt, "backtest_metadata.json"), meta.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(const Options& opt) {
    struct Country {
        std::string label;
        CaseSeries series;
        EstimatorPath harris_path;
        std::vector<AlphaPoint> alphas;
    };
    std::vector<Country> countries;
    json warnings = json::array();

    for (const std::string& input : opt.inputs) {
        Country c;
        c.label = fs::path(input).stem().string();
        for (const auto& existing : countries)
            if (existing.label == c.label) c.label += "_2";
        auto parsed = load_series(input, opt);
        for (const auto& w : warnings_json(parsed.warnings))
            warnings.push_back(w);
        c.series = parsed.series;
        try {
            c.harris_path = estimator_path(c.series, EstimatorKind::harris);
        } catch (const Error& e) {
            warnings.push_back({{"message", input + ": " + e.what()}});
            continue;
        }
        // registered share over the trailing (up to) 20 days
        int s = std::max(1, c.series.n() - 19);
        while (s <= c.series.n() && c.series.z2(s) == 0) ++s;
        if (s <= c.series.n() && !c.harris_path.points.empty()) {
            MeanEstimate m = c.harris_path.points.back();
            Forecast f = forecast_unregistered(c.series, s, 0, m);
            for (const ForecastEntry& e : f.entries)
                if (e.alpha) c.alphas.push_back({e.day, *e.alpha});
        }
        countries.push_back(std::move(c));
    }
    if (countries.empty())
        throw InsufficientDataError("no usable input series");

    // align on the trailing overlap
    std::size_t m_len = std::string::npos, a_len = std::string::npos;
    for (const Country& c : countries) {
        m_len = std::min(m_len, c.harris_path.points.size());
        a_len = std::min(a_len, c.alphas.size());
    }
    bool mismatched = false;
    for (const Country& c : countries)
        if (c.harris_path.points.size() != m_len) mismatched = true;
    if (mismatched)
        warnings.push_back({{"message",
                             "inputs cover different spans; comparison aligned "
                             "on the trailing " + std::to_string(m_len) +
                             " entries"}});

    std::vector<LabeledSeries> m_cols, a_cols;
    for (const Country& c : countries) {
        LabeledSeries mcol{c.label, {}};
        std::size_t skip = c.harris_path.points.size() - m_len;
        for (std::size_t i = skip; i < c.harris_path.points.size(); ++i)
            mcol.values.push_back(c.harris_path.points[i].value);
        m_cols.push_back(std::move(mcol));
        LabeledSeries acol{c.label, {}};
        std::size_t askip = c.alphas.size() - a_len;
        for (std::size_t i = askip; i < c.alphas.size(); ++i)
            acol.values.push_back(c.alphas[i].value);
        a_cols.push_back(std::move(acol));
    }

    if (opt.want_csv) {
        write_file(out_path(opt, "report_m_comparison.csv"),
                   comparison_csv(m_cols));
        write_file(out_path(opt, "report_alpha_comparison.csv"),
                   comparison_csv(a_cols));
    }
    json index;
    index["command"] = "report";
    index["config"] = config_echo(opt);
    index["warnings"] = warnings;
    index["inputs"] = json::array();
    for (const Country& c : countries) {
        json ji;
        ji["label"] = c.label;
        ji["length"] = c.series.n();
        ji["total"] = c.series.total();
        if (!c.harris_path.points.empty()) {
            ji["harris"] = c.harris_path.points.back().value;
            ji["criticality"] =
                to_string(classify(c.harris_path.points.back().value));
        }
        index["inputs"].push_back(ji);
    }
    if (opt.want_json)
        write_file(out_path(opt, "report_index.json"), index.dump(2) + "\n");
    if (opt.want_svg) {
        std::vector<ChartSeries> mc, ac;
        for (const auto& col : m_cols) {
            ChartSeries s{col.label, {}};
            for (std::size_t i = 0; i < col.values.size(); ++i)
                s.points.push_back({double(i + 1), col.values[i]});
            mc.push_back(std::move(s));
        }
        for (const auto& col : a_cols) {
            ChartSeries s{col.label, {}};
            for (std::size_t i = 0; i < col.values.size(); ++i)
                s.points.push_back({double(i + 1), col.values[i]});
            ac.push_back(std::move(s));
        }
        write_file(out_path(opt, "report_m.svg"),
                   render_line_chart("reproduction mean comparison", mc));
        write_file(out_path(opt, "report_alpha.svg"),
                   render_line_chart("registered share comparison", ac));
    }
    write_file(out_path(opt, "report_metadata.json"), index.dump(2) + "\n");
    return 0;
}

void add_io_flags(CLI::App* cmd, Options& opt, bool multi_input) {
    auto* o = cmd->add_option("--input", opt.inputs, "input CSV path(s)");
    o->required();
    if (!multi_input) o->expected(1);
    cmd->add_option("--value-kind", opt.value_kind, "daily or cumulative")
        ->check(CLI::IsMember({"daily", "cumulative"}));
    cmd->add_option("--region", opt.region, "region column filter");
    cmd->add_flag("--fill-missing-zero", opt.fill_missing_zero,
                  "insert zero days into date gaps");
    cmd->add_flag("--allow-corrections", opt.allow_corrections,
                  "clamp negative counts to zero");
    cmd->add_flag("--keep-leading-zeros", opt.keep_leading_zeros,
                  "do not trim zero days before the first case");
}

void add_out_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--format", opt.formats,
                    "comma list of outputs: csv,json,svg");
}

void add_ci_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--ci-level", opt.ci_level, "confidence level");
    cmd->add_option("--ci-reps", opt.ci_reps,
                    "bootstrap replicates (0 disables intervals)");
    cmd->add_option("--ci-q", opt.ci_q,
                    "registration mass of the bootstrap law");
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    for (int i = 0; i < argc; ++i) opt.argv_echo.push_back(argv[i]);

    CLI::App app{"two-type branching-process epidemic toolkit"};
    app.require_subcommand(1);

    CLI::App* sim = app.add_subcommand(
        "simulate", "seeded Monte Carlo simulation of the two-type process");
    add_out_flags(sim, opt);
    sim->add_option("--law", opt.law_spec, "law JSON (inline or a file path)");
    sim->add_option("--family", opt.family,
                    "family for calibration: geometric, poisson or finite")
        ->check(CLI::IsMember({"geometric", "poisson", "finite"}));
    sim->add_option("--m", opt.m, "target daily reproduction mean");
    sim->add_option("--q", opt.q, "registration probability");
    sim->add_option("--init-n", opt.init_n, "fixed initial population");
    sim->add_option("--init-dist", opt.init_dist,
                    "initial distribution weights w1,w2,... over counts 1,2,...");
    sim->add_option("--days", opt.days, "horizon in days");
    sim->add_option("--reps", opt.reps, "Monte Carlo replicates");
    sim->add_option("--cap", opt.cap, "per-day population cap");
    sim->add_option("--threads", opt.threads, "worker threads (0 = auto)");
    sim->add_option("--seed", opt.seed, "master RNG seed")->required();

    CLI::App* est = app.add_subcommand(
        "estimate", "reproduction-mean estimators on an observed series");
    add_io_flags(est, opt, false);
    add_out_flags(est, opt);
    add_ci_flags(est, opt);
    est->add_option("--estimator", opt.estimator,
                    "estimator for the alpha path")
        ->check(CLI::IsMember({"harris", "lotka-nagaev", "crump-hove"}));
    est->add_option("--window", opt.window, "crump-hove window");
    est->add_option("--seed", opt.seed, "bootstrap seed")
        ->each([&opt](const std::string&) { opt.has_seed = true; });

    CLI::App* fc = app.add_subcommand(
        "forecast", "project the hidden contaminated mean from a base day");
    add_io_flags(fc, opt, false);
    add_out_flags(fc, opt);
    fc->add_option("--s", opt.s_day, "base day for the projection")->required();
    fc->add_option("--horizon", opt.horizon, "days beyond the series end");
    fc->add_option("--estimator", opt.estimator, "primary estimator")
        ->check(CLI::IsMember({"harris", "lotka-nagaev", "crump-hove"}));
    fc->add_option("--window", opt.window, "crump-hove window");
    fc->add_option("--m-override", opt.m_override, "use this mean instead")
        ->each([&opt](const std::string&) { opt.has_m_override = true; });

    CLI::App* bt = app.add_subcommand(
        "backtest", "re-predict the last K observed days");
    add_io_flags(bt, opt, false);
    add_out_flags(bt, opt);
    add_ci_flags(bt, opt);
    bt->add_option("--horizon", opt.horizon, "number of trailing days K");
    bt->add_option("--m-override", opt.m_override,
                   "use this mean instead of the Harris estimate")
        ->each([&opt](const std::string&) { opt.has_m_override = true; });
    bt->add_flag("--rolling", opt.rolling,
                 "re-estimate from data before each predicted day");
    bt->add_option("--window", opt.window, "crump-hove window");
    bt->add_option("--seed", opt.seed, "bootstrap seed")
        ->each([&opt](const std::string&) { opt.has_seed = true; });

    CLI::App* rp = app.add_subcommand(
        "report", "compare estimator paths across several series");
    add_io_flags(rp, opt, true);
    add_out_flags(rp, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (sim->parsed()) opt.has_seed = true;

    try {
        resolve_formats(opt);
        if (sim->parsed()) return cmd_simulate(opt);
        if (est->parsed()) return cmd_estimate(opt);
        if (fc->parsed()) return cmd_forecast(opt);
        if (bt->parsed()) return cmd_backtest(opt);
        if (rp->parsed()) return cmd_report(opt);
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
