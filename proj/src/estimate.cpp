#include "ebp/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "ebp/errors.hpp"
#include "ebp/simulate.hpp"
#include "json.hpp"

namespace ebp {

namespace {

void require_day(const CaseSeries& series, int day, int last_needed,
                 const char* who) {
    if (series.n() < 2)
        throw InsufficientDataError(std::string(who) +
                                    ": series must have at least 2 days");
    if (day < 1 || last_needed > series.n())
        throw DomainError(std::string(who) + ": day " + std::to_string(day) +
                          " not admissible for series of length " +
                          std::to_string(series.n()));
}

// Empirical quantile with linear interpolation between order statistics.
double sorted_quantile(const std::vector<double>& sorted, double frac) {
    if (sorted.empty()) throw DomainError("quantile of empty sample");
    if (sorted.size() == 1) return sorted[0];
    double pos = frac * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= sorted.size() - 1) return sorted.back();
    double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[lo + 1] * w;
}

// Bootstrap re-estimates of the reproduction mean around a point estimate.
// Replicates whose hidden population dies before the horizon are rejected:
// the observed epidemic did survive its window, and without this
// conditioning the estimator's sampling distribution is a mixture with the
// extinction atom, which inflates the quantile range several-fold.
std::vector<double> bootstrap_estimates(const CaseSeries& series,
                                        EstimatorKind kind,
                                        double point_value,
                                        const BootstrapOptions& opts,
                                        std::uint64_t seed) {
    if (!(opts.level > 0.0 && opts.level < 1.0))
        throw DomainError("ci level must lie in (0, 1)");
    if (opts.replicates < 1)
        throw DomainError("ci replicates must be >= 1");

    OffspringLaw law = calibrate(Family::geometric, point_value, opts.q);
    std::int64_t base = std::max<std::int64_t>(1, series.z2(1));
    ModelConfig config{law, InitialPopulation::fixed(base), series.n(),
                       100'000'000};

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(opts.replicates));
    for (int r = 0; r < opts.replicates; ++r) {
        Trajectory traj;
        try {
            traj = simulate_trajectory(config, seed, static_cast<std::uint64_t>(r));
        } catch (const ExplosionError&) {
            continue;
        }
        if (traj.z1.back() == 0) continue; // condition on survival
        CaseSeries synthetic(series.start(), traj.z2);
        try {
            values.push_back(latest_estimate(synthetic, kind, opts.window).value);
        } catch (const Error&) {
            continue; // undefined on this draw
        }
    }
    if (values.size() < 10)
        throw InsufficientDataError(
            "bootstrap produced only " + std::to_string(values.size()) +
            " defined re-estimates (need 10)");
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace

const char* to_string(EstimatorKind k) {
    switch (k) {
    case EstimatorKind::lotka_nagaev: return "lotka-nagaev";
    case EstimatorKind::harris: return "harris";
    case EstimatorKind::crump_hove: return "crump-hove";
    }
    return "?";
}

EstimatorKind estimator_from_string(const std::string& name) {
    if (name == "lotka-nagaev" || name == "lotka_nagaev")
        return EstimatorKind::lotka_nagaev;
    if (name == "harris") return EstimatorKind::harris;
    if (name == "crump-hove" || name == "crump_hove")
        return EstimatorKind::crump_hove;
    throw DomainError("unknown estimator '" + name + "'");
}

MeanEstimate lotka_nagaev(const CaseSeries& series, int day) {
    require_day(series, day, day + 1, "lotka_nagaev");
    std::int64_t denom = series.z2(day);
    if (denom == 0)
        throw UndefinedEstimateError("lotka_nagaev undefined at day " +
                                     std::to_string(day) + ": z2 = 0");
    MeanEstimate e;
    e.kind = EstimatorKind::lotka_nagaev;
    e.day = day;
    e.value = static_cast<double>(series.z2(day + 1)) / static_cast<double>(denom);
    return e;
}

MeanEstimate harris(const CaseSeries& series, int day) {
    require_day(series, day, day + 1, "harris");
    std::int64_t denom = series.u(day);
    if (denom == 0)
        throw UndefinedEstimateError("harris undefined at day " +
                                     std::to_string(day) + ": cumulative sum 0");
    std::int64_t numer = series.u(day + 1) - series.z2(1);
    MeanEstimate e;
    e.kind = EstimatorKind::harris;
    e.day = day;
    e.value = static_cast<double>(numer) / static_cast<double>(denom);
    return e;
}

MeanEstimate crump_hove(const CaseSeries& series, int day, int window) {
    if (window < 1) throw DomainError("crump_hove: window must be >= 1");
    require_day(series, day, day + window, "crump_hove");
    std::int64_t numer = 0, denom = 0;
    for (int i = day + 1; i <= day + window; ++i) numer += series.z2(i);
    for (int j = day; j <= day + window - 1; ++j) denom += series.z2(j);
    if (denom == 0)
        throw UndefinedEstimateError("crump_hove undefined at day " +
                                     std::to_string(day) + ": window sum 0");
    MeanEstimate e;
    e.kind = EstimatorKind::crump_hove;
    e.day = day;
    e.window = window;
    e.value = static_cast<double>(numer) / static_cast<double>(denom);
    return e;
}

EstimatorPath estimator_path(const CaseSeries& series, EstimatorKind kind,
                             int window) {
    if (kind == EstimatorKind::crump_hove && window < 1)
        throw DomainError("estimator_path: window must be >= 1");
    int span = kind == EstimatorKind::crump_hove ? window : 1;
    int last = series.n() - span;
    if (series.n() < 2 || last < 1)
        throw InsufficientDataError("series too short for " +
                                    std::string(to_string(kind)) + " path");
    EstimatorPath path;
    path.kind = kind;
    path.window = kind == EstimatorKind::crump_hove ? window : 0;
    for (int day = 1; day <= last; ++day) {
        try {
            switch (kind) {
            case EstimatorKind::lotka_nagaev:
                path.points.push_back(lotka_nagaev(series, day));
                break;
            case EstimatorKind::harris:
                path.points.push_back(harris(series, day));
                break;
            case EstimatorKind::crump_hove:
                path.points.push_back(crump_hove(series, day, window));
                break;
            }
        } catch (const UndefinedEstimateError&) {
            path.skipped_days.push_back(day);
        }
    }
    return path;
}

MeanEstimate latest_estimate(const CaseSeries& series, EstimatorKind kind,
                             int window) {
    EstimatorPath path = estimator_path(series, kind, window);
    if (path.points.empty())
        throw UndefinedEstimateError(std::string(to_string(kind)) +
                                     " undefined on every admissible day");
    return path.points.back();
}

Forecast forecast_unregistered(const CaseSeries& series, int base_day,
                               int horizon, const MeanEstimate& m_est) {
    if (base_day < 1 || base_day > series.n())
        throw DomainError("forecast base day " + std::to_string(base_day) +
                          " outside series 1.." + std::to_string(series.n()));
    if (horizon < 0) throw DomainError("forecast horizon must be >= 0");
    if (!(m_est.value > 0.0))
        throw DomainError("forecast needs a positive mean estimate");
    std::int64_t base = series.z2(base_day);
    if (base == 0)
        throw DataError("degenerate forecast base: z2(" +
                        std::to_string(base_day) + ") = 0");

    Forecast f;
    f.base_day = base_day;
    f.m = m_est.value;
    f.kind = m_est.kind;
    double value = static_cast<double>(base);
    for (int day = base_day; day <= series.n() + horizon; ++day) {
        ForecastEntry entry;
        entry.day = day;
        entry.m1_hat = value;
        entry.in_sample = day <= series.n();
        if (entry.in_sample) {
            std::int64_t observed = series.z2(day);
            if (observed > 0 || value > 0.0)
                entry.alpha = alpha(observed, value);
        }
        f.entries.push_back(entry);
        value *= m_est.value; // keeps the exact one-step recursion
    }
    return f;
}

double alpha(std::int64_t z2_day, double m1_hat) {
    if (z2_day < 0 || m1_hat < 0.0)
        throw DomainError("alpha: arguments must be >= 0");
    double num = static_cast<double>(z2_day);
    if (num == 0.0 && m1_hat == 0.0)
        throw UndefinedEstimateError("alpha undefined: 0 / 0");
    return num / (num + m1_hat);
}

std::vector<BacktestRow> backtest(const CaseSeries& series, int last_days,
                                  std::optional<double> m_override,
                                  BacktestProtocol protocol) {
    int n = series.n();
    if (last_days < 1 || last_days >= n)
        throw DomainError("backtest window must satisfy 1 <= K < series length");
    double m_full = 0.0;
    if (m_override) {
        if (!(*m_override > 0.0))
            throw DomainError("m override must be positive");
        m_full = *m_override;
    } else if (protocol == BacktestProtocol::full_sample) {
        m_full = harris(series, n - 1).value;
    }
    std::vector<BacktestRow> rows;
    for (int k = last_days; k >= 1; --k) {
        int d = n - k + 1; // day being predicted
        double m = m_full;
        if (!m_override && protocol == BacktestProtocol::rolling) {
            if (d < 3)
                throw DomainError("rolling backtest needs 2 days before each "
                                  "predicted day");
            m = harris(series, d - 2).value; // uses observations 1..d-1
        }
        BacktestRow row;
        row.k = k;
        row.predicted = std::llround(static_cast<double>(series.z2(d - 1)) * m);
        row.observed = series.z2(d);
        rows.push_back(row);
    }
    return rows;
}

CiBounds ci_mean(const CaseSeries& series, EstimatorKind kind,
                 const BootstrapOptions& opts, std::uint64_t seed) {
    MeanEstimate point = latest_estimate(series, kind, opts.window);
    auto values = bootstrap_estimates(series, kind, point.value, opts, seed);
    CiBounds ci;
    ci.level = opts.level;
    ci.lower = std::min(sorted_quantile(values, (1.0 - opts.level) / 2.0),
                        point.value);
    ci.upper = std::max(sorted_quantile(values, (1.0 + opts.level) / 2.0),
                        point.value);
    return ci;
}

std::vector<CiBounds> ci_backtest(const CaseSeries& series, int last_days,
                                  std::optional<double> m_override,
                                  const BootstrapOptions& opts,
                                  std::uint64_t seed) {
    auto rows = backtest(series, last_days, m_override);
    MeanEstimate point = latest_estimate(series, EstimatorKind::harris,
                                         opts.window);
    auto values = bootstrap_estimates(series, EstimatorKind::harris,
                                      point.value, opts, seed);
    int n = series.n();
    std::vector<CiBounds> bounds;
    bounds.reserve(rows.size());
    for (const BacktestRow& row : rows) {
        int d = n - row.k + 1;
        auto prev = static_cast<double>(series.z2(d - 1));
        std::vector<double> predictions;
        predictions.reserve(values.size());
        for (double m : values) predictions.push_back(prev * m);
        CiBounds ci;
        ci.level = opts.level;
        ci.lower = std::floor(sorted_quantile(predictions, (1.0 - opts.level) / 2.0));
        ci.upper = std::ceil(sorted_quantile(predictions, (1.0 + opts.level) / 2.0));
        ci.lower = std::min(ci.lower, static_cast<double>(row.predicted));
        ci.upper = std::max(ci.upper, static_cast<double>(row.predicted));
        bounds.push_back(ci);
    }
    return bounds;
}

std::vector<AlphaPoint> alpha_path(const CaseSeries& series,
                                   const EstimatorPath& path) {
    std::vector<AlphaPoint> out;
    out.reserve(path.points.size());
    for (const MeanEstimate& e : path.points) {
        double m1 = std::pow(e.value, e.day);
        std::int64_t observed = series.z2(e.day);
        if (observed == 0 && m1 == 0.0) continue;
        out.push_back({e.day, alpha(observed, m1)});
    }
    return out;
}

namespace {

using nlohmann::json;

json mean_estimate_json(const MeanEstimate& e) {
    json j;
    j["kind"] = to_string(e.kind);
    j["value"] = e.value;
    j["day"] = e.day;
    if (e.window > 0) j["window"] = e.window;
    if (e.ci) {
        j["ci"] = {{"lower", e.ci->lower},
                   {"upper", e.ci->upper},
                   {"level", e.ci->level}};
    }
    return j;
}

} // namespace

std::string estimate_report_json(const EstimateReport& report) {
    json j;
    j["series_meta"] = {{"source", report.source},
                        {"start", format_date(report.start)},
                        {"length", report.length},
                        {"total", report.total}};
    j["estimator_paths"] = json::array();
    for (const EstimatorPath& path : report.paths) {
        json p;
        p["kind"] = to_string(path.kind);
        if (path.window > 0) p["window"] = path.window;
        p["skipped_days"] = path.skipped_days;
        p["points"] = json::array();
        for (const MeanEstimate& e : path.points)
            p["points"].push_back({{"day", e.day}, {"value", e.value}});
        j["estimator_paths"].push_back(p);
    }
    j["point_estimates"] = json::array();
    for (const MeanEstimate& e : report.point_estimates)
        j["point_estimates"].push_back(mean_estimate_json(e));
    if (report.forecast) {
        json f;
        f["base_day"] = report.forecast->base_day;
        f["m"] = report.forecast->m;
        f["kind"] = to_string(report.forecast->kind);
        f["entries"] = json::array();
        for (const ForecastEntry& e : report.forecast->entries) {
            json je;
            je["day"] = e.day;
            je["m1_hat"] = e.m1_hat;
            je["in_sample"] = e.in_sample;
            if (e.alpha) je["alpha"] = *e.alpha;
            if (e.ci)
                je["ci"] = {{"lower", e.ci->lower},
                            {"upper", e.ci->upper},
                            {"level", e.ci->level}};
            f["entries"].push_back(je);
        }
        j["forecast"] = f;
    }
    j["alpha_path"] = json::array();
    for (const AlphaPoint& a : report.alphas)
        j["alpha_path"].push_back({{"day", a.day}, {"value", a.value}});
    j["backtest"] = json::array();
    for (const BacktestRow& row : report.backtest_rows) {
        json r;
        r["k"] = row.k;
        r["predicted"] = row.predicted;
        r["observed"] = row.observed;
        if (row.ci)
            r["ci"] = {{"lower", row.ci->lower},
                       {"upper", row.ci->upper},
                       {"level", row.ci->level}};
        j["backtest"].push_back(r);
    }
    return j.dump(2);
}

} // namespace ebp
