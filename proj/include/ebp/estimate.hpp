#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebp/series.hpp"

namespace ebp {

enum class EstimatorKind { lotka_nagaev, harris, crump_hove };

const char* to_string(EstimatorKind k);
EstimatorKind estimator_from_string(const std::string& name);

struct CiBounds {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

struct MeanEstimate {
    EstimatorKind kind = EstimatorKind::harris;
    double value = 0.0;
    int day = 0;    // the estimate at day n consumes observations through n+1
                    // (crump_hove: days n..n+window)
    int window = 0; // crump_hove only
    std::optional<CiBounds> ci;
};

// One-step ratio z2(n+1) / z2(n). Undefined when z2(n) = 0.
MeanEstimate lotka_nagaev(const CaseSeries& series, int day);

// Cumulative ratio (u(n+1) - z2(1)) / u(n); the full-history estimator.
MeanEstimate harris(const CaseSeries& series, int day);

// Windowed ratio sum z2(n+1..n+N) / sum z2(n..n+N-1). window = 1 reduces to
// lotka_nagaev at the same day.
MeanEstimate crump_hove(const CaseSeries& series, int day, int window);

struct EstimatorPath {
    EstimatorKind kind = EstimatorKind::harris;
    int window = 0;
    std::vector<MeanEstimate> points;
    std::vector<int> skipped_days; // days where the estimator was undefined
};

// Rolling estimates over every admissible day, skipping undefined ones.
EstimatorPath estimator_path(const CaseSeries& series, EstimatorKind kind,
                             int window = 5);

// The estimate at the latest admissible day; the value used for forecasts.
MeanEstimate latest_estimate(const CaseSeries& series, EstimatorKind kind,
                             int window = 5);

struct ForecastEntry {
    int day = 0;       // absolute 1-based day index
    double m1_hat = 0; // predicted mean of the hidden contaminated population
    std::optional<double> alpha; // registered share, in-sample days only
    bool in_sample = false;      // day <= series length
    std::optional<CiBounds> ci;
};

struct Forecast {
    int base_day = 0;
    double m = 0.0;
    EstimatorKind kind = EstimatorKind::harris;
    std::vector<ForecastEntry> entries; // days base_day .. n + horizon
};

// Projects the hidden mean forward from base day s: m1_hat(d) = z2(s) m^{d-s},
// computed by repeated multiplication so consecutive entries differ by a
// factor of exactly m. Covers the in-sample tail s..n plus `horizon` days
// beyond the series end.
Forecast forecast_unregistered(const CaseSeries& series, int base_day,
                               int horizon, const MeanEstimate& m_est);

// Registered share z2 / (z2 + m1_hat). Throws UndefinedEstimateError on 0/0.
double alpha(std::int64_t z2_day, double m1_hat);

enum class BacktestProtocol {
    full_sample, // one Harris estimate from the whole series
    rolling      // re-estimated from data before each predicted day
};

struct BacktestRow {
    int k = 0; // days before the series end; rows ordered K..1
    std::int64_t predicted = 0;
    std::int64_t observed = 0;
    std::optional<CiBounds> ci; // integer bounds when present
};

// Re-predicts each of the last `last_days` observations as
// round(z2(d-1) * m), rounding half away from zero. m comes from the Harris
// estimator unless overridden.
std::vector<BacktestRow> backtest(const CaseSeries& series, int last_days,
                                  std::optional<double> m_override = {},
                                  BacktestProtocol protocol = BacktestProtocol::full_sample);

struct BootstrapOptions {
    double level = 0.95;
    int replicates = 2000;
    double q = 0.05; // registration mass of the synthetic geometric law
    int window = 5;  // crump_hove only
};

// Seeded parametric bootstrap: a geometric law is calibrated to the point
// estimate, synthetic series of the same length are simulated starting from
// z2(1) individuals, and the interval is the empirical quantile range of the
// re-estimates over the replicates whose hidden population survives the
// horizon (widened to include the point estimate). Deterministic in seed.
// Throws InsufficientDataError when fewer than 10 re-estimates are defined.
CiBounds ci_mean(const CaseSeries& series, EstimatorKind kind,
                 const BootstrapOptions& opts, std::uint64_t seed);

// Same machinery applied to the one-step backtest predictions; bounds are
// floor/ceil of the prediction quantiles, aligned with backtest() rows.
std::vector<CiBounds> ci_backtest(const CaseSeries& series, int last_days,
                                  std::optional<double> m_override,
                                  const BootstrapOptions& opts,
                                  std::uint64_t seed);

struct AlphaPoint {
    int day = 0;
    double value = 0.0;
};

// Per-day registered share along an estimator path, with the hidden mean at
// day n approximated by m_n^n (one initial individual).
std::vector<AlphaPoint> alpha_path(const CaseSeries& series,
                                   const EstimatorPath& path);

struct EstimateReport {
    std::string source;
    Date start{};
    int length = 0;
    std::int64_t total = 0;
    std::vector<EstimatorPath> paths;
    std::vector<MeanEstimate> point_estimates;
    std::optional<Forecast> forecast;
    std::vector<AlphaPoint> alphas;
    std::vector<BacktestRow> backtest_rows;
};

std::string estimate_report_json(const EstimateReport& report);

} // namespace ebp
