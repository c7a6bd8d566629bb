#pragma once

#include <string>
#include <vector>

#include "ebp/estimate.hpp"
#include "ebp/series.hpp"
#include "ebp/simulate.hpp"

namespace ebp {

// Shortest decimal string that round-trips the value. Keeps CSV and JSON
// output byte-stable across runs.
std::string format_double(double v);

// columns: day,z1,z2 (day 0 has no registrations, written as 0)
std::string trajectory_csv(const Trajectory& traj);

// columns: day,mean_z1,mean_z2,var_z1,q025,q50,q975 for days 1..horizon
std::string ensemble_csv(const EnsembleSummary& summary);

// columns: date,value; parses back through parse_csv
std::string case_series_csv(const CaseSeries& series);

// columns: day,m
std::string estimator_path_csv(const EstimatorPath& path);

// columns: day,m1_hat,in_sample
std::string forecast_csv(const Forecast& forecast);

// columns: day,alpha (in-sample entries with a defined share)
std::string forecast_alpha_csv(const Forecast& forecast);

// columns: k,predicted,observed[,ci_lower,ci_upper]
std::string backtest_csv(const std::vector<BacktestRow>& rows);

// columns: day,<label1>,<label2>,...; rows aligned on the trailing overlap,
// day 1 = first aligned entry. Cells may be empty when a value is missing.
struct LabeledSeries {
    std::string label;
    std::vector<double> values;
};
std::string comparison_csv(const std::vector<LabeledSeries>& columns);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace ebp
