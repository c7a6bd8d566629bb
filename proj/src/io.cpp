#include "ebp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ebp/errors.hpp"

namespace ebp {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "day,z1,z2\n";
    for (std::size_t d = 0; d < traj.z1.size(); ++d) {
        std::int64_t z2 = d == 0 ? 0 : traj.z2[d - 1];
        os << d << ',' << traj.z1[d] << ',' << z2 << '\n';
    }
    return os.str();
}

std::string ensemble_csv(const EnsembleSummary& summary) {
    std::ostringstream os;
    os << "day,mean_z1,mean_z2,var_z1,q025,q50,q975\n";
    for (const DaySummary& ds : summary.days) {
        if (ds.day == 0) continue;
        os << ds.day << ',' << format_double(ds.mean_z1) << ','
           << format_double(ds.mean_z2) << ',' << format_double(ds.var_z1) << ','
           << format_double(ds.q025) << ',' << format_double(ds.q50) << ','
           << format_double(ds.q975) << '\n';
    }
    return os.str();
}

std::string case_series_csv(const CaseSeries& series) {
    std::ostringstream os;
    os << "date,value\n";
    for (int day = 1; day <= series.n(); ++day)
        os << format_date(series.date(day)) << ',' << series.z2(day) << '\n';
    return os.str();
}

std::string estimator_path_csv(const EstimatorPath& path) {
    std::ostringstream os;
    os << "day,m\n";
    for (const MeanEstimate& e : path.points)
        os << e.day << ',' << format_double(e.value) << '\n';
    return os.str();
}

std::string forecast_csv(const Forecast& forecast) {
    std::ostringstream os;
    os << "day,m1_hat,in_sample\n";
    for (const ForecastEntry& e : forecast.entries)
        os << e.day << ',' << format_double(e.m1_hat) << ','
           << (e.in_sample ? 1 : 0) << '\n';
    return os.str();
}

std::string forecast_alpha_csv(const Forecast& forecast) {
    std::ostringstream os;
    os << "day,alpha\n";
    for (const ForecastEntry& e : forecast.entries)
        if (e.alpha) os << e.day << ',' << format_double(*e.alpha) << '\n';
    return os.str();
}

std::string backtest_csv(const std::vector<BacktestRow>& rows) {
    bool with_ci = !rows.empty() && rows.front().ci.has_value();
    std::ostringstream os;
    os << (with_ci ? "k,predicted,observed,ci_lower,ci_upper\n"
                   : "k,predicted,observed\n");
    for (const BacktestRow& row : rows) {
        os << row.k << ',' << row.predicted << ',' << row.observed;
        if (with_ci && row.ci)
            os << ',' << format_double(row.ci->lower) << ','
               << format_double(row.ci->upper);
        os << '\n';
    }
    return os.str();
}

std::string comparison_csv(const std::vector<LabeledSeries>& columns) {
    std::ostringstream os;
    os << "day";
    std::size_t rows = 0;
    for (const LabeledSeries& c : columns) {
        os << ',' << c.label;
        rows = std::max(rows, c.values.size());
    }
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        os << r + 1;
        for (const LabeledSeries& c : columns) {
            os << ',';
            if (r < c.values.size() && !std::isnan(c.values[r]))
                os << format_double(c.values[r]);
        }
        os << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw DataError("short write to '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace ebp
