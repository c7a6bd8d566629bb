#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ebp/series.hpp"

namespace ebp {

enum class ValueKind { daily, cumulative };

struct ParseOptions {
    ValueKind value_kind = ValueKind::daily;
    std::optional<std::string> region_filter;
    // Insert zero-count days into date gaps instead of failing.
    bool fill_missing_zero = false;
    // Clamp negative values to zero (data corrections) instead of failing.
    bool allow_corrections = false;
    // Day 1 is the first positive count; leading zero days are dropped.
    bool trim_leading_zeros = true;
};

struct ParseWarning {
    std::size_t line = 0; // 0 when not tied to a specific input line
    std::string message;
};

struct ParseResult {
    CaseSeries series;
    std::vector<ParseWarning> warnings;
};

// CSV grammar: header `date,value[,region]`, ISO dates, integer values,
// UTF-8, one row per day. Cumulative inputs are converted to daily counts.
// Every failure names the offending 1-based line.
ParseResult parse_csv(std::string_view content, const ParseOptions& opts = {});

// First differences with z2[1] = u[1]. Throws DataError on a decreasing
// input unless clamp_decreasing (then the difference is clamped to zero).
std::vector<std::int64_t> daily_from_cumulative(const std::vector<std::int64_t>& u,
                                                bool clamp_decreasing = false);

// Running sums; exact inverse of daily_from_cumulative.
std::vector<std::int64_t> cumulative_from_daily(const std::vector<std::int64_t>& z2);

struct ValidationReport {
    int length = 0;
    std::vector<int> zero_days; // 1-based days with a zero count
    std::int64_t total = 0;
    int leading_zeros = 0; // zero days before the first positive count
    bool usable = false;   // enough data for the estimators downstream
};

ValidationReport validate_series(const CaseSeries& series);
std::string validation_report_json(const ValidationReport& report);

} // namespace ebp
