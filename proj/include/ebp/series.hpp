#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace ebp {

using Date = std::chrono::sys_days;

// Strict ISO-8601 calendar day, e.g. "2020-03-08".
Date parse_date(const std::string& text);
std::string format_date(Date d);

// Observed daily registered counts. Day 1 is the first entry; dates are
// contiguous by construction. Cumulative totals are cached at build time.
class CaseSeries {
public:
    CaseSeries() = default;
    CaseSeries(Date start, std::vector<std::int64_t> daily);

    int n() const { return static_cast<int>(daily_.size()); }
    bool empty() const { return daily_.empty(); }

    // day is 1-based
    std::int64_t z2(int day) const;
    std::int64_t u(int day) const; // cumulative through day
    Date date(int day) const;

    Date start() const { return start_; }
    std::int64_t total() const { return cum_.empty() ? 0 : cum_.back(); }
    const std::vector<std::int64_t>& daily() const { return daily_; }

private:
    Date start_{};
    std::vector<std::int64_t> daily_;
    std::vector<std::int64_t> cum_;
};

} // namespace ebp
