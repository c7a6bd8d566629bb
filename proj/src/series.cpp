#include "ebp/series.hpp"

#include <cstdio>

#include "ebp/errors.hpp"

namespace ebp {

Date parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3 ||
        text.size() != 10)
        throw DomainError("bad date '" + text + "', expected YYYY-MM-DD");
    std::chrono::year_month_day ymd{std::chrono::year{y},
                                    std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DomainError("invalid calendar day '" + text + "'");
    return Date{ymd};
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

CaseSeries::CaseSeries(Date start, std::vector<std::int64_t> daily)
    : start_(start), daily_(std::move(daily)) {
    cum_.reserve(daily_.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < daily_.size(); ++i) {
        if (daily_[i] < 0)
            throw ValidationError("daily count must be >= 0 (day " +
                                  std::to_string(i + 1) + ")");
        acc += daily_[i];
        cum_.push_back(acc);
    }
}

std::int64_t CaseSeries::z2(int day) const {
    if (day < 1 || day > n())
        throw DomainError("day " + std::to_string(day) + " outside series 1.." +
                          std::to_string(n()));
    return daily_[static_cast<std::size_t>(day) - 1];
}

std::int64_t CaseSeries::u(int day) const {
    if (day < 1 || day > n())
        throw DomainError("day " + std::to_string(day) + " outside series 1.." +
                          std::to_string(n()));
    return cum_[static_cast<std::size_t>(day) - 1];
}

Date CaseSeries::date(int day) const {
    if (day < 1 || day > n())
        throw DomainError("day " + std::to_string(day) + " outside series 1.." +
                          std::to_string(n()));
    return start_ + std::chrono::days{day - 1};
}

} // namespace ebp
