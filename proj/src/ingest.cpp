#include "ebp/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>

#include "ebp/errors.hpp"
#include "json.hpp"

namespace ebp {

namespace {

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::int64_t parse_int(const std::string& text, std::size_t line) {
    if (text.empty()) throw ParseError("empty value", line);
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size())
        throw ParseError("bad integer value '" + text + "'", line);
    return v;
}

struct Row {
    std::size_t line;
    Date date;
    std::int64_t value;
};

} // namespace

ParseResult parse_csv(std::string_view content, const ParseOptions& opts) {
    // split into lines, tolerating CRLF and a missing trailing newline
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= content.size(); ++i) {
        if (i == content.size() || content[i] == '\n') {
            std::string_view line = content.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = i + 1;
        }
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("missing header row", 1);

    auto header = split_fields(lines[0]);
    for (auto& h : header) h = lower(h);
    bool has_region = false;
    if (header.size() == 2 && header[0] == "date" && header[1] == "value") {
        has_region = false;
    } else if (header.size() == 3 && header[0] == "date" &&
               header[1] == "value" && header[2] == "region") {
        has_region = true;
    } else {
        throw ParseError("expected header 'date,value' or 'date,value,region'", 1);
    }
    if (opts.region_filter && !has_region)
        throw ParseError("region filter given but input has no region column", 1);

    ParseResult result;
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;
        auto fields = split_fields(lines[i]);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(fields.size()),
                             line_no);
        if (opts.region_filter && fields[2] != *opts.region_filter) continue;
        Date date;
        try {
            date = parse_date(fields[0]);
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no);
        }
        rows.push_back(Row{line_no, date, parse_int(fields[1], line_no)});
    }

    if (rows.empty()) {
        result.warnings.push_back({0, "no data rows after filtering"});
        return result;
    }

    // enforce strictly increasing contiguous dates, filling gaps on request
    std::vector<Row> contiguous;
    contiguous.push_back(rows[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        Date prev = contiguous.back().date;
        if (rows[i].date <= prev)
            throw ParseError("dates must be strictly increasing", rows[i].line);
        auto gap = (rows[i].date - prev).count();
        if (gap > 1) {
            if (!opts.fill_missing_zero)
                throw ParseError("gap of " + std::to_string(gap - 1) +
                                     " missing day(s) before this row; use "
                                     "fill-missing-zero to insert zero days",
                                 rows[i].line);
            for (long g = 1; g < gap; ++g) {
                std::int64_t filler = opts.value_kind == ValueKind::cumulative
                                          ? contiguous.back().value
                                          : 0;
                contiguous.push_back(Row{rows[i].line, prev + std::chrono::days{g},
                                         filler});
            }
            result.warnings.push_back(
                {rows[i].line, "inserted " + std::to_string(gap - 1) +
                                   " zero day(s) before this row"});
        }
        contiguous.push_back(rows[i]);
    }

    // negative raw values
    for (auto& row : contiguous) {
        if (row.value < 0) {
            if (!opts.allow_corrections)
                throw ParseError("negative value " + std::to_string(row.value) +
                                     "; use allow-corrections to clamp",
                                 row.line);
            result.warnings.push_back(
                {row.line, "negative value " + std::to_string(row.value) +
                               " clamped to 0"});
            row.value = 0;
        }
    }

    // convert to daily counts
    std::vector<std::int64_t> daily;
    daily.reserve(contiguous.size());
    if (opts.value_kind == ValueKind::cumulative) {
        std::int64_t prev = 0;
        for (std::size_t i = 0; i < contiguous.size(); ++i) {
            std::int64_t diff = contiguous[i].value - prev;
            if (diff < 0) {
                if (!opts.allow_corrections)
                    throw ParseError("cumulative value decreases here; use "
                                     "allow-corrections to clamp",
                                     contiguous[i].line);
                result.warnings.push_back(
                    {contiguous[i].line, "decreasing cumulative clamped"});
                diff = 0;
            } else {
                prev = contiguous[i].value;
            }
            daily.push_back(diff);
        }
    } else {
        for (const auto& row : contiguous) daily.push_back(row.value);
    }

    Date start_date = contiguous.front().date;
    if (opts.trim_leading_zeros) {
        std::size_t lead = 0;
        while (lead < daily.size() && daily[lead] == 0) ++lead;
        if (lead > 0 && lead < daily.size()) {
            daily.erase(daily.begin(), daily.begin() + static_cast<std::ptrdiff_t>(lead));
            start_date += std::chrono::days{static_cast<long>(lead)};
            result.warnings.push_back(
                {0, "trimmed " + std::to_string(lead) +
                        " leading zero day(s); day 1 = " + format_date(start_date)});
        }
    }

    result.series = CaseSeries(start_date, std::move(daily));
    return result;
}

std::vector<std::int64_t> daily_from_cumulative(const std::vector<std::int64_t>& u,
                                                bool clamp_decreasing) {
    std::vector<std::int64_t> out;
    out.reserve(u.size());
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::int64_t diff = u[i] - prev;
        if (diff < 0) {
            if (!clamp_decreasing)
                throw DataError("cumulative series decreases at index " +
                                std::to_string(i));
            diff = 0;
        } else {
            prev = u[i];
        }
        out.push_back(diff);
    }
    return out;
}

std::vector<std::int64_t> cumulative_from_daily(const std::vector<std::int64_t>& z2) {
    std::vector<std::int64_t> out;
    out.reserve(z2.size());
    std::int64_t acc = 0;
    for (std::int64_t v : z2) {
        if (v < 0) throw DataError("daily count must be >= 0");
        acc += v;
        out.push_back(acc);
    }
    return out;
}

ValidationReport validate_series(const CaseSeries& series) {
    ValidationReport r;
    r.length = series.n();
    r.total = series.total();
    bool seen_positive = false;
    for (int day = 1; day <= series.n(); ++day) {
        if (series.z2(day) == 0) {
            r.zero_days.push_back(day);
            if (!seen_positive) ++r.leading_zeros;
        } else {
            seen_positive = true;
        }
    }
    r.usable = r.length >= 2 && r.total > 0;
    return r;
}

std::string validation_report_json(const ValidationReport& report) {
    nlohmann::json j;
    j["length"] = report.length;
    j["zero_days"] = report.zero_days;
    j["total"] = report.total;
    j["leading_zeros"] = report.leading_zeros;
    j["usable"] = report.usable;
    return j.dump();
}

} // namespace ebp
