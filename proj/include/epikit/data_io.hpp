#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epikit/errors.hpp"

namespace epikit {

struct Date {
    int year{0}, month{0}, day{0};

    static std::optional<Date> parse(const std::string& iso);
    std::string iso() const;
    /// Days since the civil epoch 1970-01-01; differences give day offsets.
    long serial() const;
    auto operator<=>(const Date&) const = default;
};

/// Cumulative case/death series in the date,cases,deaths layout. Real feeds
/// contain corrections, so monotonicity violations are recorded as warnings
/// rather than rejected.
struct CaseSeries {
    std::vector<Date> dates;
    std::vector<std::int64_t> cases, deaths;
    std::vector<std::string> warnings;

    std::size_t size() const { return dates.size(); }
};

CaseSeries read_case_csv(const std::string& path);
CaseSeries parse_case_csv(const std::string& text);

struct DiffSeries {
    std::vector<Date> dates;              // one shorter than the input
    std::vector<std::int64_t> values;
    bool has_negative{false};
};

/// First differences of a cumulative column.
DiffSeries daily_new(const std::vector<Date>& dates, const std::vector<std::int64_t>& values);

/// Trailing moving average, warm-started with shorter windows at the head;
/// output length equals input length.
std::vector<double> moving_average(const std::vector<double>& values, int window = 7);

/// Deterministic 17-significant-digit float formatting shared by all writers.
std::string format_double(double x);

void write_case_series_csv(const CaseSeries& series, const std::string& path);
void write_case_series_json(const CaseSeries& series, const std::string& path);
CaseSeries read_case_series_json(const std::string& path);

/// Resolve a data path against EPIKIT_DATA_DIR when the file is not found
/// where given.
std::string resolve_data_path(const std::string& path);

} // namespace epikit
