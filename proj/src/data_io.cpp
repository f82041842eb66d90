#include "epikit/data_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"

namespace epikit {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::optional<std::int64_t> parse_int(const std::string& text) {
    std::int64_t value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
    return value;
}

} // namespace

std::optional<Date> Date::parse(const std::string& iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    const auto y = parse_int(iso.substr(0, 4));
    const auto m = parse_int(iso.substr(5, 2));
    const auto d = parse_int(iso.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    if (*m < 1 || *m > 12 || *d < 1 || *d > 31) return std::nullopt;
    return Date{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

long Date::serial() const {
    // days-from-civil, valid for the Gregorian calendar
    const int y = year - (month <= 2);
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097L + static_cast<long>(doe) - 719468L;
}

CaseSeries parse_case_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    CaseSeries series;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "date,cases,deaths")
                throw ParseError(line_no, "expected header date,cases,deaths");
            saw_header = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
        const auto date = Date::parse(fields[0]);
        if (!date) throw ParseError(line_no, "bad date '" + fields[0] + "'");
        const auto cases = parse_int(fields[1]);
        if (!cases || *cases < 0) throw ParseError(line_no, "bad cases '" + fields[1] + "'");
        const auto deaths = parse_int(fields[2]);
        if (!deaths || *deaths < 0) throw ParseError(line_no, "bad deaths '" + fields[2] + "'");
        if (!series.dates.empty() && !(series.dates.back() < *date))
            throw ParseError(line_no, "dates must strictly increase");
        if (!series.cases.empty() && *cases < series.cases.back())
            series.warnings.push_back("line " + std::to_string(line_no) +
                                      ": cumulative cases decreased (data correction?)");
        if (!series.deaths.empty() && *deaths < series.deaths.back())
            series.warnings.push_back("line " + std::to_string(line_no) +
                                      ": cumulative deaths decreased (data correction?)");
        series.dates.push_back(*date);
        series.cases.push_back(*cases);
        series.deaths.push_back(*deaths);
    }
    if (!saw_header) throw EmptyFileError("no header found");
    if (series.dates.empty()) throw EmptyFileError("no data rows");
    return series;
}

CaseSeries read_case_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_case_csv(buf.str());
}

DiffSeries daily_new(const std::vector<Date>& dates, const std::vector<std::int64_t>& values) {
    if (values.size() < 2) throw TooShortError("need at least two samples to difference");
    DiffSeries out;
    out.values.reserve(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) {
        const std::int64_t d = values[i] - values[i - 1];
        if (d < 0) out.has_negative = true;
        out.values.push_back(d);
        if (i < dates.size()) out.dates.push_back(dates[i]);
    }
    return out;
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
    if (window < 1) throw InvalidParamsError("window must be at least 1");
    std::vector<double> out(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running += values[i];
        if (i >= static_cast<std::size_t>(window)) running -= values[i - window];
        const double width = std::min<std::size_t>(i + 1, window);
        out[i] = running / width;
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_case_series_csv(const CaseSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "date,cases,deaths\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << series.dates[i].iso() << ',' << series.cases[i] << ',' << series.deaths[i] << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void write_case_series_json(const CaseSeries& series, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["dates"] = nlohmann::json::array();
    doc["cases"] = series.cases;
    doc["deaths"] = series.deaths;
    for (const auto& d : series.dates) doc["dates"].push_back(d.iso());
    doc["warnings"] = series.warnings;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

CaseSeries read_case_series_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    CaseSeries series;
    for (const auto& iso : doc.at("dates")) {
        const auto date = Date::parse(iso.get<std::string>());
        if (!date) throw IoError("bad date in " + path);
        series.dates.push_back(*date);
    }
    series.cases = doc.at("cases").get<std::vector<std::int64_t>>();
    series.deaths = doc.at("deaths").get<std::vector<std::int64_t>>();
    if (doc.contains("warnings"))
        series.warnings = doc["warnings"].get<std::vector<std::string>>();
    return series;
}

std::string resolve_data_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("EPIKIT_DATA_DIR")) {
        const fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

} // namespace epikit
