#include "twscore/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twscore {

namespace {

constexpr double two_pi = 6.28318530717958647692;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e;
}

} // namespace

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

LoadResult load_dataset(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open " + path);

    LoadResult res;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("load_dataset: empty file " + path);

    const std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> expected = {"station_id", "issue_date", "ens_mean",
                                               "ens_sd",     "obs",        "doy"};
    if (header.size() < expected.size())
        throw std::runtime_error("load_dataset: header must start with "
                                 "station_id,issue_date,ens_mean,ens_sd,obs,doy");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (header[i] != expected[i])
            throw std::runtime_error("load_dataset: unexpected header column '" + header[i] +
                                     "' (expected '" + expected[i] + "')");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = split_csv_line(line);
        auto reject = [&](const std::string& why) {
            res.row_errors.push_back("line " + std::to_string(line_no) + ": " + why);
            ++res.rows_dropped;
        };
        if (f.size() < 6) {
            reject("expected at least 6 fields");
            continue;
        }
        ForecastCase fc;
        fc.station_id = f[0];
        fc.issue_date = f[1];
        int doy = 0;
        if (fc.station_id.empty()) {
            reject("empty station_id");
            continue;
        }
        if (!is_iso_date(fc.issue_date)) {
            reject("malformed issue_date '" + f[1] + "'");
            continue;
        }
        if (!parse_double(f[2], fc.ens_mean)) {
            reject("malformed ens_mean '" + f[2] + "'");
            continue;
        }
        if (!parse_double(f[3], fc.ens_sd) || fc.ens_sd < 0.0) {
            reject("ens_sd must be a number >= 0, got '" + f[3] + "'");
            continue;
        }
        if (f[4].empty() || f[4] == "NA") {
            reject("missing observation");
            continue;
        }
        if (!parse_double(f[4], fc.obs) || fc.obs < 0.0) {
            reject("obs must be a number >= 0, got '" + f[4] + "'");
            continue;
        }
        if (!parse_int(f[5], doy) || doy < 1 || doy > 366) {
            reject("doy must be an integer in [1,366], got '" + f[5] + "'");
            continue;
        }
        fc.ndoy = two_pi * static_cast<double>(doy) / 365.25;
        res.cases.push_back(std::move(fc));
    }

    if (options.strict && !res.row_errors.empty())
        throw std::runtime_error("load_dataset: " + std::to_string(res.row_errors.size()) +
                                 " malformed rows (strict mode); first: " + res.row_errors[0]);

    std::stable_sort(res.cases.begin(), res.cases.end(),
                     [](const ForecastCase& a, const ForecastCase& b) {
                         if (a.station_id != b.station_id) return a.station_id < b.station_id;
                         return a.issue_date < b.issue_date;
                     });
    return res;
}

std::pair<std::vector<ForecastCase>, std::vector<ForecastCase>> split_by_date(
    const std::vector<ForecastCase>& cases, const std::string& boundary) {
    if (!is_iso_date(boundary))
        throw std::domain_error("split_by_date: boundary must be an ISO date (yyyy-mm-dd)");
    std::pair<std::vector<ForecastCase>, std::vector<ForecastCase>> out;
    for (const ForecastCase& fc : cases) {
        // ISO dates order lexicographically.
        if (fc.issue_date <= boundary)
            out.first.push_back(fc);
        else
            out.second.push_back(fc);
    }
    return out;
}

std::string cases_to_csv(const std::vector<ForecastCase>& cases) {
    std::string out = "station_id,issue_date,ens_mean,ens_sd,obs,doy\n";
    char buf[32];
    const auto fmt = [&buf](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, ptr);
    };
    for (const ForecastCase& fc : cases) {
        const int doy = static_cast<int>(std::lround(fc.ndoy * 365.25 / two_pi));
        out += fc.station_id + ',' + fc.issue_date + ',' + fmt(fc.ens_mean) + ',' +
               fmt(fc.ens_sd) + ',' + fmt(fc.obs) + ',' + std::to_string(doy) + '\n';
    }
    return out;
}

} // namespace twscore
