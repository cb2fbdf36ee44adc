#pragma once

#include "twscore/emos.hpp"

#include <string>
#include <vector>

namespace twscore {

struct LoadOptions {
    bool strict = false; // any malformed row is an error instead of a skip
};

struct LoadResult {
    std::vector<ForecastCase> cases; // ordered by (station_id, issue_date)
    std::vector<std::string> row_errors; // "line N: reason"
    std::size_t rows_dropped = 0;
};

// CSV with header station_id,issue_date,ens_mean,ens_sd,obs,doy. Extra
// columns are carried over unparsed. Negative ens_sd/obs, malformed dates
// and out-of-range doy are rejected per row; ndoy = 2*pi*doy/365.25.
LoadResult load_dataset(const std::string& path, const LoadOptions& options = {});

// issue_date <= boundary goes to train, the rest to test.
std::pair<std::vector<ForecastCase>, std::vector<ForecastCase>> split_by_date(
    const std::vector<ForecastCase>& cases, const std::string& boundary);

// Validates yyyy-mm-dd.
bool is_iso_date(const std::string& s);

std::string cases_to_csv(const std::vector<ForecastCase>& cases);

} // namespace twscore
