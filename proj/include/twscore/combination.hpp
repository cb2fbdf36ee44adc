#pragma once

#include "twscore/emos.hpp"

#include <map>
#include <string>
#include <vector>

namespace twscore {

// Linear pool of two predictive distributions:
// F_pool = lambda * F_crps + (1 - lambda) * F_twcrps.
struct PoolForecast {
    double lambda = 0.5;
    Distribution f_crps;
    Distribution f_twcrps;
};

double pool_cdf(const PoolForecast& p, double x);
std::vector<double> pool_sample(const PoolForecast& p, std::size_t n, std::uint64_t seed);

// Score of the pooled CDF. CRPS and twCRPS go through quadrature (no closed
// form exists for the two-component truncated mixture); Brier is affine in
// the CDF. Only Crps, TwCrps, and Brier are accepted.
double pool_score(const PoolForecast& p, const ScoreSpec& spec, double y);

// 1 - s_model / s_ref; requires s_ref > 0.
double skill_score(double s_model, double s_ref);

// Probability integral transform F(y).
double pit(const Distribution& d, double y);

struct ReportRow {
    std::string station_id;
    std::string model_id;
    std::string metric;
    double threshold_quantile = 0.0;
    double value = 0.0;
};

struct SkillReport {
    std::vector<ReportRow> rows;
};

// One labelled model collection, one entry per station.
struct ModelSet {
    std::string label;
    std::map<std::string, EmosModel> by_station;
};

// Per-station evaluation of every model over the evaluation quantile grid.
// Thresholds are the per-station quantiles of threshold_obs (the training
// observations); quantile 0 denotes the unweighted CRPS. Emits per-station
// mean twCRPS/Brier rows, aggregate (station "ALL") means, skill scores vs
// the reference label, and 95% station bands on the aggregate skill rows.
SkillReport threshold_sweep(const std::vector<ModelSet>& models,
                            std::span<const ForecastCase> test,
                            std::span<const double> eval_quantiles,
                            const std::map<std::string, std::vector<double>>& threshold_obs,
                            const std::string& reference_label);

// Serialize as long-format CSV: station_id,model_id,metric,threshold_quantile,value.
std::string report_to_csv(const SkillReport& report);

} // namespace twscore
