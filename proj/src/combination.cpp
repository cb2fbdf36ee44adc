#include "twscore/combination.hpp"

#include "twscore/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twscore {

namespace {

void check(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

double pool_cdf(const PoolForecast& p, double x) {
    check(p.lambda >= 0.0 && p.lambda <= 1.0, "pool: lambda must lie in [0,1]");
    return p.lambda * cdf(p.f_crps, x) + (1.0 - p.lambda) * cdf(p.f_twcrps, x);
}

std::vector<double> pool_sample(const PoolForecast& p, std::size_t n, std::uint64_t seed) {
    check(p.lambda >= 0.0 && p.lambda <= 1.0, "pool: lambda must lie in [0,1]");
    CounterRng pick(seed, 1);
    CounterRng value(seed, 2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Distribution& comp = (pick.uniform(i) <= p.lambda) ? p.f_crps : p.f_twcrps;
        out[i] = quantile(comp, value.uniform(i));
    }
    return out;
}

double pool_score(const PoolForecast& p, const ScoreSpec& spec, double y) {
    check(p.lambda >= 0.0 && p.lambda <= 1.0, "pool: lambda must lie in [0,1]");
    auto F = [&p](double x) { return pool_cdf(p, x); };
    switch (spec.kind) {
        case ScoreKind::Brier: {
            const double prob = F(spec.tau);
            const double diff = prob - (y >= spec.tau ? 1.0 : 0.0);
            return diff * diff;
        }
        case ScoreKind::TwCrps:
            return twcrps_quadrature(F, spec.tau, y, 1e-10).value;
        case ScoreKind::Crps: {
            // Start the integral at the pooled lower support end; for
            // unbounded components fall back to -inf handling.
            const double lo = std::min(support(p.f_crps).first, support(p.f_twcrps).first);
            const double tau =
                std::isfinite(lo) ? lo : -std::numeric_limits<double>::infinity();
            return twcrps_quadrature(F, tau, y, 1e-10).value;
        }
        default:
            throw std::domain_error("pool_score: only crps, twcrps and brier are defined");
    }
}

double skill_score(double s_model, double s_ref) {
    check(s_ref > 0.0, "skill_score: reference score must be > 0");
    return 1.0 - s_model / s_ref;
}

double pit(const Distribution& d, double y) {
    return cdf(d, y);
}

namespace {

double percentile_of(const std::vector<double>& sorted_vals, double q) {
    // Shared definition with percentile_threshold (values pre-sorted here).
    const double h = 1.0 + (static_cast<double>(sorted_vals.size()) - 1.0) * q;
    const std::size_t k = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(k);
    if (k >= sorted_vals.size()) return sorted_vals.back();
    if (frac == 0.0) return sorted_vals[k - 1];
    return sorted_vals[k - 1] + frac * (sorted_vals[k] - sorted_vals[k - 1]);
}

} // namespace

SkillReport threshold_sweep(const std::vector<ModelSet>& models,
                            std::span<const ForecastCase> test,
                            std::span<const double> eval_quantiles,
                            const std::map<std::string, std::vector<double>>& threshold_obs,
                            const std::string& reference_label) {
    if (test.empty()) throw std::domain_error("threshold_sweep: empty test set");
    for (double q : eval_quantiles)
        check(q >= 0.0 && q < 1.0, "threshold_sweep: quantiles must lie in [0,1)");

    // Group test cases by station, preserving input order.
    std::map<std::string, std::vector<const ForecastCase*>> by_station;
    for (const ForecastCase& fc : test) by_station[fc.station_id].push_back(&fc);

    // Sorted training observations per station, for quantile thresholds.
    std::map<std::string, std::vector<double>> sorted_obs;
    for (const auto& [st, obs] : threshold_obs) {
        std::vector<double> v = obs;
        std::sort(v.begin(), v.end());
        sorted_obs[st] = std::move(v);
    }

    const ModelSet* reference = nullptr;
    for (const ModelSet& ms : models)
        if (ms.label == reference_label) reference = &ms;

    SkillReport rep;

    // metric value per (model, station, quantile); metric "twcrps" at q=0 is
    // the unweighted CRPS.
    struct Cell {
        double twcrps = 0.0;
        double brier = 0.0;
    };
    std::map<std::string, std::map<std::string, std::map<double, Cell>>> cells;

    for (const ModelSet& ms : models) {
        for (const auto& [station, cases] : by_station) {
            auto mit = ms.by_station.find(station);
            if (mit == ms.by_station.end()) continue;
            auto sit = sorted_obs.find(station);
            if (sit == sorted_obs.end() || sit->second.empty()) continue;
            const EmosModel& model = mit->second;

            for (double q : eval_quantiles) {
                Cell cell;
                if (q == 0.0) {
                    double acc = 0.0;
                    for (const ForecastCase* fc : cases)
                        acc += crps_closed(predictive_distribution(model, *fc), fc->obs).value;
                    cell.twcrps = acc / static_cast<double>(cases.size());
                    cell.brier = std::numeric_limits<double>::quiet_NaN();
                } else {
                    const double tau = percentile_of(sit->second, q);
                    double acc = 0.0, accb = 0.0;
                    for (const ForecastCase* fc : cases) {
                        const Distribution d = predictive_distribution(model, *fc);
                        acc += twcrps_closed(d, tau, fc->obs).value;
                        accb += brier(d, tau, fc->obs);
                    }
                    cell.twcrps = acc / static_cast<double>(cases.size());
                    cell.brier = accb / static_cast<double>(cases.size());
                }
                cells[ms.label][station][q] = cell;
                rep.rows.push_back({station, ms.label, "twcrps", q, cell.twcrps});
                if (q > 0.0) rep.rows.push_back({station, ms.label, "brier", q, cell.brier});
            }
        }
    }

    // Aggregates and skill vs the reference model.
    for (const ModelSet& ms : models) {
        const auto model_cells = cells.find(ms.label);
        if (model_cells == cells.end()) continue;
        for (double q : eval_quantiles) {
            double mean_tw = 0.0, mean_brier = 0.0;
            std::vector<double> skills;
            std::size_t n_st = 0, n_br = 0;
            for (const auto& [station, by_q] : model_cells->second) {
                const auto it = by_q.find(q);
                if (it == by_q.end()) continue;
                mean_tw += it->second.twcrps;
                ++n_st;
                if (q > 0.0 && std::isfinite(it->second.brier)) {
                    mean_brier += it->second.brier;
                    ++n_br;
                }
                if (reference != nullptr) {
                    const auto& ref_by_station = cells[reference_label];
                    const auto rst = ref_by_station.find(station);
                    if (rst != ref_by_station.end()) {
                        const auto rq = rst->second.find(q);
                        if (rq != rst->second.end() && rq->second.twcrps > 0.0) {
                            const double sk =
                                skill_score(it->second.twcrps, rq->second.twcrps);
                            rep.rows.push_back({station, ms.label, "twcrps_skill", q, sk});
                            skills.push_back(sk);
                        }
                    }
                }
            }
            if (n_st == 0) continue;
            mean_tw /= static_cast<double>(n_st);
            rep.rows.push_back({"ALL", ms.label, "twcrps", q, mean_tw});
            if (n_br > 0)
                rep.rows.push_back(
                    {"ALL", ms.label, "brier", q, mean_brier / static_cast<double>(n_br)});
            if (!skills.empty()) {
                std::sort(skills.begin(), skills.end());
                double mean_skill = 0.0;
                for (double v : skills) mean_skill += v;
                mean_skill /= static_cast<double>(skills.size());
                rep.rows.push_back({"ALL", ms.label, "twcrps_skill", q, mean_skill});
                rep.rows.push_back(
                    {"ALL", ms.label, "twcrps_skill_p2.5", q, percentile_of(skills, 0.025)});
                rep.rows.push_back(
                    {"ALL", ms.label, "twcrps_skill_p97.5", q, percentile_of(skills, 0.975)});
            }
        }
    }
    return rep;
}

std::string report_to_csv(const SkillReport& report) {
    std::string out = "station_id,model_id,metric,threshold_quantile,value\n";
    for (const ReportRow& r : report.rows) {
        out += r.station_id;
        out += ',';
        out += r.model_id;
        out += ',';
        out += r.metric;
        out += ',';
        out += format_double(r.threshold_quantile);
        out += ',';
        out += format_double(r.value);
        out += '\n';
    }
    return out;
}

} // namespace twscore
