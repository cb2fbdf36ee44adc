#include "twscore/experiments.hpp"

#include "twscore/combination.hpp"
#include "twscore/rng.hpp"
#include "twscore/special_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twscore {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double two_pi = 6.28318530717958647692;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double draw_ndoy(double u) {
    const int doy = 1 + static_cast<int>(u * 365.0);
    return two_pi * static_cast<double>(doy) / 365.25;
}

} // namespace

std::vector<ForecastCase> simulate_emos_cases(EmosFamily family, const EmosCoeffs& truth,
                                              std::size_t n, std::uint64_t seed,
                                              const std::string& station_id) {
    CounterRng u_m(seed, 10), u_s(seed, 11), u_doy(seed, 12), u_y(seed, 13);
    std::vector<ForecastCase> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        ForecastCase& fc = out[i];
        fc.station_id = station_id;
        fc.issue_date = "2020-01-01";
        fc.ens_mean = 1.0 + 7.0 * u_m.uniform(i);
        fc.ens_sd = 0.4 + 1.0 * u_s.uniform(i);
        fc.ndoy = draw_ndoy(u_doy.uniform(i));
        const Distribution d = predictive_distribution(family, truth, fc);
        fc.obs = quantile(d, u_y.uniform(i));
    }
    return out;
}

std::vector<ForecastCase> simulate_mixture_cases(std::size_t n, std::uint64_t seed,
                                                 double xi,
                                                 const std::string& station_id) {
    CounterRng u_m(seed, 20), u_s(seed, 21), u_doy(seed, 22);
    CounterRng u_pick(seed, 23), u_val(seed, 24);
    const Distribution tail = Distribution::gpd(0.0, 1.0, xi);
    std::vector<ForecastCase> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        ForecastCase& fc = out[i];
        fc.station_id = station_id;
        fc.issue_date = "2020-01-01";
        fc.ens_mean = 1.0 + 7.0 * u_m.uniform(i);
        fc.ens_sd = 0.4 + 0.8 * u_s.uniform(i);
        fc.ndoy = draw_ndoy(u_doy.uniform(i));
        const double mu_body = 0.5 + 0.9 * fc.ens_mean;
        double z;
        if (u_pick.uniform(i) <= 0.4) {
            z = mu_body + sf::std_normal_quantile(u_val.uniform(i));
        } else {
            z = quantile(tail, u_val.uniform(i));
        }
        fc.obs = std::max(0.0, z);
    }
    return out;
}

HedgingData simulate_hedging_cases(std::size_t n_train, std::size_t n_test,
                                   std::uint64_t seed) {
    auto make = [](std::size_t n, std::uint64_t s) {
        CounterRng u_m(s, 30), u_s(s, 31), u_doy(s, 32);
        CounterRng u_pick(s, 33), u_val(s, 34), u_kick(s, 35);
        std::vector<ForecastCase> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            ForecastCase& fc = out[i];
            fc.station_id = "S1";
            fc.issue_date = "2020-01-01";
            fc.ens_mean = 1.0 + 6.0 * u_m.uniform(i);
            fc.ens_sd = 0.4 + 0.8 * u_s.uniform(i);
            fc.ndoy = draw_ndoy(u_doy.uniform(i));
            const double mu = 0.8 + 0.85 * fc.ens_mean + 1.0 * std::sin(fc.ndoy);
            const double sigma = std::exp(-0.1 + 0.4 * fc.ens_sd);
            const Distribution body = Distribution::trunc_normal(mu, sigma, 0.0, inf);
            double y = quantile(body, u_val.uniform(i));
            // Occasional gust: additive GPD contamination that the
            // truncated-normal family cannot represent.
            if (u_pick.uniform(i) < 0.06)
                y += quantile(Distribution::gpd(0.0, 1.5, 0.25), u_kick.uniform(i));
            fc.obs = y;
        }
        return out;
    };
    HedgingData data;
    data.train = make(n_train, derive_seed(seed, 101));
    data.test = make(n_test, derive_seed(seed, 102));
    return data;
}

namespace {

// Candidate sample prepared for repeated scoring against many observations:
// sorted chained values, their prefix sums, and the sample-pair term of the
// estimator.
struct PreparedSample {
    std::vector<double> v;
    std::vector<double> prefix;
    double pair_term = 0.0;
    double tau = 0.0;
    double x0 = 0.0;

    PreparedSample(std::vector<double> draws, double tau_, double x0_)
        : tau(tau_), x0(x0_) {
        v.resize(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i)
            v[i] = chaining(tau, x0, draws[i]);
        std::sort(v.begin(), v.end());
        prefix.resize(v.size() + 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
        const double n = static_cast<double>(v.size());
        double s = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k)
            s += (2.0 * static_cast<double>(k) + 1.0 - n) * v[k];
        pair_term = s / (n * n); // (1/2N^2) * sum_{ij} |v_i - v_j|
    }

    double score(double y) const {
        const double vy = chaining(tau, x0, y);
        const double n = static_cast<double>(v.size());
        const auto it = std::upper_bound(v.begin(), v.end(), vy);
        const auto k = static_cast<std::size_t>(it - v.begin());
        const double below = vy * static_cast<double>(k) - prefix[k];
        const double above = (prefix[v.size()] - prefix[k]) - vy * (n - static_cast<double>(k));
        return (below + above) / n - pair_term;
    }
};

} // namespace

LandscapeResult run_tail_grid_search(const GridSearchSpec& spec) {
    if (spec.mu_grid.empty() || spec.xi_grid.empty())
        throw std::domain_error("run_tail_grid_search: grids must be non-empty");
    if (spec.n_train < 2 || spec.n_candidate < 2)
        throw std::domain_error("run_tail_grid_search: sample counts must be >= 2");

    const double weights[2] = {0.4, 0.6};
    const Distribution truth_comps[2] = {Distribution::normal(spec.true_mu, 1.0),
                                         Distribution::gpd(0.0, 1.0, spec.true_xi)};
    const std::vector<double> train =
        mixture_sample(weights, truth_comps, spec.n_train, derive_seed(spec.seed, 7001));

    double tau = -inf;
    if (spec.score.kind == ScoreKind::TwCrps)
        tau = percentile_threshold(train, spec.tau_quantile);
    const double x0 = tau; // canonical chaining point

    LandscapeResult res;
    res.mu_grid = spec.mu_grid;
    res.xi_grid = spec.xi_grid;
    res.threshold = tau;
    res.values.resize(spec.mu_grid.size() * spec.xi_grid.size());

    double best = inf;
    for (std::size_t i = 0; i < spec.mu_grid.size(); ++i) {
        for (std::size_t j = 0; j < spec.xi_grid.size(); ++j) {
            const std::uint64_t cell = i * spec.xi_grid.size() + j;
            const Distribution comps[2] = {Distribution::normal(spec.mu_grid[i], 1.0),
                                           Distribution::gpd(0.0, 1.0, spec.xi_grid[j])};
            const std::vector<double> cand =
                mixture_sample(weights, comps, spec.n_candidate,
                               derive_seed(spec.seed, 9000 + cell));
            const PreparedSample ps(cand, tau, x0);
            double acc = 0.0;
            for (double y : train) acc += ps.score(y);
            const double mean_score = acc / static_cast<double>(train.size());
            res.values[cell] = mean_score;
            if (mean_score < best) {
                best = mean_score;
                res.argmin_mu = i;
                res.argmin_xi = j;
            }
        }
    }
    return res;
}

namespace {

double profile_range(const std::vector<double>& vals) {
    const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    return (*mx - *mn) / *mn;
}

std::size_t nearest_index(const std::vector<double>& grid, double target) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - target) < std::abs(grid[best] - target)) best = i;
    return best;
}

} // namespace

SharpnessReport sharpness_contrast(const LandscapeResult& result_crps,
                                   const LandscapeResult& result_tw) {
    if (result_crps.mu_grid != result_tw.mu_grid ||
        result_crps.xi_grid != result_tw.xi_grid)
        throw std::domain_error("sharpness_contrast: landscapes must share their grids");

    auto ranges = [](const LandscapeResult& L) {
        const std::size_t i_mu = nearest_index(L.mu_grid, 2.0);
        const std::size_t i_xi = nearest_index(L.xi_grid, 0.5);
        std::vector<double> mu_profile(L.mu_grid.size());
        for (std::size_t i = 0; i < L.mu_grid.size(); ++i)
            mu_profile[i] = L.value_at(i, i_xi);
        std::vector<double> xi_profile(L.xi_grid.size());
        for (std::size_t j = 0; j < L.xi_grid.size(); ++j)
            xi_profile[j] = L.value_at(i_mu, j);
        return std::pair{profile_range(mu_profile), profile_range(xi_profile)};
    };

    SharpnessReport rep;
    const auto [c_mu, c_xi] = ranges(result_crps);
    const auto [t_mu, t_xi] = ranges(result_tw);
    rep.crps_mu_range = c_mu;
    rep.crps_xi_range = c_xi;
    rep.twcrps_mu_range = t_mu;
    rep.twcrps_xi_range = t_xi;
    rep.crps_sharper_in_mu = c_mu > c_xi;
    rep.twcrps_sharper_in_xi = t_xi > t_mu;
    return rep;
}

HedgingReport run_hedging_demo(std::uint64_t seed, std::size_t n_train, std::size_t n_test) {
    const HedgingData data = simulate_hedging_cases(n_train, n_test, seed);

    std::vector<double> train_obs;
    train_obs.reserve(data.train.size());
    for (const ForecastCase& fc : data.train) train_obs.push_back(fc.obs);

    HedgingReport rep;
    rep.tau = percentile_threshold(train_obs, 0.8);
    double mean = 0.0;
    for (double y : train_obs) mean += y;
    mean /= static_cast<double>(train_obs.size());
    double var = 0.0;
    for (double y : train_obs) var += (y - mean) * (y - mean);
    rep.weight_scale = std::sqrt(var / (static_cast<double>(train_obs.size()) - 1.0));

    const EmosModel m_crps =
        fit(data.train, EmosFamily::TruncNormal0, ScoreSpec::crps(), "S1");
    const EmosModel m_hb = fit(data.train, EmosFamily::TruncNormal0,
                               ScoreSpec::hb_loss(rep.tau, rep.weight_scale), "S1");

    const double n = static_cast<double>(data.test.size());
    std::size_t exceed = 0;
    for (const ForecastCase& fc : data.test) {
        const Distribution dc = predictive_distribution(m_crps, fc);
        const Distribution dh = predictive_distribution(m_hb, fc);
        rep.crps_model_test_crps += crps_closed(dc, fc.obs).value;
        rep.hb_model_test_crps += crps_closed(dh, fc.obs).value;
        rep.crps_model_test_hb += hb_loss(dc, fc.obs, rep.tau, rep.weight_scale);
        rep.hb_model_test_hb += hb_loss(dh, fc.obs, rep.tau, rep.weight_scale);
        rep.crps_model_test_brier += brier(dc, rep.tau, fc.obs);
        rep.hb_model_test_brier += brier(dh, rep.tau, fc.obs);
        rep.crps_model_mean_exceed_prob += 1.0 - cdf(dc, rep.tau);
        rep.hb_model_mean_exceed_prob += 1.0 - cdf(dh, rep.tau);
        if (fc.obs >= rep.tau) ++exceed;
        const auto bin = [](double p) {
            return std::min(static_cast<std::size_t>(p * 20.0), std::size_t{19});
        };
        rep.pit_crps_model[bin(pit(dc, fc.obs))] += 1.0;
        rep.pit_hb_model[bin(pit(dh, fc.obs))] += 1.0;
    }
    rep.crps_model_test_crps /= n;
    rep.hb_model_test_crps /= n;
    rep.crps_model_test_hb /= n;
    rep.hb_model_test_hb /= n;
    rep.crps_model_test_brier /= n;
    rep.hb_model_test_brier /= n;
    rep.crps_model_mean_exceed_prob /= n;
    rep.hb_model_mean_exceed_prob /= n;
    rep.empirical_exceed_rate = static_cast<double>(exceed) / n;
    for (double& c : rep.pit_crps_model) c /= n;
    for (double& c : rep.pit_hb_model) c /= n;
    return rep;
}

std::string landscape_to_csv(const LandscapeResult& r) {
    std::string out = "mu,xi,value,is_argmin\n";
    for (std::size_t i = 0; i < r.mu_grid.size(); ++i)
        for (std::size_t j = 0; j < r.xi_grid.size(); ++j) {
            out += format_double(r.mu_grid[i]);
            out += ',';
            out += format_double(r.xi_grid[j]);
            out += ',';
            out += format_double(r.value_at(i, j));
            out += ',';
            out += (i == r.argmin_mu && j == r.argmin_xi) ? '1' : '0';
            out += '\n';
        }
    return out;
}

std::string hedging_to_csv(const HedgingReport& r) {
    std::string out = "metric,crps_model,hb_model\n";
    auto row = [&out](const char* name, double a, double b) {
        out += name;
        out += ',';
        out += format_double(a);
        out += ',';
        out += format_double(b);
        out += '\n';
    };
    row("test_crps", r.crps_model_test_crps, r.hb_model_test_crps);
    row("test_hb_loss", r.crps_model_test_hb, r.hb_model_test_hb);
    row("test_brier", r.crps_model_test_brier, r.hb_model_test_brier);
    row("mean_exceed_prob", r.crps_model_mean_exceed_prob, r.hb_model_mean_exceed_prob);
    row("empirical_exceed_rate", r.empirical_exceed_rate, r.empirical_exceed_rate);
    row("tau", r.tau, r.tau);
    for (std::size_t b = 0; b < 20; ++b) {
        out += "pit_bin_" + std::to_string(b) + ',' + format_double(r.pit_crps_model[b]) +
               ',' + format_double(r.pit_hb_model[b]) + '\n';
    }
    return out;
}

} // namespace twscore
