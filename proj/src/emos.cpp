#include "twscore/emos.hpp"

#include "twscore/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace twscore {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Scale link is exponential; cap the exponent so a wild optimizer step
// yields a huge-but-finite sigma instead of overflow.
double link_sigma(double log_sigma) {
    return std::exp(std::clamp(log_sigma, -40.0, 40.0));
}

// Solve the 4x4 normal equations by Gaussian elimination with partial
// pivoting. Throws SingularDesignError when a pivot vanishes.
std::array<double, 4> solve4(std::array<std::array<double, 5>, 4> m) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-10)
            throw SingularDesignError("starting_values: design matrix is rank-deficient");
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double factor = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::array<double, 4> x{};
    for (int i = 0; i < 4; ++i) x[i] = m[i][4] / m[i][i];
    return x;
}

} // namespace

const char* emos_family_name(EmosFamily f) {
    return f == EmosFamily::TruncNormal0 ? "tnorm" : "tlogis";
}

EmosFamily emos_family_from_name(const std::string& name) {
    if (name == "tnorm") return EmosFamily::TruncNormal0;
    if (name == "tlogis") return EmosFamily::TruncLogistic0;
    throw std::domain_error("unknown EMOS family: " + name + " (expected tnorm or tlogis)");
}

Distribution predictive_distribution(EmosFamily family, const EmosCoeffs& c,
                                     const ForecastCase& fc) {
    const double sn = std::sin(fc.ndoy), cs = std::cos(fc.ndoy);
    const double mu = c.alpha + c.beta * fc.ens_mean + c.lmu_sin * sn + c.lmu_cos * cs;
    const double sigma =
        link_sigma(c.gamma_c + c.delta * fc.ens_sd + c.lsig_sin * sn + c.lsig_cos * cs);
    if (family == EmosFamily::TruncNormal0)
        return Distribution::trunc_normal(mu, sigma, 0.0, inf);
    return Distribution::trunc_logistic(mu, sigma, 0.0, inf);
}

Distribution predictive_distribution(const EmosModel& model, const ForecastCase& fc) {
    return predictive_distribution(model.family, model.coeffs, fc);
}

EmosCoeffs starting_values(std::span<const ForecastCase> data, EmosFamily) {
    if (data.size() < 10)
        throw SingularDesignError("starting_values: need at least 10 cases");

    // Accumulate X'X and X'y for the design (1, m, sin ndoy, cos ndoy).
    std::array<std::array<double, 5>, 4> m{};
    for (const ForecastCase& fc : data) {
        const double row[4] = {1.0, fc.ens_mean, std::sin(fc.ndoy), std::cos(fc.ndoy)};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) m[i][j] += row[i] * row[j];
            m[i][4] += row[i] * fc.obs;
        }
    }
    const std::array<double, 4> b = solve4(m);

    double rss = 0.0;
    for (const ForecastCase& fc : data) {
        const double fitted = b[0] + b[1] * fc.ens_mean + b[2] * std::sin(fc.ndoy) +
                              b[3] * std::cos(fc.ndoy);
        const double r = fc.obs - fitted;
        rss += r * r;
    }
    const double dof = static_cast<double>(data.size()) - 4.0;
    const double se = std::sqrt(std::max(rss / dof, 1e-12));

    EmosCoeffs c;
    c.alpha = b[0];
    c.beta = b[1];
    c.lmu_sin = b[2];
    c.lmu_cos = b[3];
    c.gamma_c = std::log(se);
    return c;
}

double mean_loss(const EmosCoeffs& coeffs, EmosFamily family,
                 std::span<const ForecastCase> data, const ScoreSpec& spec) {
    if (data.empty()) throw std::domain_error("mean_loss: empty training set");
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        try {
            const Distribution d = predictive_distribution(family, coeffs, data[i]);
            acc += score_case(d, data[i].obs, spec);
        } catch (const std::domain_error& e) {
            throw std::domain_error("mean_loss: case " + std::to_string(i) + ": " + e.what());
        }
    }
    return acc / static_cast<double>(data.size());
}

EmosModel fit(std::span<const ForecastCase> data, EmosFamily family, const ScoreSpec& spec,
              const std::string& station_id, const FitOptions& options) {
    const EmosCoeffs start = starting_values(data, family);
    Objective f = [&data, family, &spec](const std::vector<double>& x) {
        return mean_loss(EmosCoeffs::from_array(x), family, data, spec);
    };
    const auto s = start.to_array();
    const OptimResult r =
        minimize_with_fallback(f, std::vector<double>(s.begin(), s.end()), options.optim);

    EmosModel model;
    model.family = family;
    model.coeffs = EmosCoeffs::from_array(r.params);
    model.trained_with = spec;
    model.station_id = station_id;
    if (!r.converged) throw FitError("fit: optimizer failed to converge", std::move(model));
    return model;
}

Objective sample_loss_objective(std::span<const ForecastCase> data, EmosFamily family,
                                double tau, double x0, std::size_t n_samples,
                                std::uint64_t seed) {
    // Per-case uniforms are drawn once; the objective is deterministic in
    // the coefficients (common random numbers).
    auto uniforms = std::make_shared<std::vector<std::vector<double>>>();
    uniforms->reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CounterRng rng(derive_seed(seed, i));
        std::vector<double> u(n_samples);
        for (std::size_t k = 0; k < n_samples; ++k) u[k] = rng.uniform(k);
        uniforms->push_back(std::move(u));
    }
    std::vector<ForecastCase> cases(data.begin(), data.end());
    return [cases = std::move(cases), family, tau, x0, uniforms,
            n_samples](const std::vector<double>& x) {
        const EmosCoeffs c = EmosCoeffs::from_array(x);
        double acc = 0.0;
        std::vector<double> draws(n_samples);
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const Distribution d = predictive_distribution(family, c, cases[i]);
            for (std::size_t k = 0; k < n_samples; ++k)
                draws[k] = quantile(d, (*uniforms)[i][k]);
            acc += twcrps_sample(draws, tau, x0, cases[i].obs).value;
        }
        return acc / static_cast<double>(cases.size());
    };
}

SampleFitResult fit_sample_based(std::span<const ForecastCase> data, EmosFamily family,
                                 const ScoreSpec& spec, std::size_t n_samples,
                                 std::uint64_t seed, std::optional<EmosCoeffs> start,
                                 const FitOptions& options) {
    if (n_samples < 100)
        throw std::domain_error("fit_sample_based: n_samples must be >= 100");
    const EmosCoeffs s0 = start ? *start : starting_values(data, family);
    Objective f = sample_loss_objective(data, family, spec.tau, spec.x0, n_samples, seed);

    // Sample losses fluctuate at the Monte-Carlo scale; the spread tolerance
    // is loosened accordingly.
    const double tol = std::max(options.optim.nm_tol, 1e-3 / std::sqrt((double)n_samples));
    const auto sa = s0.to_array();
    OptimResult r = minimize_nelder_mead(f, std::vector<double>(sa.begin(), sa.end()), tol,
                                         options.optim.nm_max_iter);

    SampleFitResult out;
    out.model.family = family;
    out.model.coeffs = EmosCoeffs::from_array(r.params);
    out.model.trained_with = spec;
    out.optim = std::move(r);
    return out;
}

double percentile_threshold(std::vector<double> values, double q) {
    if (values.empty()) throw std::domain_error("percentile_threshold: empty vector");
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("percentile_threshold: q must lie in (0,1)");
    std::sort(values.begin(), values.end());
    const double h = 1.0 + (static_cast<double>(values.size()) - 1.0) * q; // 1-based rank
    const std::size_t k = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(k);
    if (k >= values.size()) return values.back();
    if (frac == 0.0 || k == values.size()) return values[k - 1];
    return values[k - 1] + frac * (values[k] - values[k - 1]);
}

} // namespace twscore
