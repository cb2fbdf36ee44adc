#include "twscore/distribution.hpp"

#include "twscore/rng.hpp"
#include "twscore/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace twscore {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// GPD treated as its exponential limit below this |xi|; removes the
// removable singularity at xi = 0.
constexpr double gpd_xi_eps = 1e-8;

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Normal: return "normal";
        case Family::Laplace: return "laplace";
        case Family::Logistic: return "logistic";
        case Family::StudentT: return "student_t";
        case Family::Exponential: return "exponential";
        case Family::Gamma: return "gamma";
        case Family::LogLogistic: return "log_logistic";
        case Family::LogNormal: return "log_normal";
        case Family::Uniform: return "uniform";
        case Family::Gpd: return "gpd";
        case Family::TruncLogistic: return "trunc_logistic";
        case Family::TruncNormal: return "trunc_normal";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    static const std::pair<const char*, Family> table[] = {
        {"normal", Family::Normal},         {"laplace", Family::Laplace},
        {"logistic", Family::Logistic},     {"student_t", Family::StudentT},
        {"exponential", Family::Exponential}, {"gamma", Family::Gamma},
        {"log_logistic", Family::LogLogistic}, {"log_normal", Family::LogNormal},
        {"uniform", Family::Uniform},       {"gpd", Family::Gpd},
        {"trunc_logistic", Family::TruncLogistic}, {"trunc_normal", Family::TruncNormal},
    };
    for (const auto& [n, f] : table)
        if (name == n) return f;
    throw std::domain_error("unknown distribution family: " + name);
}

Distribution Distribution::normal(double mu, double sigma) {
    require(sigma > 0.0, "normal: sigma must be > 0");
    Distribution d;
    d.family = Family::Normal;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::laplace(double mu, double sigma) {
    require(sigma > 0.0, "laplace: sigma must be > 0");
    Distribution d;
    d.family = Family::Laplace;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::logistic(double mu, double sigma) {
    require(sigma > 0.0, "logistic: sigma must be > 0");
    Distribution d;
    d.family = Family::Logistic;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::student_t(double nu, double mu, double sigma) {
    require(nu > 0.0, "student_t: nu must be > 0");
    require(sigma > 0.0, "student_t: sigma must be > 0");
    Distribution d;
    d.family = Family::StudentT;
    d.shape = nu;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::exponential(double rate) {
    require(rate > 0.0, "exponential: rate must be > 0");
    Distribution d;
    d.family = Family::Exponential;
    d.rate = rate;
    return d;
}

Distribution Distribution::gamma(double shape, double rate) {
    require(shape > 0.0, "gamma: shape must be > 0");
    require(rate > 0.0, "gamma: rate must be > 0");
    Distribution d;
    d.family = Family::Gamma;
    d.shape = shape;
    d.rate = rate;
    return d;
}

Distribution Distribution::log_logistic(double mu, double sigma) {
    require(sigma > 0.0, "log_logistic: sigma must be > 0");
    Distribution d;
    d.family = Family::LogLogistic;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::log_logistic_scale_shape(double alpha, double beta) {
    require(alpha > 0.0, "log_logistic: scale alpha must be > 0");
    require(beta > 0.0, "log_logistic: shape beta must be > 0");
    return log_logistic(std::log(alpha), 1.0 / beta);
}

Distribution Distribution::log_normal(double mu, double sigma) {
    require(sigma > 0.0, "log_normal: sigma must be > 0");
    Distribution d;
    d.family = Family::LogNormal;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::uniform(double a, double b) {
    require(a < b, "uniform: requires a < b");
    Distribution d;
    d.family = Family::Uniform;
    d.lo = a;
    d.hi = b;
    return d;
}

Distribution Distribution::gpd(double mu, double sigma, double xi) {
    require(sigma > 0.0, "gpd: sigma must be > 0");
    require(std::isfinite(xi), "gpd: xi must be finite");
    Distribution d;
    d.family = Family::Gpd;
    d.mu = mu;
    d.sigma = sigma;
    d.shape = xi;
    return d;
}

Distribution Distribution::trunc_normal(double mu, double sigma, double a, double b) {
    require(sigma > 0.0, "trunc_normal: sigma must be > 0");
    require(a < b, "trunc_normal: requires a < b");
    Distribution d;
    d.family = Family::TruncNormal;
    d.mu = mu;
    d.sigma = sigma;
    d.lo = a;
    d.hi = b;
    return d;
}

Distribution Distribution::trunc_logistic(double mu, double sigma, double a, double b) {
    require(sigma > 0.0, "trunc_logistic: sigma must be > 0");
    require(a < b, "trunc_logistic: requires a < b");
    Distribution d;
    d.family = Family::TruncLogistic;
    d.mu = mu;
    d.sigma = sigma;
    d.lo = a;
    d.hi = b;
    return d;
}

std::pair<double, double> support(const Distribution& d) {
    switch (d.family) {
        case Family::Normal:
        case Family::Laplace:
        case Family::Logistic:
        case Family::StudentT:
            return {-inf, inf};
        case Family::Exponential:
        case Family::Gamma:
            return {0.0, inf};
        case Family::LogLogistic:
        case Family::LogNormal:
            return {0.0, inf};
        case Family::Uniform:
            return {d.lo, d.hi};
        case Family::Gpd:
            if (d.shape < -gpd_xi_eps) return {d.mu, d.mu - d.sigma / d.shape};
            return {d.mu, inf};
        case Family::TruncLogistic:
        case Family::TruncNormal:
            return {d.lo, d.hi};
    }
    return {-inf, inf};
}

namespace {

// Base (untruncated) CDF/PDF used by the generic truncation wrapper.
double base_cdf(const Distribution& d, double z) {
    if (d.family == Family::TruncNormal) return sf::std_normal_cdf((z - d.mu) / d.sigma);
    return sf::std_logistic_cdf((z - d.mu) / d.sigma);
}

double base_pdf(const Distribution& d, double z) {
    const double s = (z - d.mu) / d.sigma;
    if (d.family == Family::TruncNormal) return sf::std_normal_pdf(s) / d.sigma;
    const double F = sf::std_logistic_cdf(s);
    return F * (1.0 - F) / d.sigma;
}

double base_quantile(const Distribution& d, double p) {
    if (d.family == Family::TruncNormal) return d.mu + d.sigma * sf::std_normal_quantile(p);
    return d.mu + d.sigma * sf::std_logistic_quantile(p);
}

double trunc_mass(const Distribution& d) {
    return base_cdf(d, d.hi) - base_cdf(d, d.lo);
}

// Monotone inversion for families without an analytic inverse. Requires
// cdf(lo) <= p; the upper end is expanded geometrically until it brackets,
// then Newton with a bisection safeguard.
double invert_cdf(const Distribution& d, double p, double lo, double hi) {
    for (int i = 0; i < 1200 && cdf(d, hi) < p; ++i) {
        lo = hi;
        hi = (hi > 0.0) ? hi * 2.0 : 1.0;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        const double f = cdf(d, x) - p;
        if (f > 0.0) hi = x; else lo = x;
        if (std::abs(f) < 1e-15 || hi - lo <= 1e-15 * (1.0 + std::abs(x))) return x;
        const double dens = pdf(d, x);
        double next = (dens > 0.0) ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

} // namespace

double cdf(const Distribution& d, double x) {
    switch (d.family) {
        case Family::Normal:
            return sf::std_normal_cdf((x - d.mu) / d.sigma);
        case Family::Laplace: {
            const double z = (x - d.mu) / d.sigma;
            return (z < 0.0) ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        }
        case Family::Logistic:
            return sf::std_logistic_cdf((x - d.mu) / d.sigma);
        case Family::StudentT:
            return sf::student_t_cdf((x - d.mu) / d.sigma, d.shape);
        case Family::Exponential:
            return (x <= 0.0) ? 0.0 : -std::expm1(-d.rate * x);
        case Family::Gamma:
            return sf::regularized_gamma_cdf(x, d.shape, d.rate);
        case Family::LogLogistic:
            return (x <= 0.0) ? 0.0 : sf::std_logistic_cdf((std::log(x) - d.mu) / d.sigma);
        case Family::LogNormal:
            return (x <= 0.0) ? 0.0 : sf::std_normal_cdf((std::log(x) - d.mu) / d.sigma);
        case Family::Uniform:
            return std::clamp((x - d.lo) / (d.hi - d.lo), 0.0, 1.0);
        case Family::Gpd: {
            const double z = (x - d.mu) / d.sigma;
            if (z <= 0.0) return 0.0;
            if (std::abs(d.shape) < gpd_xi_eps) return -std::expm1(-z);
            const double t = 1.0 + d.shape * z;
            if (t <= 0.0) return 1.0; // above the upper endpoint (xi < 0)
            return 1.0 - std::pow(t, -1.0 / d.shape);
        }
        case Family::TruncLogistic:
        case Family::TruncNormal: {
            if (x <= d.lo) return 0.0;
            if (x >= d.hi) return 1.0;
            return (base_cdf(d, x) - base_cdf(d, d.lo)) / trunc_mass(d);
        }
    }
    return 0.0;
}

double pdf(const Distribution& d, double x) {
    switch (d.family) {
        case Family::Normal:
            return sf::std_normal_pdf((x - d.mu) / d.sigma) / d.sigma;
        case Family::Laplace:
            return 0.5 * std::exp(-std::abs((x - d.mu) / d.sigma)) / d.sigma;
        case Family::Logistic: {
            const double F = sf::std_logistic_cdf((x - d.mu) / d.sigma);
            return F * (1.0 - F) / d.sigma;
        }
        case Family::StudentT:
            return sf::student_t_pdf((x - d.mu) / d.sigma, d.shape) / d.sigma;
        case Family::Exponential:
            return (x < 0.0) ? 0.0 : d.rate * std::exp(-d.rate * x);
        case Family::Gamma: {
            if (x <= 0.0) return 0.0;
            return std::exp(d.shape * std::log(d.rate) + (d.shape - 1.0) * std::log(x) -
                            d.rate * x - sf::lgamma_pos(d.shape));
        }
        case Family::LogLogistic: {
            if (x <= 0.0) return 0.0;
            const double F = sf::std_logistic_cdf((std::log(x) - d.mu) / d.sigma);
            return F * (1.0 - F) / (d.sigma * x);
        }
        case Family::LogNormal:
            if (x <= 0.0) return 0.0;
            return sf::std_normal_pdf((std::log(x) - d.mu) / d.sigma) / (d.sigma * x);
        case Family::Uniform:
            return (x < d.lo || x > d.hi) ? 0.0 : 1.0 / (d.hi - d.lo);
        case Family::Gpd: {
            const double z = (x - d.mu) / d.sigma;
            if (z < 0.0) return 0.0;
            if (std::abs(d.shape) < gpd_xi_eps) return std::exp(-z) / d.sigma;
            const double t = 1.0 + d.shape * z;
            if (t <= 0.0) return 0.0;
            return std::pow(t, -1.0 / d.shape - 1.0) / d.sigma;
        }
        case Family::TruncLogistic:
        case Family::TruncNormal: {
            if (x < d.lo || x > d.hi) return 0.0;
            return base_pdf(d, x) / trunc_mass(d);
        }
    }
    return 0.0;
}

double quantile(const Distribution& d, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
    switch (d.family) {
        case Family::Normal:
            return d.mu + d.sigma * sf::std_normal_quantile(p);
        case Family::Laplace:
            return (p < 0.5) ? d.mu + d.sigma * std::log(2.0 * p)
                             : d.mu - d.sigma * std::log(2.0 * (1.0 - p));
        case Family::Logistic:
            return d.mu + d.sigma * sf::std_logistic_quantile(p);
        case Family::StudentT: {
            // Symmetry reduces to the upper half; invert_cdf grows the
            // bracket from [0, 1].
            Distribution std_t = d;
            std_t.mu = 0.0;
            std_t.sigma = 1.0;
            double q;
            if (p == 0.5)
                q = 0.0;
            else if (p > 0.5)
                q = invert_cdf(std_t, p, 0.0, 1.0);
            else
                q = -invert_cdf(std_t, 1.0 - p, 0.0, 1.0);
            return d.mu + d.sigma * q;
        }
        case Family::Exponential:
            return -std::log1p(-p) / d.rate;
        case Family::Gamma: {
            // Wilson-Hilferty start, then the guarded Newton.
            const double z = sf::std_normal_quantile(p);
            const double a = d.shape;
            double guess = a * std::pow(1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a)), 3.0) / d.rate;
            if (!(guess > 0.0) || !std::isfinite(guess)) guess = a / d.rate;
            return invert_cdf(d, p, 0.0, 2.0 * guess);
        }
        case Family::LogLogistic:
            return std::exp(d.mu + d.sigma * sf::std_logistic_quantile(p));
        case Family::LogNormal:
            return std::exp(d.mu + d.sigma * sf::std_normal_quantile(p));
        case Family::Uniform:
            return d.lo + p * (d.hi - d.lo);
        case Family::Gpd: {
            if (std::abs(d.shape) < gpd_xi_eps) return d.mu - d.sigma * std::log1p(-p);
            return d.mu + d.sigma * std::expm1(-d.shape * std::log1p(-p)) / d.shape;
        }
        case Family::TruncLogistic:
        case Family::TruncNormal: {
            const double Fa = base_cdf(d, d.lo);
            const double q = Fa + p * trunc_mass(d);
            return std::clamp(base_quantile(d, std::clamp(q, 1e-300, 1.0 - 1e-16)),
                              d.lo, d.hi);
        }
    }
    throw std::logic_error("quantile: unhandled family");
}

std::vector<double> sample(const Distribution& d, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = quantile(d, rng.uniform(i));
    return out;
}

CensoredDistribution censor(const Distribution& d, double t) {
    if (!std::isfinite(t)) throw std::domain_error("censor: censor point must be finite");
    return CensoredDistribution{d, t};
}

double cdf(const CensoredDistribution& d, double x) {
    if (x < d.censor_point) return 0.0;
    return cdf(d.base, x);
}

std::vector<double> mixture_sample(std::span<const double> weights,
                                   std::span<const Distribution> components,
                                   std::size_t n, std::uint64_t seed) {
    if (weights.size() != components.size() || weights.empty())
        throw std::domain_error("mixture_sample: weights and components must match and be non-empty");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("mixture_sample: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::domain_error("mixture_sample: weights must sum to 1");

    CounterRng pick(seed, 1);
    CounterRng value(seed, 2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = pick.uniform(i);
        double acc = 0.0;
        std::size_t k = weights.size() - 1;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            acc += weights[j];
            if (u <= acc) {
                k = j;
                break;
            }
        }
        out[i] = quantile(components[k], value.uniform(i));
    }
    return out;
}

} // namespace twscore
