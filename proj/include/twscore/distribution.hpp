#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twscore {

enum class Family {
    Normal,
    Laplace,
    Logistic,
    StudentT,
    Exponential,
    Gamma,
    LogLogistic,
    LogNormal,
    Uniform,
    Gpd,
    TruncLogistic,
    TruncNormal,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Immutable parametric distribution. Parameter slots are interpreted per
// family; use the factories, which validate.
//
//   Normal/Laplace/Logistic      mu, sigma
//   StudentT                     shape = nu, mu, sigma
//   Exponential                  rate = lambda
//   Gamma                        shape = alpha, rate = beta
//   LogLogistic                  mu = log-location, sigma = log-scale
//   LogNormal                    mu, sigma on the log scale
//   Uniform                      lo = a, hi = b
//   Gpd                          mu, sigma, shape = xi
//   TruncNormal/TruncLogistic    mu, sigma and truncation bounds lo, hi
struct Distribution {
    Family family = Family::Normal;
    double mu = 0.0;
    double sigma = 1.0;
    double shape = 0.0;
    double rate = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    static Distribution normal(double mu, double sigma);
    static Distribution laplace(double mu, double sigma);
    static Distribution logistic(double mu, double sigma);
    static Distribution student_t(double nu, double mu = 0.0, double sigma = 1.0);
    static Distribution exponential(double rate);
    static Distribution gamma(double shape, double rate);
    static Distribution log_logistic(double mu, double sigma);
    // Alternative (alpha, beta) scale/shape parameterization, accepted on
    // input via mu = log(alpha), sigma = 1/beta.
    static Distribution log_logistic_scale_shape(double alpha, double beta);
    static Distribution log_normal(double mu, double sigma);
    static Distribution uniform(double a, double b);
    static Distribution gpd(double mu, double sigma, double xi);
    static Distribution trunc_normal(double mu, double sigma, double a, double b);
    static Distribution trunc_logistic(double mu, double sigma, double a, double b);
};

// Support interval; unbounded ends are +-infinity.
std::pair<double, double> support(const Distribution& d);

double cdf(const Distribution& d, double x);
double pdf(const Distribution& d, double x);
// Inverse CDF for p in (0,1); cdf(d, quantile(d, p)) = p to 1e-10.
double quantile(const Distribution& d, double p);

// n inverse-CDF draws from the counter RNG stream (seed).
std::vector<double> sample(const Distribution& d, std::size_t n, std::uint64_t seed);

// Distribution censored at t: all mass below t collapses onto t, so the CDF
// is 0 below t and equals the base CDF from t on.
struct CensoredDistribution {
    Distribution base;
    double censor_point = 0.0;
};

CensoredDistribution censor(const Distribution& d, double t);
double cdf(const CensoredDistribution& d, double x);

// Draws from sum_k weights[k] * components[k]. Weights must be nonnegative
// and sum to 1 within 1e-12.
std::vector<double> mixture_sample(std::span<const double> weights,
                                   std::span<const Distribution> components,
                                   std::size_t n, std::uint64_t seed);

} // namespace twscore
