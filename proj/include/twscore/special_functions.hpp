#pragma once

#include <stdexcept>

// Special functions backing the closed-form threshold-weighted CRPS
// expressions: standard normal PDF/CDF/quantile, Owen's T, the integral
// I(alpha, beta) = int_alpha^inf phi(u) Phi(u + beta) du evaluated by a
// recursive Hermite power series, incomplete beta and gamma functions.
// All functions are pure and reentrant.

namespace twscore::sf {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inv_sqrt_2pi = 0.39894228040143267794; // (2*pi)^(-1/2)
inline constexpr double sqrt_2 = 1.41421356237309504880;
inline constexpr double sqrt_pi = 1.77245385090551602730;

double std_normal_pdf(double x);
double std_normal_cdf(double x);
// Upper tail 1 - Phi(x), computed without cancellation.
double std_normal_cdf_c(double x);
// Inverse of std_normal_cdf on (0,1). Wichura's PPND16 rational
// approximation plus one Newton polish. Throws std::domain_error outside (0,1).
double std_normal_quantile(double p);

// Owen's T function, T(h,a) = 1/(2*pi) int_0^a exp(-h^2(1+x^2)/2)/(1+x^2) dx.
// Evaluated by adaptive quadrature of the arctan-transformed integrand to
// 1e-15 absolute.
double owen_t(double h, double a);

// log Gamma(x) for x > 0 via a Lanczos approximation (g=7, 9 terms).
double lgamma_pos(double x);
double lbeta(double a, double b);
double beta_fn(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
// Requires a, b > 0 and x in [0,1].
double regularized_incomplete_beta(double x, double a, double b);

// Upper incomplete beta B_u(x; a, b) = int_x^1 t^(a-1) (1-t)^(b-1) dt.
// Requires x in [0,1], a > 0, b > 0.
double upper_incomplete_beta(double x, double a, double b);

// CDF of the Gamma(shape, rate) distribution at x >= 0.
double regularized_gamma_cdf(double x, double shape, double rate);

// Standard Student's t with nu > 0 degrees of freedom.
double student_t_cdf(double t, double nu);
double student_t_pdf(double t, double nu);

// Standard logistic CDF and its inverse, evaluated stably on both sides.
double std_logistic_cdf(double z);
double std_logistic_quantile(double p);

struct SeriesResult {
    double value = 0.0;
    int terms_used = 1;            // N*, the truncation index of the power series
    double abs_error_estimate = 0.0;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const char* msg, SeriesResult partial_result)
        : std::runtime_error(msg), partial(partial_result) {}
    SeriesResult partial;
};

// I(alpha, beta) = int_alpha^inf phi(u) Phi(u + beta) du.
//
// Evaluated by the recursive power series in beta with truncation threshold
// eta = 1e-15 on two consecutive terms and error estimate
// err = max(eta, eps * max_N |sum_{n<=N} I_n|). The series is run on
// whichever of (alpha, beta) and the accelerated arguments
// (beta/sqrt(2), sqrt(2)*alpha) has the smaller series parameter, which
// keeps the term count low. Accumulation is done in long double: near
// |beta| ~ 7 the terms grow to ~exp(beta^2/4) before cancelling.
//
// The truncation test is additionally deferred until n >= ceil(beta^2):
// for large alpha*beta < 0 the leading terms dip below eta before the
// series has actually converged.
//
// Extreme arguments (|alpha| > 6 with series parameter beyond the validated
// |beta| < 8 envelope) are resolved by the asymptotic value of the defining
// integral; terms_used is 1 and the error estimate carries the tail bound.
//
// Throws ConvergenceError (carrying the partial sum) if 500 terms do not
// suffice.
SeriesResult integral_I(double alpha, double beta);

} // namespace twscore::sf
