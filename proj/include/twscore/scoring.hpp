#pragma once

#include "twscore/distribution.hpp"

#include <functional>
#include <span>
#include <string>

namespace twscore {

enum class ScoreKind { Crps, TwCrps, LogLik, WeightedCombo, HbLoss, Brier };

const char* score_kind_name(ScoreKind k);
ScoreKind score_kind_from_name(const std::string& name);

// Which loss to compute. tau is the threshold for TwCrps / WeightedCombo /
// Brier; gamma weights the twCRPS part of the combination; a and b
// parameterize the HB weight min[1, exp((y-a)/b)]; x0 is the chaining point
// for sample estimation (canonically tau).
struct ScoreSpec {
    ScoreKind kind = ScoreKind::Crps;
    double tau = 0.0;
    double gamma = 0.0;
    double a = 0.0;
    double b = 1.0;
    double x0 = 0.0;

    static ScoreSpec crps() { return {}; }
    static ScoreSpec twcrps(double tau) {
        ScoreSpec s;
        s.kind = ScoreKind::TwCrps;
        s.tau = tau;
        s.x0 = tau;
        return s;
    }
    static ScoreSpec loglik() {
        ScoreSpec s;
        s.kind = ScoreKind::LogLik;
        return s;
    }
    static ScoreSpec weighted_combo(double tau, double gamma);
    static ScoreSpec hb_loss(double a, double b);
    static ScoreSpec brier(double tau) {
        ScoreSpec s;
        s.kind = ScoreKind::Brier;
        s.tau = tau;
        return s;
    }
};

enum class ScoreMethod { ClosedForm, Quadrature, Sample };

struct ScoreValue {
    double value = 0.0;
    ScoreMethod method = ScoreMethod::ClosedForm;
};

// Chaining function v(x): x0 below tau, identity from tau on. With x0 = tau
// this is max(tau, x).
double chaining(double tau, double x0, double x);

// Unweighted CRPS by the known closed-form expression of each family.
ScoreValue crps_closed(const Distribution& d, double y);

// Threshold-weighted CRPS by the family's closed form. Family restrictions
// (GPD xi < 1, log-logistic sigma < 1, Student's t nu > 1) raise
// std::domain_error naming the violated condition.
ScoreValue twcrps_closed(const Distribution& d, double tau, double y);

// twCRPS of an arbitrary CDF by adaptive quadrature split at the integrand
// kink, absolute error <= tol. The upper integration end is extended until
// 1 - F < 1e-12 and the running block contributes less than tol.
ScoreValue twcrps_quadrature(const std::function<double(double)>& cdf_fn, double tau,
                             double y, double tol);

// Sample estimator of the twCRPS from predictive draws, O(N log N).
ScoreValue twcrps_sample(std::span<const double> samples, double tau, double x0, double y);

// twCRPS as the CRPS of the censored distribution (quadrature route).
ScoreValue twcrps_via_censoring(const Distribution& d, double tau, double y);

// twCRPS as CRPS(F, max(y,tau)) minus the correction term
// Delta = int_{-inf}^{tau} F(z)^2 dz (quadrature route).
ScoreValue twcrps_via_correction(const Distribution& d, double tau, double y);

// Lower-tail twCRPS = CRPS - upper-tail twCRPS.
ScoreValue lower_twcrps(const Distribution& d, double tau, double y);

// Brier score of the threshold exceedance event.
double brier(const Distribution& d, double tau, double y);

// Negative log predictive density, density floored at 1e-300.
double log_score(const Distribution& d, double y);

// min[1, exp((y-a)/b)] * CRPS(F,y). Requires b > 0.
double hb_loss(const Distribution& d, double y, double a, double b);

// CRPS + gamma * twCRPS_tau. Requires gamma >= 0.
double weighted_combo(const Distribution& d, double y, double tau, double gamma);

// Per-case dispatch on a ScoreSpec (closed forms throughout).
double score_case(const Distribution& d, double y, const ScoreSpec& spec);

} // namespace twscore
