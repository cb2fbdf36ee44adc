#pragma once

#include "twscore/distribution.hpp"
#include "twscore/optimize.hpp"
#include "twscore/scoring.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twscore {

// One forecast-observation record. ndoy is the normalized day of year in
// radians, 2*pi*doy/365.25.
struct ForecastCase {
    std::string station_id;
    std::string issue_date; // ISO-8601 yyyy-mm-dd
    double ens_mean = 0.0;
    double ens_sd = 0.0;
    double obs = 0.0;
    double ndoy = 0.0;
};

enum class EmosFamily { TruncNormal0, TruncLogistic0 };

const char* emos_family_name(EmosFamily f);
EmosFamily emos_family_from_name(const std::string& name);

// The eight regression coefficients:
//   mu        = alpha + beta*m + lmu_sin*sin(ndoy) + lmu_cos*cos(ndoy)
//   log sigma = gamma_c + delta*s + lsig_sin*sin(ndoy) + lsig_cos*cos(ndoy)
struct EmosCoeffs {
    double alpha = 0.0;
    double beta = 0.0;
    double lmu_sin = 0.0;
    double lmu_cos = 0.0;
    double gamma_c = 0.0;
    double delta = 0.0;
    double lsig_sin = 0.0;
    double lsig_cos = 0.0;

    std::array<double, 8> to_array() const {
        return {alpha, beta, lmu_sin, lmu_cos, gamma_c, delta, lsig_sin, lsig_cos};
    }
    static EmosCoeffs from_array(std::span<const double> a) {
        EmosCoeffs c;
        c.alpha = a[0];
        c.beta = a[1];
        c.lmu_sin = a[2];
        c.lmu_cos = a[3];
        c.gamma_c = a[4];
        c.delta = a[5];
        c.lsig_sin = a[6];
        c.lsig_cos = a[7];
        return c;
    }
};

struct EmosModel {
    EmosFamily family = EmosFamily::TruncNormal0;
    EmosCoeffs coeffs;
    ScoreSpec trained_with;
    std::string station_id;
};

struct SingularDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    FitError(const char* msg, EmosModel best)
        : std::runtime_error(msg), best_effort(std::move(best)) {}
    EmosModel best_effort;
};

// Predictive distribution of the case under the model: the chosen family,
// zero-truncated, with the linked location and scale.
Distribution predictive_distribution(const EmosModel& model, const ForecastCase& fc);
Distribution predictive_distribution(EmosFamily family, const EmosCoeffs& coeffs,
                                     const ForecastCase& fc);

// Starting values per the crch convention: OLS of y on (1, m, sin, cos) for
// the location coefficients, gamma_c = log of the OLS residual standard
// error, remaining scale coefficients zero. Throws SingularDesignError for
// a rank-deficient design.
EmosCoeffs starting_values(std::span<const ForecastCase> data, EmosFamily family);

// Mean per-case score over the training set. Domain errors from scoring are
// rethrown with the offending case index.
double mean_loss(const EmosCoeffs& coeffs, EmosFamily family,
                 std::span<const ForecastCase> data, const ScoreSpec& spec);

struct FitOptions {
    OptimConfig optim;
};

// Fit per the closed-form protocol: starting values, then BFGS with
// Nelder-Mead fallback. Throws FitError (carrying the best-effort model) if
// both optimizers fail.
EmosModel fit(std::span<const ForecastCase> data, EmosFamily family, const ScoreSpec& spec,
              const std::string& station_id = "", const FitOptions& options = {});

struct SampleFitResult {
    EmosModel model;
    OptimResult optim;
};

// Sample-based twCRPS fitting: the per-case predictive distribution is
// represented by n_samples inverse-CDF draws on uniforms that are fixed per
// case (common random numbers), and the mean sample estimator is minimized
// by Nelder-Mead at a loosened tolerance. The result is returned whether or
// not it improves on the closed-form optimum.
SampleFitResult fit_sample_based(std::span<const ForecastCase> data, EmosFamily family,
                                 const ScoreSpec& spec, std::size_t n_samples,
                                 std::uint64_t seed,
                                 std::optional<EmosCoeffs> start = std::nullopt,
                                 const FitOptions& options = {});

// Builds the sample-estimator mean loss used by fit_sample_based; exposed so
// other optimizers can be run against the identical objective.
Objective sample_loss_objective(std::span<const ForecastCase> data, EmosFamily family,
                                double tau, double x0, std::size_t n_samples,
                                std::uint64_t seed);

// Percentile by linear interpolation of order statistics at rank 1+(n-1)q.
double percentile_threshold(std::vector<double> values, double q);

} // namespace twscore
