#pragma once

#include "twscore/emos.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace twscore {

// --- Synthetic data --------------------------------------------------------

// Cases drawn from a known EMOS truth (well-specified recovery setting).
std::vector<ForecastCase> simulate_emos_cases(EmosFamily family, const EmosCoeffs& truth,
                                              std::size_t n, std::uint64_t seed,
                                              const std::string& station_id = "S1");

// Covariate-conditioned normal/GPD mixture: the body tracks the ensemble
// mean while the heavy tail does not, so a single truncated family is
// misspecified. Used for the body-tail trade-off experiments.
std::vector<ForecastCase> simulate_mixture_cases(std::size_t n, std::uint64_t seed,
                                                 double xi = 0.5,
                                                 const std::string& station_id = "S1");

struct HedgingData {
    std::vector<ForecastCase> train;
    std::vector<ForecastCase> test;
};

// Truncated-normal truth with a seasonal cycle plus occasional additive
// heavy-tail contamination.
HedgingData simulate_hedging_cases(std::size_t n_train, std::size_t n_test,
                                   std::uint64_t seed);

// --- Tail-inference grid search --------------------------------------------

struct GridSearchSpec {
    std::vector<double> mu_grid;
    std::vector<double> xi_grid;
    std::size_t n_train = 1000;
    std::size_t n_candidate = 250;
    ScoreSpec score;            // Crps, or TwCrps with the threshold taken as
    double tau_quantile = 0.0;  // this quantile of the training sample
    std::uint64_t seed = 1;
    double true_mu = 2.0;
    double true_xi = 0.5;
};

struct LandscapeResult {
    std::vector<double> mu_grid;
    std::vector<double> xi_grid;
    // Row-major: values[i * xi_grid.size() + j] scores candidate (mu_i, xi_j).
    std::vector<double> values;
    std::size_t argmin_mu = 0;
    std::size_t argmin_xi = 0;
    double threshold = 0.0; // resolved threshold; -inf when scoring with CRPS

    double value_at(std::size_t i_mu, std::size_t i_xi) const {
        return values[i_mu * xi_grid.size() + i_xi];
    }
};

// Candidate-vs-training sample scoring over the (mu, xi) grid. Candidate
// samples are drawn once per cell from a seed mixed with the cell index.
LandscapeResult run_tail_grid_search(const GridSearchSpec& spec);

struct SharpnessReport {
    double crps_mu_range = 0.0; // (max-min)/min of the mu profile at true xi
    double crps_xi_range = 0.0;
    double twcrps_mu_range = 0.0;
    double twcrps_xi_range = 0.0;
    bool crps_sharper_in_mu = false;   // crps_mu_range > crps_xi_range
    bool twcrps_sharper_in_xi = false; // twcrps_xi_range > twcrps_mu_range
};

// Contrast of marginal loss-profile ranges between a CRPS landscape and a
// twCRPS landscape computed on the same grids.
SharpnessReport sharpness_contrast(const LandscapeResult& result_crps,
                                   const LandscapeResult& result_tw);

// --- Hedging demonstration --------------------------------------------------

struct HedgingReport {
    double tau = 0.0;            // 80th percentile of training observations
    double weight_scale = 0.0;   // b, the training-observation s.d.
    double crps_model_test_crps = 0.0;
    double hb_model_test_crps = 0.0;
    double crps_model_test_hb = 0.0;
    double hb_model_test_hb = 0.0;
    double crps_model_test_brier = 0.0;
    double hb_model_test_brier = 0.0;
    double crps_model_mean_exceed_prob = 0.0;
    double hb_model_mean_exceed_prob = 0.0;
    double empirical_exceed_rate = 0.0;
    std::array<double, 20> pit_crps_model{};
    std::array<double, 20> pit_hb_model{};
};

// Fits CRPS-trained and HB-trained truncated-normal models on the synthetic
// data and evaluates both on the test split.
HedgingReport run_hedging_demo(std::uint64_t seed, std::size_t n_train, std::size_t n_test);

// CSV serializations for the CLI.
std::string landscape_to_csv(const LandscapeResult& r);
std::string hedging_to_csv(const HedgingReport& r);

} // namespace twscore
