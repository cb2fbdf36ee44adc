#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace twscore {

using Objective = std::function<double(const std::vector<double>&)>;

enum class OptimMethod { Bfgs, NelderMead };

struct OptimResult {
    std::vector<double> params;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    OptimMethod method_used = OptimMethod::Bfgs;
};

struct OptimConfig {
    double grad_step = 1e-6;       // central-difference base step
    double bfgs_tol = 1e-6;        // gradient-norm stopping rule
    std::size_t bfgs_max_iter = 400;
    double nm_tol = 1e-8;          // simplex objective-spread stopping rule
    std::size_t nm_max_iter = 4000;
};

// BFGS with central-difference gradients and a backtracking Armijo line
// search. Non-finite objective values set converged = false rather than
// throwing, so fallback can engage. The accepted-objective sequence is
// non-increasing.
OptimResult minimize_bfgs(const Objective& f, const std::vector<double>& x0,
                          double grad_step, double tol, std::size_t max_iter);

// Nelder-Mead with the standard reflection/expansion/contraction/shrink
// coefficients (1, 2, 0.5, 0.5).
OptimResult minimize_nelder_mead(const Objective& f, const std::vector<double>& x0,
                                 double tol, std::size_t max_iter);

// BFGS first; on failure (non-finite objective, line-search collapse, or no
// convergence within the cap), Nelder-Mead is rerun from x0.
OptimResult minimize_with_fallback(const Objective& f, const std::vector<double>& x0,
                                   const OptimConfig& config = {});

} // namespace twscore
