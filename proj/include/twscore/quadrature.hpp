#pragma once

#include <functional>

namespace twscore {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] with
// recursive bisection down to the requested absolute tolerance.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

} // namespace twscore
