#include "twscore/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace twscore {

namespace {

bool finite(double v) { return std::isfinite(v); }

std::vector<double> gradient_central(const Objective& f, std::vector<double> x,
                                     double base_step, bool& ok) {
    const std::size_t n = x.size();
    std::vector<double> g(n);
    ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = std::max(base_step, 1e-8 * std::abs(x[i]));
        const double xi = x[i];
        x[i] = xi + h;
        const double fp = f(x);
        x[i] = xi - h;
        const double fm = f(x);
        x[i] = xi;
        if (!finite(fp) || !finite(fm)) {
            ok = false;
            return g;
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

OptimResult minimize_bfgs(const Objective& f, const std::vector<double>& x0,
                          double grad_step, double tol, std::size_t max_iter) {
    const std::size_t n = x0.size();
    OptimResult res;
    res.method_used = OptimMethod::Bfgs;
    res.params = x0;
    res.objective = f(x0);
    if (!finite(res.objective)) return res;

    std::vector<double> x = x0;
    double fx = res.objective;
    bool grad_ok = false;
    std::vector<double> g = gradient_central(f, x, grad_step, grad_ok);
    if (!grad_ok) return res;

    // Inverse Hessian approximation, dense row-major identity start.
    std::vector<double> H(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;

    std::vector<double> p(n), x_new(n), g_new(n), s(n), yv(n), Hy(n);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        res.iterations = iter;
        if (norm2(g) <= tol) {
            res.converged = true;
            break;
        }
        // p = -H g
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * g[j];
            p[i] = -acc;
        }
        double slope = std::inner_product(p.begin(), p.end(), g.begin(), 0.0);
        if (!(slope < 0.0)) {
            // Reset to steepest descent if H lost positive definiteness.
            std::fill(H.begin(), H.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
            for (std::size_t i = 0; i < n; ++i) p[i] = -g[i];
            slope = -norm2(g) * norm2(g);
        }

        // Backtracking Armijo line search.
        constexpr double armijo = 1e-4;
        double step = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * p[i];
            f_new = f(x_new);
            if (finite(f_new) && f_new <= fx + armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Line-search collapse: report the best point with failure.
            res.params = x;
            res.objective = fx;
            res.converged = false;
            return res;
        }

        std::vector<double> g_next = gradient_central(f, x_new, grad_step, grad_ok);
        if (!grad_ok) {
            res.params = x_new;
            res.objective = f_new;
            res.converged = false;
            return res;
        }
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            yv[i] = g_next[i] - g[i];
        }
        const double sy = std::inner_product(s.begin(), s.end(), yv.begin(), 0.0);
        if (sy > 1e-12 * norm2(s) * norm2(yv)) {
            // BFGS inverse update (Sherman-Morrison form).
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * yv[j];
                Hy[i] = acc;
            }
            const double yHy = std::inner_product(yv.begin(), yv.end(), Hy.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i * n + j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                                    rho * (s[i] * Hy[j] + Hy[i] * s[j]);
        }
        x = x_new;
        fx = f_new;
        g = g_next;
        res.params = x;
        res.objective = fx;
    }
    if (!res.converged && norm2(g) <= tol) res.converged = true;
    return res;
}

OptimResult minimize_nelder_mead(const Objective& f, const std::vector<double>& x0,
                                 double tol, std::size_t max_iter) {
    const std::size_t n = x0.size();
    OptimResult res;
    res.method_used = OptimMethod::NelderMead;

    // Initial simplex: x0 plus a per-coordinate displacement.
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += (x0[i] != 0.0) ? 0.05 * std::abs(x0[i]) : 0.1;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(pts[i]);
        if (!finite(fv[i])) fv[i] = std::numeric_limits<double>::max();
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto eval = [&f](const std::vector<double>& x) {
        const double v = f(x);
        return finite(v) ? v : std::numeric_limits<double>::max();
    };

    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n];
        const std::size_t second_worst = order[n - 1];

        if (std::abs(fv[worst] - fv[best]) <= tol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i];
        }
        for (std::size_t i = 0; i < n; ++i) centroid[i] /= static_cast<double>(n);

        for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - pts[worst][i]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            for (std::size_t i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (centroid[i] - pts[worst][i]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            if (outside)
                for (std::size_t i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
            else
                for (std::size_t i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (pts[worst][i] - centroid[i]);
            const double fc = eval(xc);
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
                    fv[k] = eval(pts[k]);
                }
            }
        }
    }
    res.iterations = iter;
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.params = pts[best];
    res.objective = fv[best];
    return res;
}

OptimResult minimize_with_fallback(const Objective& f, const std::vector<double>& x0,
                                   const OptimConfig& config) {
    OptimResult bfgs =
        minimize_bfgs(f, x0, config.grad_step, config.bfgs_tol, config.bfgs_max_iter);
    if (bfgs.converged) return bfgs;

    OptimResult nm = minimize_nelder_mead(f, x0, config.nm_tol, config.nm_max_iter);
    nm.method_used = OptimMethod::NelderMead;
    if (nm.converged) return nm;

    // Both failed: keep whichever point is better.
    return (bfgs.objective <= nm.objective && std::isfinite(bfgs.objective)) ? bfgs : nm;
}

} // namespace twscore
