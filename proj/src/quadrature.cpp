#include "twscore/quadrature.hpp"

#include <cmath>

namespace twscore {

namespace {

// QUADPACK DQK15 abscissae and weights.
constexpr double kron_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kron_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double value;
    double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kron_x[i]);
        fv[14 - i] = f(c + h * kron_x[i]);
    }
    fv[7] = f(c);
    double kron = kron_w[7] * fv[7];
    double gauss = gauss_w[3] * fv[7];
    for (int i = 0; i < 7; ++i)
        kron += kron_w[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
        gauss += gauss_w[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    return {h * kron, std::abs(h * (kron - gauss))};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, QuadResult& out) {
    Panel p = gk15(f, a, b);
    if (p.err <= tol || depth <= 0) {
        out.value += p.value;
        out.abs_error += p.err;
        if (depth <= 0 && p.err > tol) out.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    adapt(f, a, c, 0.5 * tol, depth - 1, out);
    adapt(f, c, b, 0.5 * tol, depth - 1, out);
}

} // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    QuadResult out;
    if (a == b) return out;
    adapt(f, a, b, abs_tol, max_depth, out);
    return out;
}

} // namespace twscore
