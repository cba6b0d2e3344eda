#pragma once

// Small numerical kernels used by the profile construction: bracketed
// Newton root finding, adaptive Simpson and Gauss-Legendre quadrature, and a
// classical RK4 step.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace solgeom::numerics {

struct RootResult {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Newton iteration kept inside [lo, hi] by bisection fallback. `f_df`
/// returns (f, f') at x. f(lo) and f(hi) must have opposite signs.
RootResult safeguarded_newton(const std::function<std::array<double, 2>(double)>& f_df,
                              double lo, double hi, double x_tol = 1e-15, int max_iter = 200);

/// Grows [lo, hi] geometrically until the sign of f changes. Throws
/// RootNotBracketed after `max_expand` attempts.
std::array<double, 2> expand_bracket(const std::function<double(double)>& f, double lo, double hi,
                                     int max_expand = 60);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Simpson with Richardson correction; `abs_tol` is the global target.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10, int max_depth = 50);

/// Fixed composite Gauss-Legendre rule (16 nodes per panel). The result is a
/// smooth function of the endpoints, which matters when it is differentiated
/// numerically.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 48);

/// One classical fourth-order Runge-Kutta step for y' = rhs(t, y).
template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N, class Rhs>
State<N> rk4_step(const Rhs& rhs, double t, const State<N>& y, double h) {
    auto axpy = [](const State<N>& a, double s, const State<N>& b) {
        State<N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    const State<N> k1 = rhs(t, y);
    const State<N> k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State<N> k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State<N> k4 = rhs(t + h, axpy(y, h, k3));
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/// Linearly spaced samples, both ends included.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Cell-centred samples of [a, b] (n cells).
std::vector<double> midpoints(double a, double b, std::size_t n);

}  // namespace solgeom::numerics
