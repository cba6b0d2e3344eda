#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own geometry or quadrature; frozen numbers were produced with a
// computer algebra system at 30 significant digits.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// (sqrt(13) - 1) / 6 and (-sqrt(13) - 1) / 6
inline constexpr long double kA1 = 0.434258545910664882186536877912L;
inline constexpr long double kA2 = -0.767591879243998215519870211245L;

namespace frozen {
inline constexpr double theta_at_minus_1 = 2.34706225403;
inline constexpr double f_at_minus_1 = 0.309858529206;
inline constexpr double laplacian_f_at_minus_1 = -0.136369981198546;
inline constexpr double gaussian_at_minus_1 = -0.933057879700057;
inline constexpr double f_at_minus_001 = 0.434242167888;
inline constexpr double gaussian_at_minus_001 = -0.868527009366813;
}  // namespace frozen

/// Metric diag(e^{2z}, e^{-2z}, 1) at height z.
inline std::array<double, 3> metric_diagonal(double z) { return {std::exp(2.0 * z), std::exp(-2.0 * z), 1.0}; }

/// Gamma^k_ij from the Koszul formula with central differences of the metric
/// in z (the only coordinate the metric depends on).
inline std::array<std::array<std::array<double, 3>, 3>, 3> christoffel_from_metric(double z, double h = 1e-5) {
    const auto g = metric_diagonal(z);
    const auto gp = metric_diagonal(z + h), gm = metric_diagonal(z - h);
    std::array<std::array<double, 3>, 3> dg{};  // dg[l][i] = d_l g_ii
    for (int i = 0; i < 3; ++i) dg[2][i] = (gp[i] - gm[i]) / (2.0 * h);
    std::array<std::array<std::array<double, 3>, 3>, 3> gam{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // 1/2 g^{kk} (d_i g_jk + d_j g_ik - d_k g_ij), diagonal metric
                double s = 0.0;
                if (j == k) s += dg[i][k];
                if (i == k) s += dg[j][k];
                if (i == j) s -= dg[k][i];
                gam[k][i][j] = 0.5 * s / g[k];
            }
    return gam;
}

inline double theta_explicit(double u) {
    return static_cast<double>(2.0L * std::atan(std::exp(-2.0L * kA1 * u)));
}

inline double f_explicit(double u) {
    const long double e = std::exp(-2.0L * kA1 * u);
    return static_cast<double>(2.0L * kA1 * e / (1.0L + e * e));
}

/// -(8a E + (1-E)^2) / (1+E)^2 with E = e^{-4au}; the Gauss-equation value.
inline double gaussian_explicit(double u) {
    const long double e = std::exp(-4.0L * kA1 * u);
    return static_cast<double>(-(8.0L * kA1 * e + (1.0L - e) * (1.0L - e)) / ((1.0L + e) * (1.0L + e)));
}

/// Composite trapezoid with Richardson extrapolation (Romberg, fixed depth).
inline double romberg(const std::function<double(double)>& f, double a, double b, int depth = 14) {
    std::vector<std::vector<double>> r(depth, std::vector<double>(depth, 0.0));
    double h = b - a;
    r[0][0] = 0.5 * h * (f(a) + f(b));
    for (int i = 1; i < depth; ++i) {
        h *= 0.5;
        double s = 0.0;
        const long n = 1L << (i - 1);
        for (long k = 1; k <= n; ++k) s += f(a + static_cast<double>(2 * k - 1) * h);
        r[i][0] = 0.5 * r[i - 1][0] + h * s;
        double p = 4.0;
        for (int j = 1; j <= i; ++j, p *= 4.0) r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (p - 1.0);
    }
    return r[depth - 1][depth - 1];
}

/// Root of the implicit relation (f - a1 s)^{6a2} = c (f - a2 s)^{6a1} by
/// plain bisection in long double on the log form.
inline double implicit_f(double theta, double c) {
    const long double s = std::sin(static_cast<long double>(theta));
    const long double lo0 = std::max(kA1 * s, kA2 * s);
    auto g = [&](long double f) {
        return 6.0L * kA2 * std::log(f - kA1 * s) - 6.0L * kA1 * std::log(f - kA2 * s) -
               std::log(static_cast<long double>(c));
    };
    long double lo = lo0 + 1e-300L, hi = lo0 + 1.0L;
    while (g(hi) > 0.0L) hi = lo0 + 2.0L * (hi - lo0);
    for (int i = 0; i < 400; ++i) {
        const long double m = 0.5L * (lo + hi);
        if (m == lo || m == hi) break;
        (g(m) > 0.0L ? lo : hi) = m;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

/// Classical RK4 with a fixed step for y' = F(t, y), returning y(t1).
template <std::size_t N>
std::array<double, N> rk4(const std::function<std::array<double, N>(double, const std::array<double, N>&)>& F,
                          double t0, std::array<double, N> y, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    auto axpy = [](const std::array<double, N>& a, double k, const std::array<double, N>& b) {
        std::array<double, N> r{};
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + k * b[i];
        return r;
    };
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = F(t, y);
        const auto k2 = F(t + h / 2, axpy(y, h / 2, k1));
        const auto k3 = F(t + h / 2, axpy(y, h / 2, k2));
        const auto k4 = F(t + h, axpy(y, h, k3));
        for (std::size_t j = 0; j < N; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        t += h;
    }
    return y;
}

/// Schoolbook polynomial arithmetic in 128-bit integers, ascending degree.
using Poly128 = std::vector<__int128>;

inline Poly128 mul(const Poly128& a, const Poly128& b) {
    if (a.empty() || b.empty()) return {};
    Poly128 r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly128 add(Poly128 a, const Poly128& b, __int128 k = 1) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += k * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline Poly128 deriv(const Poly128& a) {
    Poly128 r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<__int128>(i));
    return r;
}

/// 2(3g+1) P1 P2 + (3g^2+g-1)(P1 P2' - P2 P1').
inline Poly128 combination(const Poly128& p1, const Poly128& p2) {
    const Poly128 first = mul(mul({2, 6}, p1), p2);
    const Poly128 w = add(mul(p1, deriv(p2)), mul(p2, deriv(p1)), -1);
    return add(first, mul({-1, 1, 3}, w));
}

}  // namespace oracle
