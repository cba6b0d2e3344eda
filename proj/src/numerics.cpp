#include "solgeom/numerics.hpp"

#include <cmath>
#include <utility>

#include "solgeom/errors.hpp"

namespace solgeom::numerics {

RootResult safeguarded_newton(const std::function<std::array<double, 2>(double)>& f_df,
                              double lo, double hi, double x_tol, int max_iter) {
    auto [flo, dlo] = f_df(lo);
    auto [fhi, dhi] = f_df(hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0)) throw RootNotBracketed("safeguarded_newton: no sign change");
    // Orient so that f(lo) < 0.
    if (flo > 0.0) std::swap(lo, hi);

    double x = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    auto [fx, dfx] = f_df(x);
    for (int it = 1; it <= max_iter; ++it) {
        const bool newton_leaves = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) > 0.0;
        const bool newton_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
        dx_old = dx;
        if (newton_leaves || newton_slow) {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        if (std::abs(dx) <= x_tol * (1.0 + std::abs(x))) return {x, it, true};
        const auto r = f_df(x);
        fx = r[0];
        dfx = r[1];
        if (fx == 0.0) return {x, it, true};
        if (fx < 0.0) lo = x;
        else hi = x;
    }
    return {x, max_iter, false};
}

std::array<double, 2> expand_bracket(const std::function<double(double)>& f, double lo, double hi,
                                     int max_expand) {
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_expand; ++i) {
        if ((flo > 0.0) != (fhi > 0.0)) return {lo, hi};
        const double width = hi - lo;
        if (std::abs(flo) < std::abs(fhi)) {
            lo -= 1.6 * width;
            flo = f(lo);
        } else {
            hi += 1.6 * width;
            fhi = f(hi);
        }
    }
    throw RootNotBracketed("expand_bracket: no sign change found");
}

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    std::size_t evaluations = 0;
    double error = 0.0;
};

double simpson_recurse(SimpsonState& st, double a, double fa, double b, double fb, double m,
                       double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    st.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        st.error += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// 16-point Gauss-Legendre nodes (positive half) and weights.
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, 0};
    SimpsonState st{f};
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    st.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double v = simpson_recurse(st, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
    return {v, st.error, st.evaluations};
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        double s = 0.0;
        for (std::size_t k = 0; k < kGlNodes.size(); ++k)
            s += kGlWeights[k] * (f(mid - half * kGlNodes[k]) + f(mid + half * kGlNodes[k]));
        sum += half * s;
    }
    return sum;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> midpoints(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a + (b - a) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return out;
}

}  // namespace solgeom::numerics
