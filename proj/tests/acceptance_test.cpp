// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// budgets fixed below. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "oracles.hpp"
#include "solgeom/exact_poly.hpp"
#include "solgeom/family.hpp"
#include "solgeom/numerics.hpp"
#include "solgeom/sol_space.hpp"
#include "solgeom/surface_calculus.hpp"
#include "solgeom/verification.hpp"

using namespace solgeom;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < budget_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %s  %s | %s | %.3fs (budget %.0fs)%s\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), dt,
                budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    return {d(rng), d(rng), d(rng)};
}

const CheckReport* find(const std::vector<CheckReport>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.check_id == id) return &r;
    return nullptr;
}

ProfileSolution explicit_profile(std::size_t samples = 64) {
    ProfileRequest r;
    r.u_begin = -4.0;
    r.u_end = -0.01;
    r.samples = samples;
    return build_profile(r);
}

}  // namespace

int main() {
    criterion("AC1", "sectional curvatures (-1, -1, +1)", 1.0, [] {
        std::mt19937_64 rng(kSeed);
        const std::array<std::array<int, 2>, 3> planes{{{1, 3}, {2, 3}, {1, 2}}};
        const std::array<double, 3> expected{-1.0, -1.0, 1.0};
        double err = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Point p = random_point(rng);
            for (int k = 0; k < 3; ++k) {
                const double s = sectional_curvature(TangentVector::frame_vector(p, planes[k][0]),
                                                     TangentVector::frame_vector(p, planes[k][1]));
                err = std::max(err, std::abs(s - expected[k]));
            }
        }
        return Outcome{err <= 1e-12, fmt("100 points, max |K - K_ref| = %.2e (tol 1e-12)", err)};
    });

    criterion("AC2", "closed-form curvature vs Christoffel differences", 5.0, [] {
        std::mt19937_64 rng(kSeed + 1);
        std::normal_distribution<double> n(0.0, 1.0);
        auto vec = [&](const Point& p) { return TangentVector::in_frame(p, Vec3(n(rng), n(rng), n(rng))); };
        double err = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Point p = random_point(rng);
            const auto x = vec(p), y = vec(p), z = vec(p);
            const Vec3 d = curvature_tensor(x, y, z).frame() - curvature_from_christoffel(x, y, z, 1e-4).frame();
            err = std::max(err, d.cwiseAbs().maxCoeff());
        }
        return Outcome{err <= 1e-6, fmt("50 triples, step 1e-4, max component error %.2e (tol 1e-6)", err)};
    });

    criterion("AC3", "foliation leaves", 1.0, [] {
        const auto pts = grid_points({-1.0, 1.0, -1.0, 1.0}, {16, 16});
        double sigma = 0.0, h = 0.0, k = 0.0, eig = 0.0;
        for (double level : {-0.7, 0.0, 1.3}) {
            const auto lx = canonical_leaf(LeafKind::x_const, level), ly = canonical_leaf(LeafKind::y_const, level);
            const auto lz = canonical_leaf(LeafKind::z_const, level);
            for (const auto& [u, v] : pts) {
                for (const auto* leaf : {&lx, &ly}) {
                    const auto s = shape_data(*leaf, u, v);
                    sigma = std::max(sigma, s.shape.cwiseAbs().maxCoeff());
                }
                const auto s = shape_data(lz, u, v);
                h = std::max(h, std::abs(s.mean_curvature));
                k = std::max(k, std::abs(s.gaussian_curvature));
                eig = std::max({eig, std::abs(s.principal[0] + 1.0), std::abs(s.principal[1] - 1.0)});
            }
        }
        const bool ok = sigma <= 1e-9 && h <= 1e-10 && k <= 1e-8 && eig <= 1e-9;
        char buf[200];
        std::snprintf(buf, sizeof buf, "x,y leaves |sigma| %.1e; z leaf |h| %.1e, |K| %.1e, eigen err %.1e", sigma, h,
                      k, eig);
        return Outcome{ok, buf};
    });

    criterion("AC4", "explicit family mean and Gaussian curvature", 10.0, [] {
        const auto profile = explicit_profile();
        const auto patch = family_surface(profile, SurfaceVariant::x1);
        double ef = 0.0, ek = 0.0, kmax = -std::numeric_limits<double>::infinity(), printed_gap = 0.0;
        for (const auto& [u, v] : grid_points(patch.domain, {64, 16})) {
            const auto s = shape_data(patch, u, v);
            ef = std::max(ef, std::abs(s.mean_curvature - oracle::f_explicit(u)));
            ek = std::max(ek, std::abs(s.gaussian_curvature - oracle::gaussian_explicit(u)));
            kmax = std::max(kmax, s.gaussian_curvature);
            printed_gap = std::max(printed_gap, std::abs(gaussian_curvature_printed_form(u) - s.gaussian_curvature));
        }
        char buf[260];
        std::snprintf(buf, sizeof buf,
                      "64x16 grid on u in [-4,-0.01]: |h - f| %.1e (tol 1e-8), |K - K_closed| %.1e (tol 1e-7), "
                      "max K %.4f; printed 4a rational form deviates by up to %.3f (8a form used)",
                      ef, ek, kmax, printed_gap);
        return Outcome{ef <= 1e-8 && ek <= 1e-7 && kmax < 0.0, buf};
    });

    criterion("AC5", "biconservative residual, analytic and FD order", 30.0, [] {
        const auto profile = explicit_profile();
        const auto x1 = family_surface(profile, SurfaceVariant::x1);
        const auto x2 = family_surface(profile.mirrored(), SurfaceVariant::x2);
        double res = 0.0;
        for (const auto* p : {&x1, &x2})
            for (const auto& [u, v] : grid_points(p->domain, {64, 16}))
                res = std::max(res, tangent_norm(fundamental_forms(*p, u, v).first, biconservative_residual(*p, u, v)));
        double order = std::numeric_limits<double>::infinity();
        for (const auto* p : {&x1, &x2})
            for (double q : residual_convergence(*p, {64, 16}).orders) order = std::min(order, q);
        char buf[200];
        std::snprintf(buf, sizeof buf, "x1,x2 64x16 analytic residual %.1e (tol 1e-6); FD order min %.3f (>= 1.8)", res,
                      order);
        return Outcome{res <= 1e-6 && order >= 1.8, buf};
    });

    criterion("AC6", "profile identities", 10.0, [] {
        // explicit: theta' + 2f from the closed-form derivative of theta = 2 atan(e^{-2 a1 u})
        double e_theta = 0.0, e_ode = 0.0;
        for (const double u : numerics::linspace(-4.0, -0.01, 200)) {
            const long double e = std::exp(-2.0L * oracle::kA1 * u);
            const double dtheta = static_cast<double>(-4.0L * oracle::kA1 * e / (1.0L + e * e));
            e_theta = std::max(e_theta, std::abs(dtheta + 2.0 * f_explicit(u)));
            const double th = theta_explicit(u), f = f_explicit(u), df = df_explicit(u);
            e_ode = std::max(e_ode, std::abs(3 * f * df + df * std::sin(th) + f * std::sin(2 * th)));
        }
        // implicit: central differences of the integrated theta at two widths, relation residual
        double e_fd = 0.0, e_fd_half = 0.0, e_rel = 0.0, e_ode_imp = 0.0;
        for (double c : {0.5, 1.0, 2.0}) {
            ProfileRequest r;
            r.kind = ProfileKind::implicit_family;
            r.c = c;
            const auto p = build_profile(r);
            for (const auto& s : p.samples) e_rel = std::max(e_rel, std::abs(implicit_log_residual(s.f, s.theta, c)));
            const double a = p.u_first() + 0.01, b = p.u_last() - 0.01;
            for (const double u : numerics::linspace(a, b, 40)) {
                auto th = [&](double x) { return p.at(x, false).theta; };
                auto ff = [&](double x) { return p.at(x, false).f; };
                const double f = ff(u), t = th(u);
                for (auto [hd, e] : {std::pair{2e-3, &e_fd}, std::pair{1e-3, &e_fd_half}})
                    *e = std::max(*e, std::abs((th(u + hd) - th(u - hd)) / (2 * hd) + 2 * f));
                const double hd = 1e-3;
                const double df = (ff(u - 2 * hd) - 8 * ff(u - hd) + 8 * ff(u + hd) - ff(u + 2 * hd)) / (12 * hd);
                e_ode_imp = std::max(e_ode_imp, std::abs(3 * f * df + df * std::sin(t) + f * std::sin(2 * t)));
            }
        }
        const double order = std::log2(e_fd / e_fd_half);
        const bool ok = e_theta <= 1e-12 && e_ode <= 1e-8 && e_ode_imp <= 1e-8 && e_rel <= 1e-10 && order >= 1.8;
        char buf[320];
        std::snprintf(buf, sizeof buf,
                      "explicit |theta'+2f| %.1e, ODE %.1e; implicit FD |theta'+2f| %.1e -> %.1e (order %.2f), "
                      "ODE %.1e, log relation %.1e",
                      e_theta, e_ode, e_fd, e_fd_half, order, e_ode_imp, e_rel);
        return Outcome{ok, buf};
    });

    criterion("AC7", "biharmonic obstruction on the explicit family", 5.0, [] {
        const auto profile = explicit_profile();
        double max_lap = -std::numeric_limits<double>::infinity();
        double min_rhs = std::numeric_limits<double>::infinity(), agree = 0.0;
        for (const auto& s : profile.samples) {
            const double lap = laplacian_f_explicit(s.u);
            max_lap = std::max(max_lap, lap);
            const double sn = std::sin(s.theta);
            min_rhs = std::min(min_rhs, 4 * s.f * (s.f * s.f + s.f * sn + sn * sn));
            agree = std::max(agree, std::abs(laplacian_f_explicit_rational(s.u) - lap));
        }
        bool reports_ok = true;
        for (const auto& r : check_biharmonic_obstruction(profile)) reports_ok = reports_ok && r.ok();
        char buf[240];
        std::snprintf(buf, sizeof buf, "64 samples: max Delta f %.4f (< 0), min 4f(...) %.4f (> 0), forms agree %.1e "
                      "(tol 1e-9), surface-level checks %s",
                      max_lap, min_rhs, agree, reports_ok ? "pass" : "FAIL");
        return Outcome{max_lap < 0.0 && min_rhs > 0.0 && agree <= 1e-9 && reports_ok, buf};
    });

    criterion("AC8", "exact degree-8 polynomial identity", 1.0, [] {
        const std::vector<BigInt> expected{25128, 92760, 85632, 15840, -19352, -13224, -1872, 656, 160};
        const auto p1 = paper_p1(), p2 = paper_p2();
        const auto combo = nonexistence_combination(p1, p2);
        const auto product = IntPolynomial{2, 6} * p1 * p2;
        const auto wronskian = IntPolynomial{-1, 1, 3} * (p1 * p2.derivative() - p2 * p1.derivative());
        const bool cancels = (product + wronskian).coefficient(9) == 0 && product.coefficient(9) != 0;
        const bool exact = combo.degree() == 8 && combo.descending() == expected;
        const bool oracle_ok = [&] {
            oracle::Poly128 a, b;
            for (const auto& c : p1.ascending()) a.push_back(static_cast<long long>(c));
            for (const auto& c : p2.ascending()) b.push_back(static_cast<long long>(c));
            const auto o = oracle::combination(a, b);
            if (o.size() != combo.ascending().size()) return false;
            for (std::size_t i = 0; i < o.size(); ++i)
                if (o[i] != static_cast<__int128>(static_cast<long long>(combo.ascending()[i]))) return false;
            return true;
        }();
        // The factor between computed and listed coefficients (1 when they coincide).
        const Rational factor(static_cast<BigInt>(combo.leading()), expected.front());
        return Outcome{exact && cancels && oracle_ok,
                       "degree " + std::to_string(combo.degree()) + ", coefficients " + (exact ? "exact" : "DIFFER") +
                           ", g^9 " + (cancels ? "cancels" : "SURVIVES") + ", constant factor " + factor.str() +
                           ", independent int128 expansion " + (oracle_ok ? "agrees" : "DISAGREES")};
    });

    criterion("AC9", "negative controls", 10.0, [] {
        SuiteOptions o;
        const auto frames = frames_suite(o);
        const auto family = family_suite(o);
        const auto* rot = find(frames, "frames.negative.rotated_leaf.identity_2");
        const auto* graph = find(family, "family.negative.graph_residual");
        if (rot == nullptr || graph == nullptr) return Outcome{false, "negative-control report missing"};
        const double min_res = graph->context.value("min_residual", 0.0);
        const bool ok = rot->expected_failure && rot->status == CheckStatus::fail && graph->expected_failure &&
                        graph->status == CheckStatus::fail && min_res >= 1e-3 && all_ok(frames) && all_ok(family);
        char buf[260];
        std::snprintf(buf, sizeof buf,
                      "graph residual min %.3e (>= 1e-3), rotated leaf sin2beta defect %.3f; both expected "
                      "failures, suites otherwise %s",
                      min_res, rot->max_error, all_ok(frames) && all_ok(family) ? "green" : "RED");
        return Outcome{ok, buf};
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
