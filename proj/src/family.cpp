#include "solgeom/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solgeom/numerics.hpp"

namespace solgeom {

const FamilyConstants& family_constants() {
    static const FamilyConstants k = [] {
        const double r = std::sqrt(13.0);
        const double a1 = (-1.0 + r) / 6.0;
        const double a2 = (-1.0 - r) / 6.0;
        return FamilyConstants{a1, a2, 6.0 * a1 / r, 6.0 * a2 / r};
    }();
    return k;
}

namespace {

constexpr double kPi = std::numbers::pi;

void require_negative(double u, const char* what) {
    if (!(u < 0.0)) throw DomainError(std::string(what) + ": the explicit profile needs u < 0");
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double theta_raw(double u) { return 2.0 * std::atan(std::exp(-2.0 * family_constants().a1 * u)); }

// (1/(2a)) ln(e^{-4au} + 1) + u
double psi_raw(double u) {
    const double a = family_constants().a1;
    return softplus(-4.0 * a * u) / (2.0 * a) + u;
}

int gl_panels(double a, double b) { return std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 0.25))); }

ProfileState mirror(ProfileState s, SurfaceVariant target) {
    s.theta += target == SurfaceVariant::x2 ? -kPi : kPi;
    s.psi = -s.psi;
    std::swap(s.phi1, s.phi2);
    return s;
}

ProfileSample mirror(ProfileSample s, SurfaceVariant target) {
    s.theta += target == SurfaceVariant::x2 ? -kPi : kPi;
    s.psi = -s.psi;
    std::swap(s.phi1, s.phi2);
    return s;
}

class ExplicitCurve final : public ProfileCurve {
public:
    ExplicitCurve(double u0, double c0) : u0_(u0), c0_(c0) {}

    ProfileState at(double u, bool with_phi) const override {
        const double a = family_constants().a1;
        ProfileState s;
        s.u = u;
        s.theta = theta_raw(u);
        s.f = a * std::sin(s.theta);
        s.df = -a * a * std::sin(2.0 * s.theta);
        s.d2f = 4.0 * a * a * s.f * std::cos(2.0 * s.theta);
        s.dtheta = -2.0 * s.f;
        s.d2theta = -2.0 * s.df;
        s.psi = psi_raw(u) + c0_;
        if (with_phi) {
            const int n = gl_panels(u0_, u);
            s.phi1 = -numerics::gauss_legendre(
                [this](double t) { return std::sin(theta_raw(t)) * std::exp(psi_raw(t) + c0_); }, u0_, u, n);
            s.phi2 = numerics::gauss_legendre(
                [this](double t) { return std::sin(theta_raw(t)) * std::exp(-psi_raw(t) - c0_); }, u0_, u, n);
        }
        return s;
    }

private:
    double u0_, c0_;
};

std::array<double, 4> implicit_rhs(double c, const std::array<double, 4>& y) {
    const double th = y[0];
    const double f = implicit_f(th, c);
    const double s = std::sin(th);
    return {-2.0 * f, std::cos(th), -s * std::exp(y[1]), s * std::exp(-y[1])};
}

class ImplicitCurve final : public ProfileCurve {
public:
    ImplicitCurve(ImplicitTrajectory traj, double u0) : traj_(std::move(traj)) {
        const auto y = dense(u0);
        psi0_ = y[1];
        phi1_0_ = y[2];
        phi2_0_ = y[3];
    }

    ProfileState at(double u, bool with_phi) const override {
        const auto y = dense(u);
        ProfileState s;
        s.u = u;
        s.theta = y[0];
        s.f = implicit_f(s.theta, traj_.c);
        s.df = implicit_df(s.f, s.theta);
        s.d2f = implicit_d2f(s.f, s.theta);
        s.dtheta = -2.0 * s.f;
        s.d2theta = -2.0 * s.df;
        s.psi = y[1] - psi0_;
        if (with_phi) {
            s.phi1 = std::exp(-psi0_) * (y[2] - phi1_0_);
            s.phi2 = std::exp(psi0_) * (y[3] - phi2_0_);
        }
        return s;
    }

private:
    // One RK4 step from the node on the left (clamped to the node range).
    std::array<double, 4> dense(double u) const {
        const auto& nodes = traj_.u;
        std::size_t k = 0;
        if (nodes.size() > 1) {
            const double h = nodes[1] - nodes[0];
            const double pos = std::floor((u - nodes.front()) / h);
            k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(nodes.size() - 1)));
        }
        const double dt = u - nodes[k];
        if (dt == 0.0) return traj_.state[k];
        const double c = traj_.c;
        return numerics::rk4_step<4>([c](double, const std::array<double, 4>& y) { return implicit_rhs(c, y); },
                                     nodes[k], traj_.state[k], dt);
    }

    ImplicitTrajectory traj_;
    double psi0_ = 0.0, phi1_0_ = 0.0, phi2_0_ = 0.0;
};

HaltReason check_constraints(double theta, double c) {
    const double f = implicit_f(theta, c);
    if (!(-2.0 * f < 0.0)) return HaltReason::theta_prime_nonnegative;
    if (!(-2.0 * implicit_df(f, theta) < 0.0)) return HaltReason::theta_second_nonnegative;
    if (!(f > 0.0)) return HaltReason::f_nonpositive;
    if (std::abs(std::sin(theta) * std::cos(theta)) < 1e-12) return HaltReason::sin_cos_vanishes;
    return HaltReason::none;
}

ImplicitTrajectory integrate_with_step(double c, double theta_start, double u_span, double h,
                                       double u_begin) {
    ImplicitTrajectory t;
    t.c = c;
    std::array<double, 4> y{theta_start, 0.0, 0.0, 0.0};
    t.u.push_back(u_begin);
    t.state.push_back(y);
    t.halt = check_constraints(theta_start, c);
    if (t.halt != HaltReason::none) return t;

    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(u_span / h - 1e-9)));
    t.step = u_span / static_cast<double>(steps);
    const double hs = t.step;
    auto rhs = [c](double, const std::array<double, 4>& s) { return implicit_rhs(c, s); };
    for (std::size_t i = 1; i <= steps; ++i) {
        const double u = t.u.back();
        const auto full = numerics::rk4_step<4>(rhs, u, y, hs);
        const auto half = numerics::rk4_step<4>(rhs, u + 0.5 * hs, numerics::rk4_step<4>(rhs, u, y, 0.5 * hs), 0.5 * hs);
        double err = 0.0;
        for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(half[k] - full[k]) / 15.0);
        const HaltReason r = check_constraints(half[0], c);
        if (r != HaltReason::none) {
            t.halt = r;
            break;
        }
        t.max_error_estimate = std::max(t.max_error_estimate, err);
        y = half;
        t.u.push_back(u_begin + static_cast<double>(i) * hs);
        t.state.push_back(y);
    }
    return t;
}

// Cumulative integral of `g` from u0 to every grid point (grid ascending).
std::vector<double> cumulative_from_anchor(const std::function<double(double)>& g,
                                           const std::vector<double>& grid, double u0, double tol) {
    std::vector<double> out(grid.size(), 0.0);
    const double seg_tol = tol / static_cast<double>(grid.size() + 1);
    const auto split = std::lower_bound(grid.begin(), grid.end(), u0) - grid.begin();
    double acc = 0.0, prev = u0;
    for (auto i = split; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
        acc += numerics::adaptive_simpson(g, prev, grid[i], seg_tol).value;
        out[i] = acc;
        prev = grid[i];
    }
    acc = 0.0;
    prev = u0;
    for (auto i = split - 1; i >= 0; --i) {
        acc += numerics::adaptive_simpson(g, prev, grid[i], seg_tol).value;
        out[i] = acc;
        prev = grid[i];
    }
    return out;
}

}  // namespace

double theta_explicit(double u) {
    require_negative(u, "theta_explicit");
    return theta_raw(u);
}

double f_explicit(double u) {
    require_negative(u, "f_explicit");
    const double a = family_constants().a1;
    // 2a e^{-2au} / (1 + e^{-4au}) written to avoid overflow for large |u|.
    const double x = -2.0 * a * u;
    return a / std::cosh(x);
}

double df_explicit(double u) {
    require_negative(u, "df_explicit");
    const double a = family_constants().a1;
    return -a * a * std::sin(2.0 * theta_raw(u));
}

double d2f_explicit(double u) {
    require_negative(u, "d2f_explicit");
    const double a = family_constants().a1;
    const double th = theta_raw(u);
    return 4.0 * a * a * a * std::sin(th) * std::cos(2.0 * th);
}

double psi_explicit(double u, double c0) {
    require_negative(u, "psi_explicit");
    return psi_raw(u) + c0;
}

double psi_anchor_constant(double u0) {
    require_negative(u0, "psi_anchor_constant");
    return -psi_raw(u0);
}

double gaussian_curvature_closed_form(double u) {
    require_negative(u, "gaussian_curvature_closed_form");
    const double th = theta_raw(u);
    const double c = std::cos(th), s = std::sin(th);
    return -c * c - 2.0 * f_explicit(u) * s;
}

double gaussian_curvature_printed_form(double u) {
    require_negative(u, "gaussian_curvature_printed_form");
    const double a = family_constants().a1;
    const double e = std::exp(-4.0 * a * u);
    return -(4.0 * a * e + (1.0 - e) * (1.0 - e)) / ((1.0 + e) * (1.0 + e));
}

double laplacian_f_explicit(double u) {
    require_negative(u, "laplacian_f_explicit");
    return d2f_explicit(u) + std::cos(theta_raw(u)) * df_explicit(u);
}

double laplacian_f_explicit_rational(double u) {
    require_negative(u, "laplacian_f_explicit_rational");
    const double a = family_constants().a1;
    const double e = std::exp(-4.0 * a * u);
    const double k = 2.0 * a * a * a - a * a;
    const double num = 4.0 * std::exp(-6.0 * a * u) * (e * k + k / e + 2.0 * a * a - 12.0 * a * a * a);
    return num / std::pow(1.0 + e, 3);
}

double implicit_log_residual(double f, double theta, double c) {
    const auto& k = family_constants();
    const double s = std::sin(theta);
    return 6.0 * k.a2 * std::log(f - k.a1 * s) - 6.0 * k.a1 * std::log(f - k.a2 * s) - std::log(c);
}

double implicit_f(double theta, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("implicit_f: c must be positive");
    const auto& k = family_constants();
    const double s = std::sin(theta);
    if (!(std::abs(s) > 0.0) || !std::isfinite(s))
        throw RootNotBracketed("implicit_f: sin(theta) = 0 admits no root on the branch");
    // f = m + e^t keeps both logarithms real; one of the offsets is exactly 0.
    const double m = std::max(k.a1 * s, k.a2 * s);
    const double o1 = m - k.a1 * s, o2 = m - k.a2 * s;
    const double lc = std::log(c);
    auto g = [&](double t) {
        const double e = std::exp(t);
        return 6.0 * k.a2 * std::log(o1 + e) - 6.0 * k.a1 * std::log(o2 + e) - lc;
    };
    auto g_dg = [&](double t) -> std::array<double, 2> {
        const double e = std::exp(t);
        const double d1 = o1 + e, d2 = o2 + e;
        return {6.0 * k.a2 * std::log(d1) - 6.0 * k.a1 * std::log(d2) - lc,
                e * (6.0 * k.a2 / d1 - 6.0 * k.a1 / d2)};
    };
    const auto br = numerics::expand_bracket(g, -2.0, 2.0);
    const auto r = numerics::safeguarded_newton(g_dg, br[0], br[1], 1e-15);
    if (!r.converged) throw RootNotBracketed("implicit_f: Newton iteration did not converge");
    return m + std::exp(r.x);
}

double implicit_df(double f, double theta) {
    return -f * std::sin(2.0 * theta) / (3.0 * f + std::sin(theta));
}

double implicit_d2f(double f, double theta) {
    const double df = implicit_df(f, theta);
    const double dth = -2.0 * f;
    const double s2 = std::sin(2.0 * theta), c2 = std::cos(2.0 * theta);
    const double n = -f * s2;
    const double d = 3.0 * f + std::sin(theta);
    const double dn = -df * s2 - 2.0 * f * c2 * dth;
    const double dd = 3.0 * df + std::cos(theta) * dth;
    return (dn * d - n * dd) / (d * d);
}

double laplacian_f_implicit_rational(double f, double theta) {
    const double s = std::sin(theta);
    const double s2 = s * s, s3 = s2 * s;
    const double inner = 36.0 * f * f * f * (1.0 - 2.0 * s2) - f * f * (6.0 * s + 18.0 * s3) -
                         f * (12.0 * s2 - 8.0 * s2 * s2) + 2.0 * s3 - 2.0 * s3 * s2;
    return f / std::pow(3.0 * f + s, 3) * inner;
}

std::string to_string(ProfileKind k) { return k == ProfileKind::explicit_family ? "explicit" : "implicit"; }
std::string to_string(SurfaceVariant v) { return v == SurfaceVariant::x1 ? "x1" : "x2"; }

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "explicit") return ProfileKind::explicit_family;
    if (s == "implicit") return ProfileKind::implicit_family;
    throw std::invalid_argument("unknown profile kind '" + s + "' (expected explicit|implicit)");
}

SurfaceVariant variant_from_string(const std::string& s) {
    if (s == "x1") return SurfaceVariant::x1;
    if (s == "x2") return SurfaceVariant::x2;
    throw std::invalid_argument("unknown surface variant '" + s + "' (expected x1|x2)");
}

std::string to_string(HaltReason r) {
    switch (r) {
        case HaltReason::none: return "none";
        case HaltReason::theta_prime_nonnegative: return "theta' >= 0";
        case HaltReason::theta_second_nonnegative: return "theta'' >= 0";
        case HaltReason::f_nonpositive: return "f <= 0";
        case HaltReason::sin_cos_vanishes: return "sin(theta)cos(theta) = 0";
    }
    return "unknown";
}

ImplicitTrajectory integrate_implicit_profile(double c, double theta_start, double u_span,
                                              const StepControl& control, double u_begin) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("integrate_implicit_profile: c must be positive");
    if (!(u_span > 0.0) || !std::isfinite(u_span))
        throw DomainError("integrate_implicit_profile: u_span must be positive");
    if (!std::isfinite(theta_start)) throw DomainError("integrate_implicit_profile: theta_start not finite");
    if (!(control.step > 0.0)) throw DomainError("integrate_implicit_profile: step must be positive");

    double h = control.step;
    ImplicitTrajectory t;
    for (int refinement = 0; refinement <= control.max_refinements; ++refinement) {
        t = integrate_with_step(c, theta_start, u_span, h, u_begin);
        if (t.max_error_estimate <= control.richardson_tol) break;
        h *= 0.5;
    }
    return t;
}

ProfileState ProfileSolution::at(double u, bool with_phi) const {
    ProfileState s = curve_->at(u, with_phi);
    return convention == SurfaceVariant::x1 ? s : mirror(s, SurfaceVariant::x2);
}

ProfileSolution ProfileSolution::mirrored() const {
    ProfileSolution m = *this;
    m.convention = convention == SurfaceVariant::x1 ? SurfaceVariant::x2 : SurfaceVariant::x1;
    for (auto& s : m.samples) s = mirror(s, m.convention);
    return m;
}

std::vector<std::string> ProfileSolution::invariant_violations() const {
    std::vector<std::string> out;
    if (samples.size() < 2) out.emplace_back("fewer than two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const std::string at = " at u=" + std::to_string(s.u);
        if (i > 0 && !(s.u > samples[i - 1].u)) out.push_back("u not strictly increasing" + at);
        if (kind == ProfileKind::explicit_family && !(s.u < 0.0)) out.push_back("explicit profile with u >= 0" + at);
        if (!(s.f > 0.0)) out.push_back("f <= 0" + at);
        if (i > 0 && !(s.theta < samples[i - 1].theta)) out.push_back("theta not decreasing" + at);
        if (kind == ProfileKind::implicit_family && i > 0 && i + 1 < samples.size()) {
            const double d2 = samples[i + 1].theta - 2.0 * s.theta + samples[i - 1].theta;
            if (!(d2 < 0.0)) out.push_back("theta'' >= 0" + at);
        }
    }
    return out;
}

ProfileSolution build_profile(const ProfileRequest& req) {
    if (req.samples < 2) throw DomainError("build_profile: need at least two samples");
    if (!(req.u_begin < req.u_end)) throw DomainError("build_profile: empty u-range");

    ProfileSolution p;
    p.kind = req.kind;
    double u_last = req.u_end;

    if (req.kind == ProfileKind::explicit_family) {
        if (!(req.u_end < 0.0)) throw DomainError("build_profile: the explicit profile needs u < 0");
        p.u0 = req.u0.value_or(-1.0);
        if (!(p.u0 < 0.0)) throw DomainError("build_profile: explicit anchor u0 must be negative");
        p.c0 = psi_anchor_constant(p.u0);
        p.curve_ = std::make_shared<ExplicitCurve>(p.u0, p.c0);
    } else {
        p.c = req.c;
        p.theta_start = req.theta_start;
        ImplicitTrajectory traj =
            integrate_implicit_profile(req.c, req.theta_start, req.u_end - req.u_begin, req.control, req.u_begin);
        if (traj.u.size() < 2)
            throw DomainError("build_profile: implicit profile violates its constraints at the start (" +
                              to_string(traj.halt) + ")");
        p.halt = traj.halt;
        p.max_error_estimate = traj.max_error_estimate;
        u_last = std::min(req.u_end, traj.u.back());
        p.u0 = req.u0.value_or(req.u_begin);
        if (p.u0 < traj.u.front() || p.u0 > u_last)
            throw DomainError("build_profile: anchor u0 outside the integrated domain");
        p.curve_ = std::make_shared<ImplicitCurve>(std::move(traj), p.u0);
    }

    const auto grid = numerics::linspace(req.u_begin, u_last, req.samples);
    const ProfileCurve& curve = *p.curve_;
    const double tol = req.control.quadrature_tol;
    const auto psi = cumulative_from_anchor([&](double s) { return std::cos(curve.at(s, false).theta); },
                                            grid, p.u0, tol);
    const auto phi1 = cumulative_from_anchor(
        [&](double s) {
            const auto st = curve.at(s, false);
            return -std::sin(st.theta) * std::exp(st.psi);
        },
        grid, p.u0, tol);
    const auto phi2 = cumulative_from_anchor(
        [&](double s) {
            const auto st = curve.at(s, false);
            return std::sin(st.theta) * std::exp(-st.psi);
        },
        grid, p.u0, tol);

    p.samples.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto st = curve.at(grid[i], false);
        p.samples.push_back({grid[i], st.theta, st.f, psi[i], phi1[i], phi2[i]});
    }
    return req.variant == SurfaceVariant::x1 ? p : p.mirrored();
}

SurfacePatch family_surface(const ProfileSolution& profile, SurfaceVariant variant, double v_min,
                            double v_max) {
    if (profile.convention != variant)
        throw ProfileMismatch("family_surface: profile is stored for " + to_string(profile.convention) +
                              ", surface " + to_string(variant) + " requested");
    if (!(v_min < v_max)) throw DomainError("family_surface: empty v-range");

    SurfacePatch p;
    p.name = to_string(profile.kind) + " family surface " + to_string(variant);
    p.domain = {profile.u_first(), profile.u_last(), v_min, v_max};
    // ProfileSolution is cheap to copy (samples plus a shared evaluator).
    auto prof = std::make_shared<const ProfileSolution>(profile);

    if (variant == SurfaceVariant::x1) {
        p.immersion = [prof](double u, double v) {
            const auto s = prof->at(u, true);
            return Point{v, s.phi1, s.psi};
        };
        p.analytic_jet = [prof](double u, double v) {
            const auto s = prof->at(u, true);
            const double sn = std::sin(s.theta), cs = std::cos(s.theta), ep = std::exp(s.psi);
            PatchJet j;
            j.position = {v, s.phi1, s.psi};
            j.du = {0.0, -sn * ep, cs};
            j.dv = {1.0, 0.0, 0.0};
            j.duu = {0.0, -ep * cs * (s.dtheta + sn), -sn * s.dtheta};
            return j;
        };
    } else {
        p.immersion = [prof](double u, double v) {
            const auto s = prof->at(u, true);
            return Point{s.phi2, v, s.psi};
        };
        p.analytic_jet = [prof](double u, double v) {
            const auto s = prof->at(u, true);
            const double sn = std::sin(s.theta), cs = std::cos(s.theta), em = std::exp(-s.psi);
            PatchJet j;
            j.position = {s.phi2, v, s.psi};
            j.du = {sn * em, 0.0, cs};
            j.dv = {0.0, 1.0, 0.0};
            j.duu = {em * cs * (s.dtheta - sn), 0.0, -sn * s.dtheta};
            return j;
        };
    }
    p.mean_curvature_jet = [prof](double u, double) {
        const auto s = prof->at(u, false);
        ScalarJet j;
        j.value = s.f;
        j.du = s.df;
        j.duu = s.d2f;
        return j;
    };
    return p;
}

}  // namespace solgeom
