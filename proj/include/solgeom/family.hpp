#pragma once

// Non-CMC biconservative surfaces of Sol^3. A profile theta(u) with
// theta' = -2f determines the constant-angle surfaces
//   x1(u,v) = (v, Phi1(u), Psi(u)),   x2(u,v) = (Phi2(u), v, Psi(u)),
// with Psi' = cos(theta), Phi1' = -sin(theta) e^{Psi}, Phi2' = sin(theta) e^{-Psi}.
// Their mean curvature is f; they are biconservative exactly when
// 3 f f' + f' sin(theta) + f sin(2 theta) = 0 (x1 convention). That equation
// has the explicit solution f = a1 sin(theta) and the implicit family
// (f - a1 sin theta)^{6 a2} = c (f - a2 sin theta)^{6 a1}.
//
// Profiles are stored in the convention of the surface they feed. The x2
// surface uses the mirrored profile theta - pi (Psi -> -Psi, Phi1 <-> Phi2),
// the image of x1 under the isometry (x, y, z) -> (y, x, -z).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solgeom/surface.hpp"

namespace solgeom {

struct FamilyConstants {
    double a1;  // (-1 + sqrt 13) / 6, the root of 3a^2 + a - 1 used by f > 0
    double a2;  // (-1 - sqrt 13) / 6
    double b1;  // 6 a1 / sqrt 13
    double b2;  // 6 a2 / sqrt 13
};

const FamilyConstants& family_constants();

// Closed forms along the explicit profile (u < 0; DomainError otherwise).
double theta_explicit(double u);
double f_explicit(double u);
double df_explicit(double u);
double d2f_explicit(double u);
double psi_explicit(double u, double c0);
/// c0 such that psi_explicit(u0, c0) == 0.
double psi_anchor_constant(double u0);
/// -cos^2(theta) - 2 f sin(theta), the Gauss-equation value.
double gaussian_curvature_closed_form(double u);
/// The rational expression as printed alongside it, -(4a E + (1-E)^2)/(1+E)^2,
/// E = e^{-4au}. Kept only so reports can show the factor-2 discrepancy.
double gaussian_curvature_printed_form(double u);
/// f'' + cos(theta) f'.
double laplacian_f_explicit(double u);
/// 4 e^{-6au} (E(2a^3-a^2) + e^{4au}(2a^3-a^2) + 2a^2 - 12a^3) / (1+E)^3.
double laplacian_f_explicit_rational(double u);

// Implicit family relation, x1 convention.

/// 6 a2 ln(f - a1 s) - 6 a1 ln(f - a2 s) - ln c with s = sin(theta).
double implicit_log_residual(double f, double theta, double c);
/// Unique f on the branch f > max(a1 s, a2 s). Throws RootNotBracketed when sin(theta) == 0.
double implicit_f(double theta, double c);
/// f' = -f sin(2 theta) / (3 f + sin theta) along a biconservative profile.
double implicit_df(double f, double theta);
/// f'' from differentiating implicit_df with theta' = -2f.
double implicit_d2f(double f, double theta);
/// Closed-form Delta f = f'' + cos(theta) f' on the implicit family, written in f and theta.
double laplacian_f_implicit_rational(double f, double theta);

enum class ProfileKind { explicit_family, implicit_family };
enum class SurfaceVariant { x1, x2 };

std::string to_string(ProfileKind k);
std::string to_string(SurfaceVariant v);
ProfileKind profile_kind_from_string(const std::string& s);
SurfaceVariant variant_from_string(const std::string& s);

enum class HaltReason {
    none,
    theta_prime_nonnegative,
    theta_second_nonnegative,
    f_nonpositive,
    sin_cos_vanishes,
};
std::string to_string(HaltReason r);

struct StepControl {
    double step = 1e-3;              // RK4 step of the implicit integration
    double richardson_tol = 1e-11;   // per-step estimate; the step is halved when exceeded
    int max_refinements = 6;
    double quadrature_tol = 1e-10;   // adaptive Simpson, absolute, for Psi and Phi
};

/// Raw RK4 trajectory of the augmented state (theta, Psi, Phi1, Phi2), x1
/// convention, Psi and Phi anchored at u_begin.
struct ImplicitTrajectory {
    double c = 1.0;
    double step = 0.0;
    std::vector<double> u;
    std::vector<std::array<double, 4>> state;
    double max_error_estimate = 0.0;
    HaltReason halt = HaltReason::none;
};

/// Integrates theta' = -2 f(theta) from theta(u_begin) = theta_start over
/// [u_begin, u_begin + u_span], halting before the first node at which
/// theta' >= 0, theta'' >= 0, f <= 0 or sin(theta) cos(theta) = 0.
ImplicitTrajectory integrate_implicit_profile(double c, double theta_start, double u_span,
                                              const StepControl& control = {},
                                              double u_begin = 0.0);

struct ProfileSample {
    double u = 0.0;
    double theta = 0.0;
    double f = 0.0;
    double psi = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    [[nodiscard]] double phi(SurfaceVariant v) const { return v == SurfaceVariant::x1 ? phi1 : phi2; }
};

/// Everything a surface needs at one parameter value.
struct ProfileState {
    double u = 0.0;
    double theta = 0.0, dtheta = 0.0, d2theta = 0.0;
    double f = 0.0, df = 0.0, d2f = 0.0;
    double psi = 0.0;
    double phi1 = 0.0, phi2 = 0.0;
};

/// Dense evaluator behind a profile (x1 convention).
class ProfileCurve {
public:
    virtual ~ProfileCurve() = default;
    [[nodiscard]] virtual ProfileState at(double u, bool with_phi) const = 0;
};

struct ProfileRequest {
    ProfileKind kind = ProfileKind::explicit_family;
    double c = 1.0;              // implicit only
    double theta_start = 3.0;    // implicit only, theta(u_begin)
    double u_begin = -4.0;
    double u_end = -0.01;
    std::size_t samples = 64;
    std::optional<double> u0;    // anchor; -1 (explicit) or u_begin (implicit) when unset
    StepControl control;
    SurfaceVariant variant = SurfaceVariant::x1;
};

class ProfileSolution {
public:
    ProfileKind kind = ProfileKind::explicit_family;
    SurfaceVariant convention = SurfaceVariant::x1;
    double c = 0.0;
    double theta_start = 0.0;
    double u0 = -1.0;
    double c0 = 0.0;
    std::vector<ProfileSample> samples;
    HaltReason halt = HaltReason::none;
    double max_error_estimate = 0.0;

    /// Dense state at any u in (a small neighbourhood of) the sampled range.
    [[nodiscard]] ProfileState at(double u, bool with_phi = true) const;
    [[nodiscard]] ProfileSolution mirrored() const;
    [[nodiscard]] double u_first() const { return samples.front().u; }
    [[nodiscard]] double u_last() const { return samples.back().u; }

    /// Invariant violations (empty when the profile is valid).
    [[nodiscard]] std::vector<std::string> invariant_violations() const;

private:
    friend ProfileSolution build_profile(const ProfileRequest& request);
    std::shared_ptr<const ProfileCurve> curve_;
};

/// Samples theta, f and (by adaptive Simpson, anchored at u0) Psi, Phi1, Phi2.
ProfileSolution build_profile(const ProfileRequest& request);

/// x1 or x2 as a patch with analytic jets and closed-form mean curvature.
/// Throws ProfileMismatch unless the profile is stored in the selector's convention.
SurfacePatch family_surface(const ProfileSolution& profile, SurfaceVariant variant,
                            double v_min = -1.0, double v_max = 1.0);

}  // namespace solgeom
