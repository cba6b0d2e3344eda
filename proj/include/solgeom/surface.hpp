#pragma once

#include <functional>
#include <optional>
#include <string>

#include "solgeom/sol_space.hpp"

namespace solgeom {

struct ParamDomain {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;

    [[nodiscard]] bool contains(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
};

/// Position and coordinate partials (up to second order) of an immersion.
struct PatchJet {
    Point position;
    Vec3 du = Vec3::Zero(), dv = Vec3::Zero();
    Vec3 duu = Vec3::Zero(), duv = Vec3::Zero(), dvv = Vec3::Zero();
};

/// Value and parameter partials of a scalar function on the domain.
struct ScalarJet {
    double value = 0.0;
    double du = 0.0, dv = 0.0;
    double duu = 0.0, duv = 0.0, dvv = 0.0;
};

/// A scalar function on the parameter domain, optionally with analytic partials.
struct ScalarField {
    std::function<double(double, double)> value;
    std::function<ScalarJet(double, double)> jet;
};

struct FiniteDifferenceSteps {
    double first = 1e-5;   // first partials
    double second = 1e-4;  // second partials
};

/// An immersion from a parameter rectangle into Sol^3.
struct SurfacePatch {
    std::string name;
    std::function<Point(double, double)> immersion;
    /// Analytic position and partials; finite differences of `immersion` are used when empty.
    std::function<PatchJet(double, double)> analytic_jet;
    /// Closed-form mean curvature with its partials. When empty, the mean
    /// curvature is differentiated numerically.
    std::function<ScalarJet(double, double)> mean_curvature_jet;
    ParamDomain domain;
    int orientation = 1;
    FiniteDifferenceSteps fd;

    [[nodiscard]] PatchJet jet(double u, double v) const;
    [[nodiscard]] PatchJet finite_difference_jet(double u, double v) const;

    /// Copy of the patch with analytic handles removed and the given FD steps.
    [[nodiscard]] SurfacePatch without_analytic_derivatives(FiniteDifferenceSteps steps) const;
};

enum class LeafKind { x_const, y_const, z_const };

/// Leaves of the three canonical foliations. The z = const leaf is
/// parametrized isometrically, (e^{-c}u, e^{c}v, c), so its first form is the identity.
SurfacePatch canonical_leaf(LeafKind kind, double level, ParamDomain domain = {-1.0, 1.0, -1.0, 1.0});

/// The graph z = k (x^2 + y^2) over the parameter rectangle.
SurfacePatch graph_patch(double k = 0.1, ParamDomain domain = {0.25, 1.0, 0.25, 1.0});

/// The x = const leaf rotated in the coordinate (x, y)-plane about the
/// z-axis by `angle`: (v cos a, v sin a, u). E3 is tangent, so the horizontal
/// tangent direction makes an angle with E1 that varies with height.
SurfacePatch rotated_leaf(double angle, ParamDomain domain = {-0.5, 0.5, -0.5, 0.5});

/// A vertical cylinder over the coordinate circle of radius r: (r cos v, r sin v, u).
SurfacePatch vertical_cylinder(double radius = 1.0, ParamDomain domain = {-0.5, 0.5, 0.2, 1.3});

}  // namespace solgeom
