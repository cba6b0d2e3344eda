#include "solgeom/surface.hpp"

#include <cmath>

namespace solgeom {

PatchJet SurfacePatch::jet(double u, double v) const {
    if (analytic_jet) return analytic_jet(u, v);
    return finite_difference_jet(u, v);
}

PatchJet SurfacePatch::finite_difference_jet(double u, double v) const {
    auto at = [this](double a, double b) { return immersion(a, b).vec(); };
    PatchJet j;
    j.position = immersion(u, v);
    const Vec3 c = j.position.vec();

    const double h1 = fd.first;
    j.du = (at(u + h1, v) - at(u - h1, v)) / (2.0 * h1);
    j.dv = (at(u, v + h1) - at(u, v - h1)) / (2.0 * h1);

    const double h2 = fd.second;
    j.duu = (at(u + h2, v) - 2.0 * c + at(u - h2, v)) / (h2 * h2);
    j.dvv = (at(u, v + h2) - 2.0 * c + at(u, v - h2)) / (h2 * h2);
    j.duv = (at(u + h2, v + h2) - at(u + h2, v - h2) - at(u - h2, v + h2) + at(u - h2, v - h2)) /
            (4.0 * h2 * h2);
    if (!(j.du.allFinite() && j.dv.allFinite() && j.duu.allFinite() && j.duv.allFinite() &&
          j.dvv.allFinite()))
        throw NonFiniteValue("finite_difference_jet: non-finite partials for patch " + name);
    return j;
}

SurfacePatch SurfacePatch::without_analytic_derivatives(FiniteDifferenceSteps steps) const {
    SurfacePatch copy = *this;
    copy.analytic_jet = nullptr;
    copy.mean_curvature_jet = nullptr;
    copy.fd = steps;
    copy.name = name + " [fd]";
    return copy;
}

SurfacePatch canonical_leaf(LeafKind kind, double level, ParamDomain domain) {
    SurfacePatch p;
    p.domain = domain;
    switch (kind) {
        case LeafKind::x_const:
            p.name = "leaf x=const";
            p.immersion = [level](double u, double v) { return Point{level, u, v}; };
            p.analytic_jet = [level](double u, double v) {
                PatchJet j;
                j.position = {level, u, v};
                j.du = {0, 1, 0};
                j.dv = {0, 0, 1};
                return j;
            };
            break;
        case LeafKind::y_const:
            p.name = "leaf y=const";
            p.immersion = [level](double u, double v) { return Point{u, level, v}; };
            p.analytic_jet = [level](double u, double v) {
                PatchJet j;
                j.position = {u, level, v};
                j.du = {1, 0, 0};
                j.dv = {0, 0, 1};
                return j;
            };
            break;
        case LeafKind::z_const: {
            p.name = "leaf z=const";
            const double sx = std::exp(-level), sy = std::exp(level);
            p.immersion = [=](double u, double v) { return Point{sx * u, sy * v, level}; };
            p.analytic_jet = [=](double u, double v) {
                PatchJet j;
                j.position = {sx * u, sy * v, level};
                j.du = {sx, 0, 0};
                j.dv = {0, sy, 0};
                return j;
            };
            break;
        }
    }
    return p;
}

SurfacePatch graph_patch(double k, ParamDomain domain) {
    SurfacePatch p;
    p.name = "graph z=k(x^2+y^2)";
    p.domain = domain;
    p.immersion = [k](double u, double v) { return Point{u, v, k * (u * u + v * v)}; };
    p.analytic_jet = [k](double u, double v) {
        PatchJet j;
        j.position = {u, v, k * (u * u + v * v)};
        j.du = {1, 0, 2 * k * u};
        j.dv = {0, 1, 2 * k * v};
        j.duu = {0, 0, 2 * k};
        j.dvv = {0, 0, 2 * k};
        return j;
    };
    return p;
}

SurfacePatch rotated_leaf(double angle, ParamDomain domain) {
    SurfacePatch p;
    p.name = "rotated leaf";
    p.domain = domain;
    const double ca = std::cos(angle), sa = std::sin(angle);
    p.immersion = [=](double u, double v) { return Point{v * ca, v * sa, u}; };
    p.analytic_jet = [=](double u, double v) {
        PatchJet j;
        j.position = {v * ca, v * sa, u};
        j.du = {0, 0, 1};
        j.dv = {ca, sa, 0};
        return j;
    };
    return p;
}

SurfacePatch vertical_cylinder(double radius, ParamDomain domain) {
    SurfacePatch p;
    p.name = "vertical cylinder";
    p.domain = domain;
    p.immersion = [radius](double u, double v) {
        return Point{radius * std::cos(v), radius * std::sin(v), u};
    };
    p.analytic_jet = [radius](double u, double v) {
        PatchJet j;
        const double c = std::cos(v), s = std::sin(v);
        j.position = {radius * c, radius * s, u};
        j.du = {0, 0, 1};
        j.dv = {-radius * s, radius * c, 0};
        j.dvv = {-radius * c, -radius * s, 0};
        return j;
    };
    return p;
}

}  // namespace solgeom
