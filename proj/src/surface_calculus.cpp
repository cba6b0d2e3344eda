#include "solgeom/surface_calculus.hpp"

#include <algorithm>
#include <cmath>

namespace solgeom {

namespace {

// Frame-basis partials of a jet and the ambient covariant derivatives
// nabla_{d_i} d_j of the coordinate fields along the surface.
struct FrameJet {
    Point p;
    Vec3 cu, cv;
    Vec3 nuu, nuv, nvv;

    [[nodiscard]] const Vec3& partial(int i) const { return i == 0 ? cu : cv; }
    [[nodiscard]] const Vec3& second(int i, int j) const {
        if (i == 0 && j == 0) return nuu;
        if (i == 1 && j == 1) return nvv;
        return nuv;
    }
};

FrameJet frame_jet(const PatchJet& j) {
    FrameJet f;
    f.p = j.position;
    const double z = j.position.z;
    const Christoffel g = christoffel(j.position);
    f.cu = coordinates_to_frame(z, j.du);
    f.cv = coordinates_to_frame(z, j.dv);
    f.nuu = coordinates_to_frame(z, j.duu + g.contract(j.du, j.du));
    f.nuv = coordinates_to_frame(z, j.duv + g.contract(j.du, j.dv));
    f.nvv = coordinates_to_frame(z, j.dvv + g.contract(j.dv, j.dv));
    return f;
}

Mat2 first_form(const FrameJet& f) {
    Mat2 m;
    m << f.cu.dot(f.cu), f.cu.dot(f.cv), f.cu.dot(f.cv), f.cv.dot(f.cv);
    return m;
}

FundamentalForms forms_from(const FrameJet& f, int orientation) {
    FundamentalForms out;
    out.first = first_form(f);
    const double det = out.first.determinant();
    if (!std::isfinite(det) || !(det > 1e-14 * out.first(0, 0) * out.first(1, 1)))
        throw DegenerateImmersion("first fundamental form is degenerate");
    Vec3 n = f.cu.cross(f.cv).normalized() * static_cast<double>(orientation >= 0 ? 1 : -1);
    out.normal = TangentVector::in_frame(f.p, n);
    out.du = TangentVector::in_frame(f.p, f.cu);
    out.dv = TangentVector::in_frame(f.p, f.cv);
    out.second << f.nuu.dot(n), f.nuv.dot(n), f.nuv.dot(n), f.nvv.dot(n);
    return out;
}

ShapeData shape_core(const SurfacePatch& patch, double u, double v) {
    ShapeData s;
    s.forms = forms_from(frame_jet(patch.jet(u, v)), patch.orientation);
    s.shape = s.forms.first.inverse() * s.forms.second;
    s.mean_curvature = 0.5 * s.shape.trace();
    const double det_a = s.shape.determinant();
    s.gaussian_curvature = sectional_curvature(s.forms.du, s.forms.dv) + det_a;
    const double disc = std::sqrt(std::max(0.0, s.mean_curvature * s.mean_curvature - det_a));
    s.principal = Vec2(s.mean_curvature - disc, s.mean_curvature + disc);
    return s;
}

ScalarJet finite_difference_scalar_jet(const std::function<double(double, double)>& f, double u,
                                       double v, const FiniteDifferenceSteps& steps) {
    ScalarJet j;
    j.value = f(u, v);
    const double h1 = steps.first, h2 = steps.second;
    j.du = (f(u + h1, v) - f(u - h1, v)) / (2.0 * h1);
    j.dv = (f(u, v + h1) - f(u, v - h1)) / (2.0 * h1);
    j.duu = (f(u + h2, v) - 2.0 * j.value + f(u - h2, v)) / (h2 * h2);
    j.dvv = (f(u, v + h2) - 2.0 * j.value + f(u, v - h2)) / (h2 * h2);
    j.duv = (f(u + h2, v + h2) - f(u + h2, v - h2) - f(u - h2, v + h2) + f(u - h2, v - h2)) /
            (4.0 * h2 * h2);
    return j;
}

SurfaceChristoffel christoffel_from(const FrameJet& f, const Mat2& first) {
    const Mat2 inv = first.inverse();
    SurfaceChristoffel c;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Vec2 lowered(f.second(i, j).dot(f.cu), f.second(i, j).dot(f.cv));
            const Vec2 raised = inv * lowered;
            c.g[0][i][j] = raised[0];
            c.g[1][i][j] = raised[1];
        }
    }
    return c;
}

}  // namespace

FundamentalForms fundamental_forms(const SurfacePatch& patch, double u, double v) {
    return forms_from(frame_jet(patch.jet(u, v)), patch.orientation);
}

ScalarJet mean_curvature_jet(const SurfacePatch& patch, double u, double v) {
    if (patch.mean_curvature_jet) return patch.mean_curvature_jet(u, v);
    auto h = [&patch](double a, double b) { return shape_core(patch, a, b).mean_curvature; };
    return finite_difference_scalar_jet(h, u, v, patch.fd);
}

ShapeData shape_data(const SurfacePatch& patch, double u, double v) {
    ShapeData s = shape_core(patch, u, v);
    const ScalarJet hj = mean_curvature_jet(patch, u, v);
    s.gradient_h = s.forms.first.inverse() * Vec2(hj.du, hj.dv);
    return s;
}

double tangent_norm(const Mat2& first, const Vec2& w) {
    return std::sqrt(std::max(0.0, w.dot(first * w)));
}

AdaptedFrameSample adapted_frame(const SurfacePatch& patch, double u, double v,
                                 std::optional<Vec2> x1_override) {
    const ShapeData s = shape_data(patch, u, v);
    const FundamentalForms& ff = s.forms;
    AdaptedFrameSample a;
    a.gradient_norm = tangent_norm(ff.first, s.gradient_h);

    Vec2 dir;
    if (x1_override) {
        dir = *x1_override;
    } else {
        if (!(a.gradient_norm >= kCmcThreshold))
            throw CmcDegenerate("adapted_frame: |grad f| below threshold (CMC-degenerate point)");
        dir = s.gradient_h;
    }
    const double len = tangent_norm(ff.first, dir);
    if (!(len > 0.0)) throw CmcDegenerate("adapted_frame: X1 direction vanishes");
    a.x1_param = dir / len;

    const Vec3 cu = ff.du.frame(), cv = ff.dv.frame(), xi = ff.normal.frame();
    const Vec3 x1 = a.x1_param[0] * cu + a.x1_param[1] * cv;
    const Vec3 x2 = xi.cross(x1);
    const Point& p = ff.normal.base();
    a.x1 = TangentVector::in_frame(p, x1);
    a.x2 = TangentVector::in_frame(p, x2);
    a.xi = ff.normal;
    a.x2_param = ff.first.inverse() * Vec2(x2.dot(cu), x2.dot(cv));
    a.theta = std::atan2(xi.z(), x1.z());
    a.beta = std::atan2(x2.y(), x2.x());
    a.x2_vertical = x2.z();
    return a;
}

Vec3 curvature_trace(const FundamentalForms& forms) {
    const Vec3 cu = forms.du.frame(), cv = forms.dv.frame();
    const Vec3 e1 = cu.normalized();
    const Vec3 e2 = (cv - cv.dot(e1) * e1).normalized();
    const Point& p = forms.normal.base();
    Vec3 sum = Vec3::Zero();
    for (const Vec3& e : {e1, e2}) {
        const TangentVector t = TangentVector::in_frame(p, e);
        sum += curvature_tensor(t, forms.normal, t).frame();
    }
    return sum;
}

Vec2 biconservative_residual(const SurfacePatch& patch, double u, double v) {
    const ShapeData s = shape_data(patch, u, v);
    const FundamentalForms& ff = s.forms;
    const Vec3 t = curvature_trace(ff);
    const Vec2 t_tangent = ff.first.inverse() * Vec2(t.dot(ff.du.frame()), t.dot(ff.dv.frame()));
    const double f = s.mean_curvature;
    return s.shape * s.gradient_h + f * s.gradient_h + f * t_tangent;
}

double laplace_beltrami(const SurfacePatch& patch, const ScalarField& field, double u, double v) {
    const ScalarJet j = field.jet ? field.jet(u, v)
                                  : finite_difference_scalar_jet(field.value, u, v, patch.fd);
    const FrameJet fj = frame_jet(patch.jet(u, v));
    const Mat2 first = first_form(fj);
    const Mat2 inv = first.inverse();
    const SurfaceChristoffel c = christoffel_from(fj, first);
    const double hess[2][2] = {{j.duu, j.duv}, {j.duv, j.dvv}};
    const double grad[2] = {j.du, j.dv};
    double lap = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            double h = hess[i][k];
            for (int m = 0; m < 2; ++m) h -= c.g[m][i][k] * grad[m];
            lap += inv(i, k) * h;
        }
    }
    return lap;
}

double biharmonic_normal_residual(const SurfacePatch& patch, double u, double v) {
    const ShapeData s = shape_data(patch, u, v);
    ScalarField mean;
    mean.value = [&patch](double a, double b) { return shape_core(patch, a, b).mean_curvature; };
    if (patch.mean_curvature_jet) mean.jet = patch.mean_curvature_jet;
    const double lap = laplace_beltrami(patch, mean, u, v);
    const double f = s.mean_curvature;
    const double a2 = (s.shape * s.shape).trace();
    const double normal_trace = curvature_trace(s.forms).dot(s.forms.normal.frame());
    return lap - f * a2 - f * normal_trace;
}

SurfaceChristoffel surface_christoffel(const SurfacePatch& patch, double u, double v) {
    const FrameJet fj = frame_jet(patch.jet(u, v));
    return christoffel_from(fj, first_form(fj));
}

std::array<Mat2, 2> first_form_derivatives(const SurfacePatch& patch, double u, double v) {
    const FrameJet fj = frame_jet(patch.jet(u, v));
    std::array<Mat2, 2> d;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                d[k](i, j) = fj.second(k, i).dot(fj.partial(j)) + fj.partial(i).dot(fj.second(k, j));
    return d;
}

double intrinsic_gaussian_curvature(const SurfacePatch& patch, double u, double v) {
    const Mat2 I = fundamental_forms(patch, u, v).first;
    const auto d = first_form_derivatives(patch, u, v);
    const double E = I(0, 0), F = I(0, 1), G = I(1, 1);
    const double Eu = d[0](0, 0), Ev = d[1](0, 0);
    const double Fu = d[0](0, 1), Fv = d[1](0, 1);
    const double Gu = d[0](1, 1), Gv = d[1](1, 1);

    const double h = patch.fd.second;
    const auto dp = first_form_derivatives(patch, u + h, v);
    const auto dm = first_form_derivatives(patch, u - h, v);
    const auto dvp = first_form_derivatives(patch, u, v + h);
    const auto dvm = first_form_derivatives(patch, u, v - h);
    const double Evv = (dvp[1](0, 0) - dvm[1](0, 0)) / (2.0 * h);
    const double Guu = (dp[0](1, 1) - dm[0](1, 1)) / (2.0 * h);
    const double Fuv = 0.5 * ((dp[1](0, 1) - dm[1](0, 1)) + (dvp[0](0, 1) - dvm[0](0, 1))) / (2.0 * h);

    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu, E, F,
          0.5 * Gv, F, G;
    m2 << 0.0, 0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, E, F,
          0.5 * Gu, F, G;
    const double w = E * G - F * F;
    return (m1.determinant() - m2.determinant()) / (w * w);
}

double codazzi_defect(const SurfacePatch& patch, double u, double v, const Vec2& z) {
    const FundamentalForms ff = fundamental_forms(patch, u, v);
    const SurfaceChristoffel c = surface_christoffel(patch, u, v);
    const double h = patch.fd.second;
    std::array<Mat2, 2> dII;
    dII[0] = (fundamental_forms(patch, u + h, v).second - fundamental_forms(patch, u - h, v).second) / (2.0 * h);
    dII[1] = (fundamental_forms(patch, u, v + h).second - fundamental_forms(patch, u, v - h).second) / (2.0 * h);
    const Mat2& II = ff.second;

    // (nabla_k II)(i, j)
    auto cov = [&](int k, int i, int j) {
        double r = dII[k](i, j);
        for (int m = 0; m < 2; ++m) r -= c.g[m][k][i] * II(m, j) + c.g[m][k][j] * II(i, m);
        return r;
    };
    double rhs = 0.0;
    for (int w = 0; w < 2; ++w) rhs += z[w] * (cov(0, 1, w) - cov(1, 0, w));

    const Point& p = ff.normal.base();
    const TangentVector zt = TangentVector::in_frame(p, z[0] * ff.du.frame() + z[1] * ff.dv.frame());
    const double lhs = curvature_tensor(ff.du, ff.dv, zt).frame().dot(ff.normal.frame());
    return lhs - rhs;
}

}  // namespace solgeom
