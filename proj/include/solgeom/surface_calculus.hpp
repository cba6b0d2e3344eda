#pragma once

// Extrinsic geometry of surface patches in Sol^3. Sign convention: the shape
// operator is A = -(nabla xi)^T, the mean curvature is f = trace(A)/2 and
// the second form is II(X,Y) = <nabla_X Y, xi>.

#include <optional>

#include <Eigen/Dense>

#include "solgeom/surface.hpp"

namespace solgeom {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct FundamentalForms {
    Mat2 first = Mat2::Identity();
    Mat2 second = Mat2::Zero();
    TangentVector normal;
    /// Partials as frame-basis tangent vectors at the image point.
    TangentVector du, dv;
};

struct ShapeData {
    FundamentalForms forms;
    /// Shape operator acting on parameter-basis components: A = I^{-1} II.
    Mat2 shape = Mat2::Zero();
    double mean_curvature = 0.0;
    double gaussian_curvature = 0.0;
    /// grad f in parameter components (raised with I^{-1}).
    Vec2 gradient_h = Vec2::Zero();
    /// Principal curvatures, ascending.
    Vec2 principal = Vec2::Zero();
};

struct AdaptedFrameSample {
    TangentVector x1, x2, xi;
    double theta = 0.0;
    double beta = 0.0;
    Vec2 x1_param = Vec2::Zero();
    Vec2 x2_param = Vec2::Zero();
    double gradient_norm = 0.0;
    /// <X2, E3>; zero for the frames the rigidity argument produces.
    double x2_vertical = 0.0;
};

/// Below this |grad f| the adapted frame is not defined.
inline constexpr double kCmcThreshold = 1e-8;

FundamentalForms fundamental_forms(const SurfacePatch& patch, double u, double v);

/// Second form, shape operator, mean and Gaussian curvature (via the Gauss
/// equation) and grad f.
ShapeData shape_data(const SurfacePatch& patch, double u, double v);

/// Mean curvature with parameter partials: closed form when the patch
/// provides one, central differences otherwise.
ScalarJet mean_curvature_jet(const SurfacePatch& patch, double u, double v);

/// Adapted frame (X1 = grad f/|grad f|, X2 = xi x X1, xi). When
/// `x1_override` is given (parameter components) it replaces grad f; used for
/// CMC fixtures. Throws CmcDegenerate when |grad f| < kCmcThreshold.
AdaptedFrameSample adapted_frame(const SurfacePatch& patch, double u, double v,
                                 std::optional<Vec2> x1_override = std::nullopt);

/// sum_i R(e_i, xi) e_i over an orthonormal tangent basis (Gram-Schmidt on
/// the partials), frame components.
Vec3 curvature_trace(const FundamentalForms& forms);

/// A(grad f) + f grad f + f trace(R(., xi).)^T in parameter components.
Vec2 biconservative_residual(const SurfacePatch& patch, double u, double v);

/// Length of a parameter-basis tangent vector measured with the first form.
double tangent_norm(const Mat2& first, const Vec2& w);

/// Delta f - f|A|^2 - f <trace R(., xi)., xi>.
double biharmonic_normal_residual(const SurfacePatch& patch, double u, double v);

/// Laplace-Beltrami operator (trace of the Hessian) of a scalar field.
double laplace_beltrami(const SurfacePatch& patch, const ScalarField& field, double u, double v);

/// Intrinsic Christoffel symbols Gamma^m_{ij} of the first form, indexed [m][i][j].
struct SurfaceChristoffel {
    double g[2][2][2] = {};
};
SurfaceChristoffel surface_christoffel(const SurfacePatch& patch, double u, double v);

/// Partials of the first form, dI[k] = d_k I, from the second-order jet.
std::array<Mat2, 2> first_form_derivatives(const SurfacePatch& patch, double u, double v);

/// Gaussian curvature from the first form alone (Brioschi formula). The
/// second partials of I are central differences of the exact first partials.
double intrinsic_gaussian_curvature(const SurfacePatch& patch, double u, double v);

/// <R(du,dv)Z, xi> - [(nabla_u II)(dv,Z) - (nabla_v II)(du,Z)] for the tangent
/// vector Z with parameter components `z`. Zero for every immersed surface.
double codazzi_defect(const SurfacePatch& patch, double u, double v, const Vec2& z);

}  // namespace solgeom
