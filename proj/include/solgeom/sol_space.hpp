#pragma once

// Ambient geometry of Sol^3: R^3 with metric e^{2z}dx^2 + e^{-2z}dy^2 + dz^2
// and left-invariant orthonormal frame E1 = e^{-z}d/dx, E2 = e^{z}d/dy, E3 = d/dz.

#include <array>
#include <functional>
#include <optional>

#include <Eigen/Core>

#include "solgeom/errors.hpp"

namespace solgeom {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] Vec3 vec() const { return {x, y, z}; }
    static Point from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
    bool operator==(const Point&) const = default;
};

enum class Basis { coordinate, frame };

/// Frame components c and coordinate components w of the same vector at
/// height z are related by w = (e^{-z}c1, e^{z}c2, c3).
Vec3 frame_to_coordinates(double z, const Vec3& frame);
Vec3 coordinates_to_frame(double z, const Vec3& coords);

class TangentVector {
public:
    TangentVector() = default;
    TangentVector(Point base, Vec3 components, Basis basis);

    static TangentVector in_frame(Point base, Vec3 c) { return {base, c, Basis::frame}; }
    static TangentVector in_coordinates(Point base, Vec3 c) { return {base, c, Basis::coordinate}; }
    static TangentVector frame_vector(Point base, int i);

    [[nodiscard]] const Point& base() const { return base_; }
    [[nodiscard]] Basis basis() const { return basis_; }
    [[nodiscard]] const Vec3& components() const { return components_; }

    [[nodiscard]] Vec3 frame() const;
    [[nodiscard]] Vec3 coordinates() const;
    [[nodiscard]] TangentVector to(Basis b) const;

private:
    Point base_{};
    Vec3 components_ = Vec3::Zero();
    Basis basis_ = Basis::frame;
};

struct MetricAtPoint {
    std::array<double, 3> diagonal{1.0, 1.0, 1.0};

    [[nodiscard]] double determinant() const { return diagonal[0] * diagonal[1] * diagonal[2]; }
    [[nodiscard]] Mat3 matrix() const;
};

MetricAtPoint metric_at(const Point& p);

/// Throws BasePointMismatch unless both vectors share a base point.
double inner(const TangentVector& u, const TangentVector& v);
double norm(const TangentVector& u);

/// Levi-Civita connection on the canonical frame, nabla_{E_i} E_j as frame
/// components. Indices are 1-based to match E1, E2, E3.
Vec3 frame_connection(int i, int j);

/// Coordinate Christoffel symbols Gamma^k_{ij}, indexed [k][i][j] with
/// 0,1,2 = x,y,z.
struct Christoffel {
    std::array<std::array<std::array<double, 3>, 3>, 3> gamma{};

    [[nodiscard]] double operator()(int k, int i, int j) const { return gamma[k][i][j]; }
    /// Gamma^k_{ij} a^i b^j for each k.
    [[nodiscard]] Vec3 contract(const Vec3& a, const Vec3& b) const;
};

Christoffel christoffel(const Point& p);

struct DerivativeOptions {
    double step = 1e-5;
};

/// A smooth vector field on (an open set of) Sol^3. `value` returns
/// components in `basis`; `jacobian`, when present, returns d(components)/d(x,y,z)
/// with rows indexing components.
struct VectorField {
    std::function<Vec3(const Point&)> value;
    Basis basis = Basis::coordinate;
    std::function<Mat3(const Point&)> jacobian;

    static VectorField frame_field(int i);
};

TangentVector evaluate(const VectorField& field, const Point& p);

/// nabla_direction field, returned in the coordinate basis.
TangentVector covariant_derivative(const VectorField& field, const TangentVector& direction,
                                   DerivativeOptions opts = {});

/// Closed-form curvature tensor R(X,Y)Z of Sol^3, returned in frame components.
TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y,
                               const TangentVector& z);

/// Curvature from coordinate Christoffel symbols and their central
/// differences in z, R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
/// Independent of curvature_tensor; returned in frame components.
TangentVector curvature_from_christoffel(const TangentVector& x, const TangentVector& y,
                                         const TangentVector& z, double step = 1e-4);

/// <R(X,Y)Y,X> / (|X|^2|Y|^2 - <X,Y>^2). Throws DegeneratePlane when X, Y are
/// (numerically) dependent.
double sectional_curvature(const TangentVector& x, const TangentVector& y);

}  // namespace solgeom
