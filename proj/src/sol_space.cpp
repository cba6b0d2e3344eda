#include "solgeom/sol_space.hpp"

#include <cmath>
#include <string>

namespace solgeom {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

void require_same_base(const TangentVector& a, const TangentVector& b) {
    if (!(a.base() == b.base())) throw BasePointMismatch();
}

}  // namespace

Vec3 frame_to_coordinates(double z, const Vec3& frame) {
    return {std::exp(-z) * frame.x(), std::exp(z) * frame.y(), frame.z()};
}

Vec3 coordinates_to_frame(double z, const Vec3& coords) {
    return {std::exp(z) * coords.x(), std::exp(-z) * coords.y(), coords.z()};
}

TangentVector::TangentVector(Point base, Vec3 components, Basis basis)
    : base_(base), components_(std::move(components)), basis_(basis) {}

TangentVector TangentVector::frame_vector(Point base, int i) {
    Vec3 c = Vec3::Zero();
    c[i - 1] = 1.0;
    return in_frame(base, c);
}

Vec3 TangentVector::frame() const {
    return basis_ == Basis::frame ? components_ : coordinates_to_frame(base_.z, components_);
}

Vec3 TangentVector::coordinates() const {
    return basis_ == Basis::coordinate ? components_ : frame_to_coordinates(base_.z, components_);
}

TangentVector TangentVector::to(Basis b) const {
    return {base_, b == Basis::frame ? frame() : coordinates(), b};
}

Mat3 MetricAtPoint::matrix() const {
    return Vec3(diagonal[0], diagonal[1], diagonal[2]).asDiagonal();
}

MetricAtPoint metric_at(const Point& p) {
    return {{std::exp(2.0 * p.z), std::exp(-2.0 * p.z), 1.0}};
}

double inner(const TangentVector& u, const TangentVector& v) {
    require_same_base(u, v);
    // The frame is orthonormal, so the pairing is the Euclidean one there.
    return u.frame().dot(v.frame());
}

double norm(const TangentVector& u) { return u.frame().norm(); }

Vec3 frame_connection(int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) throw std::out_of_range("frame index must be 1..3");
    const Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
    if (i == 1 && j == 1) return -e3;
    if (i == 1 && j == 3) return e1;
    if (i == 2 && j == 2) return e3;
    if (i == 2 && j == 3) return -e2;
    return Vec3::Zero();
}

Vec3 Christoffel::contract(const Vec3& a, const Vec3& b) const {
    Vec3 out = Vec3::Zero();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k] += gamma[k][i][j] * a[i] * b[j];
    return out;
}

Christoffel christoffel(const Point& p) {
    constexpr int X = 0, Y = 1, Z = 2;
    Christoffel c;
    c.gamma[X][X][Z] = c.gamma[X][Z][X] = 1.0;
    c.gamma[Y][Y][Z] = c.gamma[Y][Z][Y] = -1.0;
    c.gamma[Z][X][X] = -std::exp(2.0 * p.z);
    c.gamma[Z][Y][Y] = std::exp(-2.0 * p.z);
    return c;
}

VectorField VectorField::frame_field(int i) {
    Vec3 c = Vec3::Zero();
    c[i - 1] = 1.0;
    VectorField f;
    f.basis = Basis::frame;
    f.value = [c](const Point&) { return c; };
    f.jacobian = [](const Point&) { return Mat3::Zero().eval(); };
    return f;
}

TangentVector evaluate(const VectorField& field, const Point& p) {
    return {p, field.value(p), field.basis};
}

TangentVector covariant_derivative(const VectorField& field, const TangentVector& direction,
                                   DerivativeOptions opts) {
    const Point& p = direction.base();
    const Vec3 d = direction.coordinates();
    const Vec3 v = evaluate(field, p).coordinates();

    // Directional derivative of the coordinate components.
    Vec3 dv = Vec3::Zero();
    if (field.jacobian) {
        Mat3 jac = field.jacobian(p);
        if (field.basis == Basis::frame) {
            // w = S(z) c with S = diag(e^{-z}, e^{z}, 1): dw = S dc + (dS/dz) c dz.
            const Vec3 c = field.value(p);
            const Vec3 s(std::exp(-p.z), std::exp(p.z), 1.0);
            const Vec3 ds(-std::exp(-p.z), std::exp(p.z), 0.0);
            jac = s.asDiagonal() * jac;
            jac.col(2) += ds.cwiseProduct(c);
        }
        dv = jac * d;
    } else {
        const double len = d.norm();
        if (len > 0.0) {
            const double h = opts.step;
            const Vec3 dir = d / len;
            const Point plus = Point::from(p.vec() + h * dir);
            const Point minus = Point::from(p.vec() - h * dir);
            const Vec3 vp = evaluate(field, plus).coordinates();
            const Vec3 vm = evaluate(field, minus).coordinates();
            dv = (vp - vm) * (len / (2.0 * h));
        }
    }
    const Vec3 out = dv + christoffel(p).contract(d, v);
    if (!finite(out)) throw NonFiniteValue("covariant_derivative produced a non-finite value");
    return TangentVector::in_coordinates(p, out);
}

TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y,
                               const TangentVector& z) {
    require_same_base(x, y);
    require_same_base(x, z);
    const Vec3 X = x.frame(), Y = y.frame(), Z = z.frame();
    const Vec3 e3(0, 0, 1);
    const double x3 = X.z(), y3 = Y.z(), z3 = Z.z();
    const Vec3 r = Y.dot(Z) * X - X.dot(Z) * Y + 2.0 * z3 * (x3 * Y - y3 * X) +
                   2.0 * (X.dot(Z) * y3 - Y.dot(Z) * x3) * e3;
    return TangentVector::in_frame(x.base(), r);
}

TangentVector curvature_from_christoffel(const TangentVector& x, const TangentVector& y,
                                         const TangentVector& z, double step) {
    require_same_base(x, y);
    require_same_base(x, z);
    const Point p = x.base();
    const Christoffel g = christoffel(p);

    // dgamma[a][l][i][j] = d_a Gamma^l_{ij}
    std::array<Christoffel, 3> dgamma{};
    for (int a = 0; a < 3; ++a) {
        Vec3 e = Vec3::Zero();
        e[a] = step;
        const Christoffel gp = christoffel(Point::from(p.vec() + e));
        const Christoffel gm = christoffel(Point::from(p.vec() - e));
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    dgamma[a].gamma[l][i][j] = (gp(l, i, j) - gm(l, i, j)) / (2.0 * step);
    }

    const Vec3 X = x.coordinates(), Y = y.coordinates(), Z = z.coordinates();
    Vec3 out = Vec3::Zero();
    for (int l = 0; l < 3; ++l) {
        for (int k = 0; k < 3; ++k) {
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    // R^l_{kij}
                    double r = dgamma[i](l, j, k) - dgamma[j](l, i, k);
                    for (int m = 0; m < 3; ++m) r += g(l, i, m) * g(m, j, k) - g(l, j, m) * g(m, i, k);
                    out[l] += r * Z[k] * X[i] * Y[j];
                }
            }
        }
    }
    return TangentVector::in_coordinates(p, out).to(Basis::frame);
}

double sectional_curvature(const TangentVector& x, const TangentVector& y) {
    require_same_base(x, y);
    const double xx = inner(x, x), yy = inner(y, y), xy = inner(x, y);
    const double area2 = xx * yy - xy * xy;
    if (!(area2 > 1e-12 * xx * yy) || !(xx > 0.0) || !(yy > 0.0))
        throw DegeneratePlane("sectional_curvature: vectors do not span a plane");
    return inner(curvature_tensor(x, y, y), x.to(Basis::frame)) / area2;
}

}  // namespace solgeom
