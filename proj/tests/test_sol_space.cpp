#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "solgeom/errors.hpp"
#include "solgeom/sol_space.hpp"

using namespace solgeom;

namespace {

Point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    return {d(rng), d(rng), d(rng)};
}

Vec3 random_vec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng), d(rng)};
}

// Vector field with coordinate components A p + b, exact Jacobian A.
VectorField linear_field(const Mat3& a, const Vec3& b) {
    VectorField f;
    f.basis = Basis::coordinate;
    f.value = [a, b](const Point& p) { return Vec3(a * p.vec() + b); };
    f.jacobian = [a](const Point&) { return a; };
    return f;
}

}  // namespace

TEST(SolSpace, MetricAtOriginIsIdentity) {
    const auto m = metric_at({0, 0, 0});
    EXPECT_DOUBLE_EQ(m.diagonal[0], 1.0);
    EXPECT_DOUBLE_EQ(m.diagonal[1], 1.0);
    EXPECT_DOUBLE_EQ(m.diagonal[2], 1.0);
    EXPECT_DOUBLE_EQ(m.determinant(), 1.0);
}

TEST(SolSpace, MetricAtHeightOne) {
    const auto m = metric_at({3.0, -2.0, 1.0});
    EXPECT_NEAR(m.diagonal[0], std::exp(2.0), 1e-12);
    EXPECT_NEAR(m.diagonal[1], std::exp(-2.0), 1e-15);
    EXPECT_DOUBLE_EQ(m.determinant(), 1.0 * std::exp(2.0) * std::exp(-2.0));
}

TEST(SolSpace, FrameCoordinateRoundTrip) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const Point p = random_point(rng);
        const Vec3 c = random_vec(rng);
        EXPECT_LT((coordinates_to_frame(p.z, frame_to_coordinates(p.z, c)) - c).norm(), 1e-14);
    }
}

TEST(SolSpace, FrameVectorsAreOrthonormal) {
    std::mt19937_64 rng(2);
    for (int n = 0; n < 20; ++n) {
        const Point p = random_point(rng);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                EXPECT_NEAR(inner(TangentVector::frame_vector(p, i), TangentVector::frame_vector(p, j)),
                            i == j ? 1.0 : 0.0, 1e-14);
    }
}

TEST(SolSpace, E1InCoordinates) {
    const auto e1 = TangentVector::frame_vector({0, 0, 1.0}, 1);
    EXPECT_NEAR(e1.coordinates().x(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(norm(e1), 1.0, 1e-15);
}

TEST(SolSpace, InnerRejectsDifferentBasePoints) {
    const auto a = TangentVector::frame_vector({0, 0, 0}, 1);
    const auto b = TangentVector::frame_vector({0, 0, 1}, 1);
    EXPECT_THROW(inner(a, b), BasePointMismatch);
}

TEST(SolSpace, ChristoffelMatchesMetricOracle) {
    for (double z : {-1.3, 0.0, 0.4, 1.7}) {
        const auto ours = christoffel({0.2, -0.5, z});
        const auto ref = oracle::christoffel_from_metric(z);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) EXPECT_NEAR(ours(k, i, j), ref[k][i][j], 1e-8 * std::exp(2 * std::abs(z)));
    }
}

TEST(SolSpace, ChristoffelNonzeroEntries) {
    const double z = 0.3;
    const auto g = christoffel({0, 0, z});
    EXPECT_DOUBLE_EQ(g(0, 0, 2), 1.0);
    EXPECT_DOUBLE_EQ(g(1, 1, 2), -1.0);
    EXPECT_NEAR(g(2, 0, 0), -std::exp(2 * z), 1e-14);
    EXPECT_NEAR(g(2, 1, 1), std::exp(-2 * z), 1e-14);
    EXPECT_DOUBLE_EQ(g(2, 2, 2), 0.0);
}

TEST(SolSpace, ConnectionTableAgreesWithCovariantDerivative) {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 10; ++n) {
        const Point p = random_point(rng);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                const Vec3 got = covariant_derivative(VectorField::frame_field(j), TangentVector::frame_vector(p, i)).frame();
                EXPECT_LT((got - frame_connection(i, j)).norm(), 1e-13) << i << j;
            }
    }
}

TEST(SolSpace, ConnectionTableValues) {
    EXPECT_EQ(frame_connection(1, 1), Vec3(0, 0, -1));
    EXPECT_EQ(frame_connection(1, 3), Vec3(1, 0, 0));
    EXPECT_EQ(frame_connection(2, 2), Vec3(0, 0, 1));
    EXPECT_EQ(frame_connection(2, 3), Vec3(0, -1, 0));
    EXPECT_EQ(frame_connection(3, 1), Vec3(0, 0, 0));
}

TEST(SolSpace, AnalyticAndFiniteDifferenceDerivativesAgree) {
    std::mt19937_64 rng(4);
    Mat3 a;
    a << 0.3, -1.0, 0.2, 0.5, 0.1, -0.7, 1.1, 0.0, 0.4;
    const VectorField exact = linear_field(a, Vec3(0.1, 0.2, -0.3));
    VectorField fd = exact;
    fd.jacobian = nullptr;
    for (int n = 0; n < 20; ++n) {
        const Point p = random_point(rng);
        const auto dir = TangentVector::in_frame(p, random_vec(rng));
        EXPECT_LT((covariant_derivative(exact, dir).coordinates() - covariant_derivative(fd, dir).coordinates()).norm(),
                  1e-8);
    }
}

TEST(SolSpacePropertyTest, MetricCompatibility) {
    // X<Y,Z> = <nabla_X Y, Z> + <Y, nabla_X Z>
    std::mt19937_64 rng(5);
    for (int n = 0; n < 30; ++n) {
        Mat3 a, b;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                a(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
                b(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
            }
        const VectorField y = linear_field(a, random_vec(rng)), z = linear_field(b, random_vec(rng));
        const Point p = random_point(rng);
        const Vec3 xc = random_vec(rng);
        const auto x = TangentVector::in_coordinates(p, xc);
        auto yz = [&](const Point& q) { return inner(evaluate(y, q).to(Basis::coordinate), evaluate(z, q).to(Basis::coordinate)); };
        const double h = 1e-6;
        const double lhs = (yz(Point::from(p.vec() + h * xc)) - yz(Point::from(p.vec() - h * xc))) / (2 * h);
        const double rhs = inner(covariant_derivative(y, x), evaluate(z, p).to(Basis::coordinate)) +
                           inner(evaluate(y, p).to(Basis::coordinate), covariant_derivative(z, x));
        EXPECT_NEAR(lhs, rhs, 1e-6 * (1 + std::abs(lhs)));
    }
}

TEST(SolSpacePropertyTest, TorsionFree) {
    // nabla_X Y - nabla_Y X = [X, Y] = DY.X - DX.Y for coordinate fields.
    std::mt19937_64 rng(6);
    for (int n = 0; n < 30; ++n) {
        Mat3 a, b;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                a(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
                b(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
            }
        const Vec3 a0 = random_vec(rng), b0 = random_vec(rng);
        const VectorField xf = linear_field(a, a0), yf = linear_field(b, b0);
        const Point p = random_point(rng);
        const auto xv = evaluate(xf, p).to(Basis::coordinate), yv = evaluate(yf, p).to(Basis::coordinate);
        const Vec3 lhs = covariant_derivative(yf, xv).coordinates() - covariant_derivative(xf, yv).coordinates();
        const Vec3 bracket = b * xv.coordinates() - a * yv.coordinates();
        EXPECT_LT((lhs - bracket).norm(), 1e-12 * (1 + bracket.norm()));
    }
}

TEST(SolSpacePropertyTest, CurvatureSymmetries) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 50; ++n) {
        const Point p = random_point(rng);
        const auto x = TangentVector::in_frame(p, random_vec(rng));
        const auto y = TangentVector::in_frame(p, random_vec(rng));
        const auto z = TangentVector::in_frame(p, random_vec(rng));
        const auto w = TangentVector::in_frame(p, random_vec(rng));
        const Vec3 rxy = curvature_tensor(x, y, z).frame();
        EXPECT_LT((rxy + curvature_tensor(y, x, z).frame()).norm(), 1e-14);
        const Vec3 bianchi = rxy + curvature_tensor(y, z, x).frame() + curvature_tensor(z, x, y).frame();
        EXPECT_LT(bianchi.norm(), 1e-14);
        // <R(X,Y)Z,W> = <R(Z,W)X,Y>
        EXPECT_NEAR(rxy.dot(w.frame()), curvature_tensor(z, w, x).frame().dot(y.frame()), 1e-13);
    }
}

TEST(SolSpace, CurvatureMatchesChristoffelOracle) {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 20; ++n) {
        const Point p = random_point(rng);
        const auto x = TangentVector::in_frame(p, random_vec(rng));
        const auto y = TangentVector::in_frame(p, random_vec(rng));
        const auto z = TangentVector::in_frame(p, random_vec(rng));
        EXPECT_LT((curvature_tensor(x, y, z).frame() - curvature_from_christoffel(x, y, z).frame()).cwiseAbs().maxCoeff(),
                  1e-6);
    }
}

TEST(SolSpace, SectionalCurvatureTable) {
    const Point p{1.0, 2.0, 0.5};
    auto e = [&](int i) { return TangentVector::frame_vector(p, i); };
    EXPECT_NEAR(sectional_curvature(e(1), e(3)), -1.0, 1e-14);
    EXPECT_NEAR(sectional_curvature(e(2), e(3)), -1.0, 1e-14);
    EXPECT_NEAR(sectional_curvature(e(1), e(2)), 1.0, 1e-14);
}

TEST(SolSpace, SectionalCurvatureOfMixedPlane) {
    // span(E1, cos t E2 + sin t E3): K = cos^2 t - sin^2 t
    const Point p{0, 0, -0.7};
    const double t = 0.4;
    const auto x = TangentVector::frame_vector(p, 1);
    const auto y = TangentVector::in_frame(p, Vec3(0, std::cos(t), std::sin(t)));
    EXPECT_NEAR(sectional_curvature(x, y), std::cos(2 * t), 1e-14);
}

TEST(SolSpace, DegeneratePlaneThrows) {
    const Point p{0, 0, 0};
    EXPECT_THROW(sectional_curvature(TangentVector::frame_vector(p, 1), TangentVector::frame_vector(p, 1)),
                 DegeneratePlane);
    EXPECT_THROW(sectional_curvature(TangentVector::frame_vector(p, 2), TangentVector::in_frame(p, Vec3(0, 2, 0))),
                 DegeneratePlane);
}

TEST(SolSpace, NonFiniteDerivativeThrows) {
    VectorField f;
    f.basis = Basis::coordinate;
    f.value = [](const Point& p) { return Vec3(std::log(p.x), 0, 0); };
    EXPECT_THROW(covariant_derivative(f, TangentVector::frame_vector({0.0, 0, 0}, 1)), NonFiniteValue);
}
