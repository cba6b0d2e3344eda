#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "solgeom/exact_poly.hpp"

using namespace solgeom;

namespace {

oracle::Poly128 to128(const IntPolynomial& p) {
    oracle::Poly128 r;
    for (const auto& c : p.ascending()) r.push_back(static_cast<__int128>(static_cast<long long>(c)));
    return r;
}

IntPolynomial random_poly(std::mt19937_64& rng, int max_degree = 6) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long long> coef(-50, 50);
    std::vector<BigInt> c(deg(rng) + 1);
    for (auto& x : c) x = coef(rng);
    return IntPolynomial(c);
}

}  // namespace

TEST(ExactPoly, NormalizationAndAccessors) {
    const IntPolynomial p{1, 2, 0, 0};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(p.leading(), 2);
    EXPECT_EQ(p.coefficient(5), 0);
    EXPECT_TRUE(IntPolynomial({0, 0}).is_zero());
    EXPECT_EQ(IntPolynomial().degree(), -1);
    EXPECT_EQ(IntPolynomial::from_descending({3, 0, -1}), (IntPolynomial{-1, 0, 3}));
    EXPECT_EQ(IntPolynomial::monomial(7, 3).descending(), (std::vector<BigInt>{7, 0, 0, 0}));
}

TEST(ExactPoly, SmallExamples) {
    // (g + 1)(g - 1) = g^2 - 1
    EXPECT_EQ(IntPolynomial({1, 1}) * IntPolynomial({-1, 1}), (IntPolynomial{-1, 0, 1}));
    EXPECT_EQ(differentiate(IntPolynomial{5, 0, 0, 2}), (IntPolynomial{0, 0, 6}));
    EXPECT_EQ((IntPolynomial{1, 2}) - (IntPolynomial{1, 2}), IntPolynomial());
    EXPECT_EQ(IntPolynomial({-1, 0, 3}).to_string(), "3*g^2 - 1");
    EXPECT_EQ(IntPolynomial({-1, 0, 3}).evaluate(Rational(1, 3)), Rational(-2, 3));
}

TEST(ExactPoly, RingAxiomsOnRandomPolynomials) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
        EXPECT_EQ(scale(a, 3), a + a + a);
        const Rational x(trial - 100, 7);
        EXPECT_EQ((a * b).evaluate(x), a.evaluate(x) * b.evaluate(x));
    }
}

TEST(ExactPoly, PrintedFactors) {
    EXPECT_EQ(paper_p1().descending(), (std::vector<BigInt>{100, 216, 324, 166, 32, 6}));
    EXPECT_EQ(paper_p2().descending(), (std::vector<BigInt>{36, -6, -12, 2}));
    EXPECT_EQ(derived_p1().leading(), 108);
    EXPECT_EQ(derived_p1() - paper_p1(), IntPolynomial::monomial(8, 5));
}

TEST(ExactPoly, CombinationMatchesIndependentExpansion) {
    const auto mine = nonexistence_combination(paper_p1(), paper_p2());
    EXPECT_EQ(to128(mine), oracle::combination(to128(paper_p1()), to128(paper_p2())));
    EXPECT_EQ(mine.degree(), 8);
    EXPECT_EQ(mine.descending(), printed_combination_descending());
    EXPECT_EQ(nonexistence_combination(), mine);
    const auto derived = nonexistence_combination(derived_p1(), paper_p2());
    EXPECT_EQ(to128(derived), oracle::combination(to128(derived_p1()), to128(paper_p2())));
    EXPECT_NE(derived, mine);
}

TEST(ExactPoly, DegreeNineCancels) {
    // Leading terms: 2*3*100*36 from the product, 3*(3 - 5)*100*36 from the Wronskian.
    const auto p1 = paper_p1(), p2 = paper_p2();
    const auto product = IntPolynomial{2, 6} * p1 * p2;
    const auto wronskian = IntPolynomial{-1, 1, 3} * (p1 * p2.derivative() - p2 * p1.derivative());
    EXPECT_EQ(product.coefficient(9), 21600);
    EXPECT_EQ(wronskian.coefficient(9), -21600);
    EXPECT_EQ((product + wronskian).degree(), 8);
}

TEST(ExactPoly, JsonRoundTrip) {
    const auto p = nonexistence_combination();
    const auto j = to_json(p);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 9u);
    EXPECT_TRUE(j[0].is_string());
    EXPECT_EQ(polynomial_from_json(j), p);
    const IntPolynomial big(std::vector<BigInt>{BigInt("123456789012345678901234567890"), -1});
    EXPECT_EQ(polynomial_from_json(to_json(big)), big);
}

TEST(ExactPoly, SturmCountsRoots) {
    const IntPolynomial q{-1, 0, 1};  // g^2 - 1
    EXPECT_EQ(count_real_roots(q, -2, 2), 2u);
    EXPECT_EQ(count_real_roots(q, -1, 1), 1u);  // half-open: (-1, 1]
    EXPECT_EQ(count_real_roots(q, 1, 2), 0u);
    const auto roots = real_roots_interval(q, 0, 2);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_NEAR(roots[0].midpoint(), 1.0, 1e-6);
    EXPECT_TRUE(real_roots_interval(IntPolynomial{5}, -10, 10).empty());
}

TEST(ExactPoly, RootIsolationOnCubic) {
    // (2g - 1)(g - 3)(g + 4): roots 1/2 and 3 in [0, 10], the first exact-rational.
    const auto p = IntPolynomial{-1, 2} * IntPolynomial{-3, 1} * IntPolynomial{4, 1};
    const auto roots = real_roots_interval(p, 0, 10, Rational(1, 1 << 24));
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(roots[0].midpoint(), 0.5, 1e-7);
    EXPECT_NEAR(roots[1].midpoint(), 3.0, 1e-7);
    for (const auto& r : roots) EXPECT_LE(r.hi - r.lo, Rational(1, 1 << 24));
}

TEST(ExactPoly, CombinationIsNonzeroAtA1) {
    const Decimal50 sqrt13 = boost::multiprecision::sqrt(Decimal50(13));
    const Decimal50 a1 = (sqrt13 - 1) / 6;
    const Decimal50 v = nonexistence_combination().evaluate(a1);
    EXPECT_GT(boost::multiprecision::abs(v), Decimal50(1));
    EXPECT_NEAR(static_cast<double>(v), nonexistence_combination().evaluate(static_cast<double>(oracle::kA1)),
                1e-9 * std::abs(static_cast<double>(v)));
}
