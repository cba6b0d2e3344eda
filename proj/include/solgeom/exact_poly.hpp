#pragma once

// Exact univariate polynomials over the integers, used to replay the
// polynomial identity behind the biharmonic nonexistence argument.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace solgeom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Decimal50 = boost::multiprecision::cpp_dec_float_50;

/// Coefficients by ascending degree; trailing zeros are stripped, so the zero
/// polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> ascending);
    IntPolynomial(std::initializer_list<long long> ascending);
    /// From coefficients listed by descending degree.
    static IntPolynomial from_descending(const std::vector<BigInt>& descending);
    static IntPolynomial monomial(const BigInt& c, int degree);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of g^i (zero beyond the degree).
    [[nodiscard]] BigInt coefficient(int i) const;
    [[nodiscard]] const std::vector<BigInt>& ascending() const { return coeffs_; }
    [[nodiscard]] std::vector<BigInt> descending() const;
    [[nodiscard]] BigInt leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

    [[nodiscard]] IntPolynomial derivative() const;
    [[nodiscard]] IntPolynomial scaled(const BigInt& k) const;
    [[nodiscard]] Rational evaluate(const Rational& x) const;
    [[nodiscard]] Decimal50 evaluate(const Decimal50& x) const;
    [[nodiscard]] double evaluate(double x) const;

    /// "25128*g^8 + 92760*g^7 + ... + 160"
    [[nodiscard]] std::string to_string(const std::string& var = "g") const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial scale(const IntPolynomial& p, const BigInt& k);
IntPolynomial differentiate(const IntPolynomial& p);

/// 100g^5 + 216g^4 + 324g^3 + 166g^2 + 32g + 6, as printed.
IntPolynomial paper_p1();
/// 36g^3 - 6g^2 - 12g + 2, as printed.
IntPolynomial paper_p2();
/// The g^5 coefficient reconstructed from the Delta f closed form reads 108:
/// 72g^3 + 18g^2 - 8g + 2 + 4(g^2 + g + 1)(3g + 1)^3.
IntPolynomial derived_p1();

/// 2(3g+1) P1 P2 + (3g^2+g-1)(P1 P2' - P2 P1'), expanded.
IntPolynomial nonexistence_combination(const IntPolynomial& p1, const IntPolynomial& p2);
IntPolynomial nonexistence_combination();

/// The displayed degree-8 coefficients, highest degree first.
std::vector<BigInt> printed_combination_descending();

/// JSON array of decimal strings, highest degree first.
nlohmann::json to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const nlohmann::json& j);

/// Sturm chain p, p', -rem(p_{k-1}, p_k), ... over the rationals.
std::vector<std::vector<Rational>> sturm_chain(const IntPolynomial& p);

/// Number of distinct real roots in the half-open interval (lo, hi].
std::size_t count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi);

struct RootInterval {
    Rational lo, hi;   // isolating interval (lo, hi], or lo == hi for an exact rational root
    [[nodiscard]] bool exact() const { return lo == hi; }
    [[nodiscard]] double midpoint() const;
};

/// Isolating intervals of the distinct real roots in [lo, hi], each refined
/// to width at most `width`. Empty for constant polynomials. Requires p != 0.
std::vector<RootInterval> real_roots_interval(const IntPolynomial& p, const Rational& lo, const Rational& hi,
                                              const Rational& width = Rational(1, 1 << 20));

}  // namespace solgeom
