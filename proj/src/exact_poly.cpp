#include "solgeom/exact_poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace solgeom {

using RatPoly = std::vector<Rational>;  // ascending, trailing zeros stripped

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> ascending) {
    for (long long c : ascending) coeffs_.emplace_back(c);
    normalize();
}

IntPolynomial IntPolynomial::from_descending(const std::vector<BigInt>& descending) {
    return IntPolynomial(std::vector<BigInt>(descending.rbegin(), descending.rend()));
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, int degree) {
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, BigInt(0));
    v.back() = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coefficient(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

std::vector<BigInt> IntPolynomial::descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

IntPolynomial IntPolynomial::derivative() const {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long long>(i));
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::scaled(const BigInt& k) const {
    std::vector<BigInt> d = coeffs_;
    for (auto& c : d) c *= k;
    return IntPolynomial(std::move(d));
}

Rational IntPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

Decimal50 IntPolynomial::evaluate(const Decimal50& x) const {
    Decimal50 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Decimal50(*it);
    return acc;
}

double IntPolynomial::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + b.scaled(-1); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(r));
}

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b) { return a + b; }
IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) { return a * b; }
IntPolynomial scale(const IntPolynomial& p, const BigInt& k) { return p.scaled(k); }
IntPolynomial differentiate(const IntPolynomial& p) { return p.derivative(); }

IntPolynomial paper_p1() { return {6, 32, 166, 324, 216, 100}; }
IntPolynomial paper_p2() { return {2, -12, -6, 36}; }

IntPolynomial derived_p1() {
    const IntPolynomial lin{1, 3};
    const IntPolynomial cube = lin * lin * lin;
    return IntPolynomial{2, -8, 18, 72} + (IntPolynomial{1, 1, 1} * cube).scaled(4);
}

IntPolynomial nonexistence_combination(const IntPolynomial& p1, const IntPolynomial& p2) {
    const IntPolynomial first = (IntPolynomial{1, 3} * p1 * p2).scaled(2);
    const IntPolynomial wronskian = p1 * p2.derivative() - p2 * p1.derivative();
    return first + IntPolynomial{-1, 1, 3} * wronskian;
}

IntPolynomial nonexistence_combination() { return nonexistence_combination(paper_p1(), paper_p2()); }

std::vector<BigInt> printed_combination_descending() {
    return {25128, 92760, 85632, 15840, -19352, -13224, -1872, 656, 160};
}

nlohmann::json to_json(const IntPolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.descending()) arr.push_back(c.str());
    return arr;
}

IntPolynomial polynomial_from_json(const nlohmann::json& j) {
    std::vector<BigInt> d;
    for (const auto& e : j) d.emplace_back(e.get<std::string>());
    return IntPolynomial::from_descending(d);
}

namespace {

void strip(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rational(const IntPolynomial& p) {
    RatPoly r;
    for (const auto& c : p.ascending()) r.emplace_back(c);
    return r;
}

RatPoly remainder(RatPoly a, const RatPoly& b) {
    strip(a);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const Rational q = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        strip(a);
    }
    return a;
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::size_t sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
    std::size_t n = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const Rational v = eval(q, x);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++n;
        prev = s;
    }
    return n;
}

}  // namespace

std::vector<RatPoly> sturm_chain(const IntPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_chain: zero polynomial");
    std::vector<RatPoly> chain{to_rational(p)};
    RatPoly d = to_rational(p.derivative());
    if (d.empty()) return chain;
    chain.push_back(d);
    for (;;) {
        RatPoly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

std::size_t count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) return 0;
    const auto chain = sturm_chain(p);
    const std::size_t a = sign_changes(chain, lo), b = sign_changes(chain, hi);
    return a > b ? a - b : 0;
}

double RootInterval::midpoint() const { return ((lo + hi) / 2).convert_to<double>(); }

std::vector<RootInterval> real_roots_interval(const IntPolynomial& p, const Rational& lo, const Rational& hi,
                                              const Rational& width) {
    if (p.is_zero()) throw std::invalid_argument("real_roots_interval: zero polynomial");
    if (!(width > 0)) throw std::invalid_argument("real_roots_interval: width must be positive");
    std::vector<RootInterval> out;
    if (p.degree() < 1 || hi < lo) return out;
    if (p.evaluate(lo) == 0) out.push_back({lo, lo});
    if (!(lo < hi)) return out;

    const auto chain = sturm_chain(p);
    std::function<void(const Rational&, const Rational&, std::size_t, std::size_t)> isolate =
        [&](const Rational& a, const Rational& b, std::size_t va, std::size_t vb) {
            const std::size_t n = va > vb ? va - vb : 0;
            if (n == 0) return;
            if (n == 1 && p.evaluate(b) == 0) {
                out.push_back({b, b});
                return;
            }
            if (n == 1 && b - a <= width) {
                out.push_back({a, b});
                return;
            }
            const Rational m = (a + b) / 2;
            const std::size_t vm = sign_changes(chain, m);
            isolate(a, m, va, vm);
            isolate(m, b, vm, vb);
        };
    isolate(lo, hi, sign_changes(chain, lo), sign_changes(chain, hi));
    return out;
}

}  // namespace solgeom
