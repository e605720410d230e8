#include "tforms/int_polynomial.hpp"

#include <sstream>
#include <utility>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by b over Q; b nonzero.
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (!a.empty() && a.size() - 1 >= db) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

RatPoly to_rational(const IntPolynomial& p) {
    RatPoly out;
    for (const auto& c : p.coefficients()) out.emplace_back(c);
    return out;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coefficients) {
    for (long long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coefficient(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

BigInt IntPolynomial::leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

BigInt IntPolynomial::evaluate(const BigInt& t) const {
    BigInt acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

Rational IntPolynomial::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + Rational(coeffs_[i]);
    return acc;
}

IntPolynomial IntPolynomial::negate_variable() const {
    auto c = coeffs_;
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return IntPolynomial(std::move(c));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = gcd(g, abs(c));
    if (!is_zero() && leading() < 0) g = -g;
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    const BigInt g = content();
    auto c = coeffs_;
    for (auto& x : c) x /= g;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < coeffs_.size()) c[i] += coeffs_[i];
        if (i < o.coeffs_.size()) c[i] += o.coeffs_[i];
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + o * BigInt(-1); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator*(const BigInt& k) const {
    auto c = coeffs_;
    for (auto& x : c) x *= k;
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        const BigInt mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag;
        if (i >= 1) os << 'T';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& dividend, const IntPolynomial& divisor) {
    if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
    std::vector<BigInt> rem = dividend.coefficients();
    const int db = divisor.degree();
    if (dividend.degree() < db) {
        if (dividend.is_zero()) return IntPolynomial{};
        return std::nullopt;
    }
    std::vector<BigInt> quot(static_cast<std::size_t>(dividend.degree() - db + 1));
    const auto& b = divisor.coefficients();
    for (int i = dividend.degree(); i >= db; --i) {
        const BigInt& top = rem[static_cast<std::size_t>(i)];
        if (top % b.back() != 0) return std::nullopt;
        const BigInt f = top / b.back();
        quot[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    for (const auto& r : rem) {
        if (r != 0) return std::nullopt;
    }
    return IntPolynomial(std::move(quot));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("poly_gcd: both inputs are zero");
    RatPoly x = to_rational(a);
    RatPoly y = to_rational(b);
    while (!y.empty()) {
        RatPoly r = rat_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    // clear denominators, then take the primitive part
    BigInt lcm_den = 1;
    for (const auto& c : x) lcm_den = lcm(lcm_den, boost::multiprecision::denominator(c));
    std::vector<BigInt> ints;
    for (const auto& c : x) ints.push_back(boost::multiprecision::numerator(c * Rational(lcm_den)));
    return IntPolynomial(std::move(ints)).primitive_part();
}

BigInt resultant(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("resultant of a zero polynomial");
    const int m = a.degree();
    const int n = b.degree();
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(size), std::vector<BigInt>(static_cast<std::size_t>(size)));
    // rows hold descending coefficients, shifted
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i <= m; ++i) s[r][r + i] = a.coefficient(m - i);
    }
    for (int r = 0; r < m; ++r) {
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = b.coefficient(n - i);
    }
    return bareiss_determinant(std::move(s));
}

}  // namespace tforms
