#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tforms/rational.hpp"

namespace tforms {

/// Integer polynomial in the variable T, ascending coefficients, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coefficients);
    IntPolynomial(std::initializer_list<long long> coefficients);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    BigInt coefficient(int i) const;
    BigInt leading() const;

    BigInt evaluate(const BigInt& t) const;
    Rational evaluate(const Rational& t) const;
    /// P(-T).
    IntPolynomial negate_variable() const;
    /// gcd of the coefficients, with the sign of the leading coefficient.
    BigInt content() const;
    /// P / content(P): primitive, positive leading coefficient.
    IntPolynomial primitive_part() const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    bool operator==(const IntPolynomial& o) const = default;

    /// "1 - 2T + 2T^2".
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Quotient when `divisor` divides `dividend` exactly over Z, otherwise nullopt.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& dividend, const IntPolynomial& divisor);

/// gcd over Q, returned as a primitive integer polynomial with positive leading
/// coefficient. Throws DomainError when both inputs are zero.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Resultant of two nonzero polynomials (Sylvester determinant, exact).
BigInt resultant(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace tforms
