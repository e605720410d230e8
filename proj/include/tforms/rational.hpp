#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tforms {

using BigInt = boost::multiprecision::cpp_int;
/// Arbitrary-precision rational; always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& v) {
    const BigInt& den = boost::multiprecision::denominator(v);
    if (den == 1) return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

inline bool is_integer(const Rational& v) { return boost::multiprecision::denominator(v) == 1; }

}  // namespace tforms
