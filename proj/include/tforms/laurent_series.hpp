#pragma once

#include <string>
#include <vector>

#include "tforms/field.hpp"

namespace tforms {

/// Truncated Laurent series over a finite field, in the variable t.
///
/// A series is known modulo t^cap: its coefficients at exponents below `cap`
/// are known, everything from `cap` on is unknown. `valuation` is the exponent
/// of the first nonzero known coefficient; for a series whose known
/// coefficients all vanish it equals `cap`. Series that are exactly known (for
/// example polynomials in t and 1/t) carry cap == kExactCap. Reading a
/// coefficient at or beyond cap throws PrecisionError.
class LaurentSeries {
public:
    static constexpr int kExactCap = 1 << 20;
    static constexpr int kDefaultPrecision = 32;

    /// Series t^valuation * (c_0 + c_1 t + ...) with `precision` known terms.
    LaurentSeries(FieldPtr field, int valuation, const std::vector<FieldElement>& coefficients, int precision);

    /// Exactly known: sum c_i t^(valuation + i).
    static LaurentSeries exact(FieldPtr field, int valuation, const std::vector<FieldElement>& coefficients);
    static LaurentSeries constant(const FieldElement& c);
    static LaurentSeries monomial(const FieldElement& c, int exponent);
    /// Zero modulo t^cap.
    static LaurentSeries zero(FieldPtr field, int cap = kExactCap);

    const FieldPtr& field() const noexcept { return field_; }
    int valuation() const noexcept { return valuation_; }
    /// Number of known coefficients counted from the valuation.
    int precision() const noexcept { return cap_ - valuation_; }
    /// Exponent of the first unknown coefficient.
    int cap() const noexcept { return cap_; }
    bool is_exact() const noexcept { return cap_ >= kExactCap; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    FieldElement coefficient(int exponent) const;
    FieldElement leading() const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator/(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries operator*(const FieldElement& c) const;

    /// Multiplicative inverse. The relative precision is preserved; exactly known
    /// inputs are inverted to `max_terms` known coefficients.
    LaurentSeries inverse(int max_terms = kDefaultPrecision) const;
    /// Multiply by t^k.
    LaurentSeries shift(int k) const;
    /// Forget every coefficient at exponent >= cap.
    LaurentSeries truncate(int cap) const;
    /// Drop all terms of exponent < `exponent` (keeps precision).
    LaurentSeries drop_below(int exponent) const;
    /// Keep only the terms of exponent < `exponent`; the result is exact.
    LaurentSeries keep_below(int exponent) const;

    /// The difference vanishes on the joint window.
    bool agrees_with(const LaurentSeries& o) const { return (*this - o).is_zero(); }

    /// Structural equality (same known coefficients and the same cap).
    bool operator==(const LaurentSeries& o) const;

    /// e.g. "t^-2 + t + O(t^30)"; coefficients of extension fields print as tuples.
    std::string to_string() const;

private:
    LaurentSeries(FieldPtr field, int cap);
    void normalize();
    void check_field(const LaurentSeries& o) const;

    FieldPtr field_;
    int valuation_;
    int cap_;
    std::vector<FieldElement> coeffs_;
};

}  // namespace tforms
