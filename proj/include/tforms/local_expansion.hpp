#pragma once

#include "tforms/curve.hpp"
#include "tforms/laurent_series.hpp"

namespace tforms {

/// Expansions x(t), y(t) at the point at infinity of an elliptic model, in
/// the uniformizer t = x/y. x has valuation -2, y valuation -3.
struct LocalExpansion {
    FieldPtr field;
    LaurentSeries x;
    LaurentSeries y;
    /// Relative precision of x and y.
    int precision = 0;
    int iterations = 0;
};

/// Solves the curve equation in F_q((t)) by fixed-point refinement of the unit
/// u = t^2 x, starting from u = 1. Requires precision >= 8. Throws
/// ConsistencyError when the iteration fails to settle.
LocalExpansion expand_at_infinity(const CurveModel& curve, int precision = LaurentSeries::kDefaultPrecision);

/// F(x(t), y(t)) for the expansion.
LaurentSeries curve_residual(const CurveModel& curve, const LocalExpansion& e);

}  // namespace tforms
