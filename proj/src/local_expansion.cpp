#include "tforms/local_expansion.hpp"

#include "tforms/errors.hpp"

namespace tforms {

LocalExpansion expand_at_infinity(const CurveModel& curve, int precision) {
    if (curve.kind() != CurveKind::Elliptic) throw DomainError("expand_at_infinity: " + curve.name() + " is not elliptic");
    if (precision < 8) throw DomainError("expand_at_infinity: precision must be at least 8");
    const auto& w = curve.weierstrass();
    const FieldPtr& f = curve.base_field();

    // With x = t^-2 u, y = x/t the equation becomes
    //   u = 1 + a1 t - a2 t^2 + a3 t^3/u - a4 t^4/u - a6 t^6/u^2,
    // and every u-dependent term carries at least t^3.
    const LaurentSeries head = LaurentSeries::exact(f, 0, {FieldElement::one(f), w.a1, -w.a2});
    LaurentSeries u(f, 0, {FieldElement::one(f)}, precision);
    int iterations = 0;
    for (;;) {
        ++iterations;
        const LaurentSeries uinv = u.inverse();
        LaurentSeries next = head.truncate(precision) + (uinv * w.a3).shift(3) - (uinv * w.a4).shift(4) -
                             (uinv * uinv * w.a6).shift(6);
        next = next.truncate(precision);
        if (next == u) break;
        u = next;
        if (iterations > precision + 2) throw ConsistencyError("expand_at_infinity: refinement did not settle");
    }

    LocalExpansion e{f, u.shift(-2), u.shift(-3), precision, iterations};
    if (e.x.valuation() != -2 || e.y.valuation() != -3) throw ConsistencyError("expand_at_infinity: wrong pole orders");
    return e;
}

LaurentSeries curve_residual(const CurveModel& curve, const LocalExpansion& e) {
    const auto& w = curve.weierstrass();
    const LaurentSeries& x = e.x;
    const LaurentSeries& y = e.y;
    const LaurentSeries one = LaurentSeries::constant(FieldElement::one(e.field));
    return y * y + x * y * w.a1 + y * w.a3 - x * x * x - x * x * w.a2 - x * w.a4 - one * w.a6;
}

}  // namespace tforms
