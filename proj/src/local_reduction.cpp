#include "tforms/local_reduction.hpp"

#include <algorithm>
#include <sstream>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

LaurentSeries exact_const(const FieldPtr& f, long long v) { return LaurentSeries::constant(FieldElement::from_int(f, v)); }

LaurentSeries power(const LaurentSeries& s, int k) {
    LaurentSeries r = exact_const(s.field(), 1);
    for (int i = 0; i < k; ++i) r = r * s;
    return r;
}

// Valuation, treating a known-zero series as having valuation at its cap.
int val(const LaurentSeries& s) { return s.valuation(); }

}  // namespace

std::string AFunction::label() const {
    std::string s;
    if (x_power == 0 && y_power == 0) return "1";
    if (x_power > 0) s += x_power == 1 ? "x" : "x^" + std::to_string(x_power);
    if (y_power > 0) s += y_power == 1 ? "y" : "y^" + std::to_string(y_power);
    return s;
}

AFunctionBasis::AFunctionBasis(const LocalExpansion& e, int max_pole_order) : bound_(max_pole_order) {
    if (max_pole_order < 0) throw DomainError("negative pole-order bound");
    for (int k = 0; k <= max_pole_order; ++k) {
        for (int j = 0; j <= 1; ++j) {
            if ((k - 3 * j) < 0 || (k - 3 * j) % 2 != 0) continue;
            const int i = (k - 3 * j) / 2;
            AFunction f{i, j, k, power(e.x, i) * power(e.y, j)};
            if (f.expansion.valuation() != -k) throw ConsistencyError(f.label() + " has the wrong pole order");
            functions_.push_back(std::move(f));
        }
    }
    if (with_pole_order(1)) throw ConsistencyError("coordinate ring has a function with a simple pole at infinity");
}

const AFunction* AFunctionBasis::with_pole_order(int k) const {
    for (const auto& f : functions_) {
        if (f.pole_order == k) return &f;
    }
    return nullptr;
}

std::vector<int> AFunctionBasis::pole_orders() const {
    std::vector<int> out;
    for (const auto& f : functions_) out.push_back(f.pole_order);
    return out;
}

LaurentMatrix::LaurentMatrix(LaurentSeries a, LaurentSeries b, LaurentSeries c, LaurentSeries d, std::string provenance)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), provenance_(std::move(provenance)) {}

LaurentMatrix LaurentMatrix::diag(const LaurentSeries& a, const LaurentSeries& d, std::string provenance) {
    return {a, LaurentSeries::zero(a.field()), LaurentSeries::zero(a.field()), d, std::move(provenance)};
}

LaurentMatrix LaurentMatrix::upper(const LaurentSeries& a, const LaurentSeries& b, std::string provenance) {
    return {a, b, LaurentSeries::zero(a.field()), exact_const(a.field(), 1), std::move(provenance)};
}

LaurentMatrix LaurentMatrix::identity(const FieldPtr& f) { return diag(exact_const(f, 1), exact_const(f, 1)); }

LaurentMatrix LaurentMatrix::swap(const FieldPtr& f) {
    return {LaurentSeries::zero(f), exact_const(f, 1), exact_const(f, 1), LaurentSeries::zero(f)};
}

LaurentSeries LaurentMatrix::determinant() const { return a_ * d_ - b_ * c_; }

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_, provenance_};
}

bool LaurentMatrix::agrees_with(const LaurentMatrix& o) const {
    return a_.agrees_with(o.a_) && b_.agrees_with(o.b_) && c_.agrees_with(o.c_) && d_.agrees_with(o.d_);
}

int LaurentMatrix::cap() const { return std::min({a_.cap(), b_.cap(), c_.cap(), d_.cap()}); }

std::string LaurentMatrix::to_string() const {
    return "(" + a_.to_string() + ", " + b_.to_string() + "; " + c_.to_string() + ", " + d_.to_string() + ")";
}

bool in_maximal_compact_mod_center(const LaurentMatrix& g) {
    int m = LaurentSeries::kExactCap;
    for (const auto* e : {&g.a(), &g.b(), &g.c(), &g.d()}) {
        if (!e->is_zero()) m = std::min(m, e->valuation());
    }
    if (m == LaurentSeries::kExactCap) return false;
    const LaurentSeries det = g.determinant();
    return !det.is_zero() && det.valuation() == 2 * m;
}

LaurentMatrix canonical_representative(const VertexId& v, const FieldPtr& field, const std::vector<DegreeTwoPlace>& places) {
    const FieldElement one = FieldElement::one(field);
    switch (v.kind) {
        case VertexKind::C:
            return LaurentMatrix::diag(LaurentSeries::monomial(one, -v.index), exact_const(field, 1), v.to_string());
        case VertexKind::T:
            for (const auto& p : places) {
                if (p.vertex_index != v.index) continue;
                const LaurentSeries u = LaurentSeries::monomial(one, -1) + LaurentSeries::monomial(p.ell, 1);
                return LaurentMatrix::upper(LaurentSeries::monomial(one, 2), u, v.to_string());
            }
            throw DomainError("no degree-two place for vertex " + v.to_string());
        case VertexKind::Z: break;
    }
    throw DomainError("no matrix representative for " + v.to_string());
}

StandardVertex reduce_to_standard(const LaurentMatrix& m, const AFunctionBasis& basis,
                                  const std::vector<DegreeTwoPlace>& places) {
    const FieldPtr f = m.field();
    const FieldElement one = FieldElement::one(f);
    const LaurentSeries zero = LaurentSeries::zero(f);
    if (m.determinant().is_zero()) throw DomainError("reduce_to_standard: singular matrix " + m.to_string());

    LaurentMatrix cur = m;
    std::vector<ReductionMove> chain;
    auto right = [&](LaurentMatrix k, std::string note) {
        cur = cur * k;
        chain.push_back({ReductionMove::Side::Right, std::move(k), std::move(note)});
    };
    auto left = [&](LaurentMatrix g, std::string note) {
        cur = g * cur;
        chain.push_back({ReductionMove::Side::Left, std::move(g), std::move(note)});
    };

    // clear the lower-left entry from the right
    if (!(cur.c().is_zero() && cur.c().is_exact())) {
        if (cur.d().is_zero() || val(cur.c()) < val(cur.d())) right(LaurentMatrix::swap(f), "swap columns");
        const LaurentSeries s = -(cur.c() / cur.d());
        right(LaurentMatrix(exact_const(f, 1), zero, s, exact_const(f, 1)), "clear lower-left");
    }

    // <t^n, u>
    const int n = val(cur.a()) - val(cur.d());
    const LaurentSeries eps = LaurentSeries::monomial(one, n) * cur.d() / cur.a();
    right(LaurentMatrix::diag(eps, exact_const(f, 1)), "unit on the first column");
    const LaurentSeries dinv = cur.d().inverse();
    right(LaurentMatrix::diag(dinv, dinv), "central scaling");

    // left A-moves on the polar part, skipping the gap at t^-1
    for (int e = val(cur.b()); e < std::min(n, 1); ++e) {
        if (e == -1 || cur.b().is_zero()) continue;
        const FieldElement c = cur.b().coefficient(e);
        if (c.is_zero()) continue;
        const AFunction* fn = basis.with_pole_order(-e);
        if (!fn) throw DomainError("reduce_to_standard: no A-function of pole order " + std::to_string(-e));
        const FieldElement k = -(c / fn->expansion.leading());
        left(LaurentMatrix::upper(exact_const(f, 1), fn->expansion * k), "subtract " + k.to_string() + "*" + fn->label());
    }

    // right move with <1, s>, s integral, kills exponents >= n
    const LaurentSeries tail = cur.b().drop_below(n);
    if (!tail.is_zero()) right(LaurentMatrix::upper(exact_const(f, 1), -(tail / cur.a())), "drop the t^n-integral part");

    // read the residual u below t^n
    std::vector<std::pair<int, FieldElement>> terms;
    for (int e = std::min(-1, n); e < n; ++e) {
        const FieldElement c = cur.b().coefficient(e);
        if (!c.is_zero()) terms.emplace_back(e, c);
    }

    VertexId target;
    if (terms.empty()) {
        if (n >= 1) {
            left(LaurentMatrix::swap(f), "Weyl element");
            right(LaurentMatrix::swap(f), "Weyl element");
            const LaurentSeries s = LaurentSeries::monomial(one, -n);
            right(LaurentMatrix::diag(s, s), "central scaling");
        }
        target = VertexId::c(n >= 0 ? n : -n);
    } else if (n == 2 && terms.front().first == -1) {
        const FieldElement lead = terms.front().second;
        if (!lead.is_one()) {
            left(LaurentMatrix::diag(LaurentSeries::constant(lead.inverse()), exact_const(f, 1)), "scale by " + lead.inverse().to_string());
            right(LaurentMatrix::diag(LaurentSeries::constant(lead), exact_const(f, 1)), "scale by " + lead.to_string());
        }
        const FieldElement ell = cur.b().coefficient(1);
        const auto it = std::find_if(places.begin(), places.end(), [&ell](const DegreeTwoPlace& p) { return p.ell == ell; });
        if (it == places.end()) throw ConsistencyError("reduce_to_standard: no degree-two place with ell = " + ell.to_string());
        target = VertexId::t(it->vertex_index);
    } else {
        std::string u;
        for (const auto& [e, c] : terms) u += (u.empty() ? "" : " + ") + c.to_string() + "*t^" + std::to_string(e);
        throw DomainError("reduce_to_standard: shape <t^" + std::to_string(n) + ", " + u + "> is outside the reduction repertoire");
    }
    return {target, std::move(chain), canonical_representative(target, f, places)};
}

LaurentMatrix replay(const LaurentMatrix& m, const std::vector<ReductionMove>& chain) {
    LaurentMatrix cur = m;
    for (const auto& mv : chain) cur = mv.side == ReductionMove::Side::Left ? mv.matrix * cur : cur * mv.matrix;
    return cur;
}

bool verify_witness(const LaurentMatrix& m, const StandardVertex& s) {
    for (const auto& mv : s.chain) {
        if (mv.side == ReductionMove::Side::Right) {
            if (!in_maximal_compact_mod_center(mv.matrix)) return false;
        } else {
            const LaurentSeries det = mv.matrix.determinant();
            if (det.is_zero() || det.valuation() != 0) return false;
            if (!det.agrees_with(LaurentSeries::constant(det.coefficient(0)))) return false;
        }
    }
    const LaurentMatrix end = replay(m, s.chain);
    // the window must at least cover the t^1 term of a t-vertex representative
    if (end.cap() < 3) return false;
    return end.agrees_with(s.representative);
}

PlaceExpansion place_expansion(const LocalExpansion& e, const DegreeTwoPlace& place) {
    const FieldPtr f = e.field;
    if (!(*place.ell.field() == *f)) throw DomainError("place_expansion: ell lives in another field");
    PlaceExpansion out{e.x - LaurentSeries::constant(place.ell), {f, 0, {}, 0}, false, {f, 0, {}, 0}, false};
    out.cofactor = out.pi.shift(2);
    out.cofactor_is_unit = !out.cofactor.is_zero() && out.cofactor.valuation() == 0;

    const LaurentSeries r = e.x.inverse() * place.ell;  // ell/x, valuation 2
    const LaurentSeries y_over_x = e.y / e.x;
    LaurentSeries sum = exact_const(f, 1);
    LaurentSeries term = exact_const(f, 1);
    for (int k = 1; 2 * k < y_over_x.cap() + 1 + 2; ++k) {
        term = term * r;
        sum = sum + term;
    }
    out.y_over_pi = y_over_x * sum;
    out.head_matches = out.y_over_pi.valuation() == -1 && out.y_over_pi.coefficient(-1).is_one() &&
                       out.y_over_pi.coefficient(0).is_zero() && out.y_over_pi.coefficient(1) == place.ell;
    return out;
}

std::vector<LaurentMatrix> phi_p_cosets(const CurveModel& curve, const LocalExpansion& e, const DegreeTwoPlace& place) {
    const FieldPtr f = e.field;
    const int q = curve.q();
    for (const auto& y : FieldElement::all(f)) {
        const auto& rp = place.residue_polynomial;
        if ((rp[0] + rp[1] * y + y * y).is_zero()) {
            throw DomainError("phi_p_cosets: x = " + place.ell.to_string() + " is not a place of degree two");
        }
    }
    const LaurentSeries pi = e.x - LaurentSeries::constant(place.ell);
    std::vector<LaurentMatrix> out;
    out.reserve(static_cast<std::size_t>(q * q + 1));
    const std::string tag = "place " + std::to_string(place.place_id) + ": ";
    out.push_back(LaurentMatrix::diag(pi, exact_const(f, 1), tag + "m_inf"));
    const auto elems = FieldElement::all(f);
    for (const auto& b1 : elems) {
        for (const auto& b0 : elems) {
            const LaurentSeries b = LaurentSeries::constant(b0) + e.y * b1;
            out.emplace_back(exact_const(f, 1), b, LaurentSeries::zero(f), pi,
                             tag + "m_b b0=" + b0.to_string() + " b1=" + b1.to_string());
        }
    }
    return out;
}

int PhiColumn::total() const {
    int t = 0;
    for (const auto& [v, k] : tally) {
        (void)v;
        t += k;
    }
    return t;
}

PhiColumn phi_p_column(const CurveModel& curve, const LocalExpansion& e, const AFunctionBasis& basis,
                       const std::vector<DegreeTwoPlace>& places, const DegreeTwoPlace& place) {
    PhiColumn col;
    col.place_id = place.place_id;
    col.vertex_index = place.vertex_index;
    col.cosets = phi_p_cosets(curve, e, place);
    for (const auto& m : col.cosets) {
        StandardVertex s = reduce_to_standard(m, basis, places);
        if (!verify_witness(m, s)) throw ConsistencyError("witness chain for " + m.provenance() + " does not replay");
        ++col.tally[s.vertex];
        col.reductions.push_back(std::move(s));
    }
    return col;
}

CuspElimination eliminate_cusp_forms(const Subspace& cusp, const std::vector<PhiColumn>& columns) {
    CuspElimination out;
    out.remaining = {cusp.graph, cusp.depth, {}};
    if (cusp.basis.empty()) return out;
    for (const auto& col : columns) {
        const bool hits_t = std::any_of(col.tally.begin(), col.tally.end(),
                                        [](const auto& kv) { return kv.first.kind == VertexKind::T; });
        if (!hits_t) throw ConsistencyError("column of place " + std::to_string(col.place_id) + " misses every t-vertex");
        // coefficients in the form's coordinate order
        FormVector row(cusp.graph, cusp.depth);
        for (const auto& [v, k] : col.tally) {
            if (!row.has(v)) throw DomainError("column vertex " + v.to_string() + " lies beyond the cusp space depth");
            row.set(v, k);
        }
        out.conditions.push_back({row.values(), "Phi_P at c0, place " + std::to_string(col.place_id)});
    }
    RationalMatrix m;
    for (const auto& r : out.conditions) {
        std::vector<Rational> coeffs;
        for (const auto& b : cusp.basis) coeffs.push_back(evaluate(r, b));
        m.push_back(std::move(coeffs));
    }
    for (const auto& a : nullspace(m, cusp.basis.size())) {
        FormVector v(cusp.graph, cusp.depth);
        for (std::size_t i = 0; i < a.size(); ++i) v = v + cusp.basis[i] * a[i];
        out.remaining.basis.push_back(std::move(v));
    }
    return out;
}

}  // namespace tforms
