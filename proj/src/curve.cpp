#include "tforms/curve.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tforms/errors.hpp"
#include "tforms/local_expansion.hpp"

namespace tforms {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool weil_bound_ok(long long n, int q, int k, int genus) {
    // |N - (q^k + 1)| <= 2g q^(k/2)  <=>  (N - q^k - 1)^2 <= 4 g^2 q^k
    const long long qk = ipow(q, k);
    const long long d = n - qk - 1;
    return d * d <= 4LL * genus * genus * qk;
}

// Number of F_{q^k}-rational places of the cover z^2 + z = x lying over the
// point at infinity of the elliptic model.
int cover_points_at_infinity(const CurveModel& elliptic, const FieldExtension& ext) {
    const LocalExpansion e = expand_at_infinity(elliptic, 16);
    const FieldPtr& big = ext.extension;
    const int p = big->characteristic();

    if (p != 2) {
        // z = (-1 +- sqrt(1 + 4x)) / 2
        const LaurentSeries disc = LaurentSeries::constant(FieldElement::one(e.field)) +
                                   e.x * FieldElement::from_int(e.field, 4);
        if (disc.valuation() % 2 != 0) return 1;
        const FieldElement lead = ext.embed(disc.leading());
        for (const auto& s : FieldElement::all(big)) {
            if (s * s == lead) return 2;
        }
        return 0;
    }

    // Artin-Schreier: strip even-order poles with w^2 + w, then test the
    // constant term for membership in {w^2 + w}.
    std::map<int, FieldElement> polar;
    for (int ex = -2; ex <= 0; ++ex) polar.emplace(ex, ext.embed(e.x.coefficient(ex)));
    for (;;) {
        int lead = 1;
        for (const auto& [ex, c] : polar) {
            if (ex < 0 && !c.is_zero()) {
                lead = ex;
                break;
            }
        }
        if (lead == 1) break;
        if (lead % 2 != 0) return 1;
        const FieldElement c = polar.at(lead);
        std::optional<FieldElement> root;
        for (const auto& s : FieldElement::all(big)) {
            if (s * s == c) {
                root = s;
                break;
            }
        }
        polar.at(lead) -= c;
        polar.at(lead / 2) -= *root;
    }
    const FieldElement c0 = polar.at(0);
    for (const auto& w : FieldElement::all(big)) {
        if (w * w + w == c0) return 2;
    }
    return 0;
}

IntPolynomial reconstruct_numerator(int q, int genus, long long n1, long long n2) {
    // P(T) = prod (1 - alpha_i T), N_k = q^k + 1 - sum alpha_i^k
    const BigInt s1 = q + 1 - n1;
    const BigInt s2 = BigInt(q) * q + 1 - n2;
    if (genus == 0) return IntPolynomial{1};
    if (genus == 1) {
        // consistency of the second count with the first
        if (s2 != s1 * s1 - 2 * q) throw ConsistencyError("point counts violate the genus-one Weil relation");
        return IntPolynomial(std::vector<BigInt>{1, -s1, BigInt(q)});
    }
    if (genus == 2) {
        const BigInt e1 = s1;
        const BigInt twice_e2 = s1 * s1 - s2;
        if (twice_e2 % 2 != 0) throw ConsistencyError("point counts give a non-integral L-polynomial");
        const BigInt e2 = twice_e2 / 2;
        return IntPolynomial(std::vector<BigInt>{1, -e1, e2, -BigInt(q) * e1, BigInt(q) * q});
    }
    throw DomainError("lpolynomial: unsupported genus " + std::to_string(genus));
}

}  // namespace

FieldPtr base_field(int q) {
    switch (q) {
        case 2: return build_field(2, 1);
        case 3: return build_field(3, 1);
        case 4: return build_field(2, 2);
        default: throw DomainError("unsupported q = " + std::to_string(q) + " (expected 2, 3 or 4)");
    }
}

FieldExtension extend_field(const FieldPtr& base, int k) {
    if (k != 1 && k != 2) throw DomainError("unsupported extension degree " + std::to_string(k));
    const FieldPtr big = k == 1 ? base : build_field(base->characteristic(), base->degree() * k);
    return {base, big, FieldEmbedding(base, big), k};
}

CurveModel CurveModel::projective_line(int q) {
    CurveModel c;
    c.name_ = "P1/F" + std::to_string(q);
    c.kind_ = CurveKind::ProjectiveLine;
    c.q_ = q;
    c.genus_ = 0;
    c.base_ = tforms::base_field(q);
    return c;
}

CurveModel CurveModel::elliptic(int q) {
    CurveModel c;
    c.name_ = "X" + std::to_string(q);
    c.kind_ = CurveKind::Elliptic;
    c.q_ = q;
    c.genus_ = 1;
    c.base_ = tforms::base_field(q);
    const auto& f = c.base_;
    auto k = [&](long long v) { return FieldElement::from_int(f, v); };
    switch (q) {
        case 2: c.model_.push_back({k(0), k(0), k(1), k(1), k(1)}); break;
        case 3: c.model_.push_back({k(0), k(0), k(0), k(-1), k(-1)}); break;
        case 4: c.model_.push_back({k(0), k(0), k(1), k(0), FieldElement::generator(f)}); break;
        default: throw DomainError("no elliptic model for q = " + std::to_string(q));
    }
    if (!c.is_nonsingular()) throw ConsistencyError("singular model " + c.name_);
    return c;
}

CurveModel CurveModel::double_cover(const CurveModel& elliptic) {
    if (elliptic.kind() != CurveKind::Elliptic) throw DomainError("double_cover needs an elliptic model");
    CurveModel c = elliptic;
    c.name_ = "E" + std::to_string(elliptic.q());
    c.kind_ = CurveKind::DoubleCover;
    c.genus_ = 2;
    return c;
}

const WeierstrassModel& CurveModel::weierstrass() const {
    if (model_.empty()) throw DomainError(name_ + " has no Weierstrass model");
    return model_.front();
}

std::string CurveModel::equation() const {
    if (kind_ == CurveKind::ProjectiveLine) return "P^1";
    const auto& w = weierstrass();
    auto term = [](const FieldElement& c, const std::string& mono, std::ostringstream& os, bool& first) {
        if (c.is_zero()) return;
        if (!first) os << " + ";
        first = false;
        const std::string cs = c.field()->degree() == 1 ? std::to_string(c.index()) : c.to_string();
        if (c.is_one() && !mono.empty()) {
            os << mono;
        } else {
            os << cs << mono;
        }
    };
    const std::string x = kind_ == CurveKind::DoubleCover ? "(z^2+z)" : "x";
    std::ostringstream os;
    bool first = true;
    os << "y^2";
    first = false;
    term(w.a1, x + "y", os, first);
    term(w.a3, "y", os, first);
    os << " = " << x << "^3";
    term(w.a2, x + "^2", os, first);
    term(w.a4, x, os, first);
    term(w.a6, "", os, first);
    return os.str();
}

FieldElement CurveModel::discriminant() const {
    const auto& w = weierstrass();
    const auto& f = base_;
    auto k = [&](long long v) { return FieldElement::from_int(f, v); };
    const FieldElement b2 = w.a1 * w.a1 + k(4) * w.a2;
    const FieldElement b4 = k(2) * w.a4 + w.a1 * w.a3;
    const FieldElement b6 = w.a3 * w.a3 + k(4) * w.a6;
    const FieldElement b8 = w.a1 * w.a1 * w.a6 + k(4) * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 -
                            w.a4 * w.a4;
    return -(b2 * b2 * b8) - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;
}

FieldElement weierstrass_residual(const WeierstrassModel& w, const FieldEmbedding& embed, const FieldElement& x,
                                  const FieldElement& y) {
    return y * y + embed(w.a1) * x * y + embed(w.a3) * y -
           (x * x * x + embed(w.a2) * x * x + embed(w.a4) * x + embed(w.a6));
}

PointSet enumerate_points(const CurveModel& curve, int k) {
    if (k != 1 && k != 2) throw DomainError("enumerate_points: unsupported extension degree " + std::to_string(k));
    const FieldExtension ext = extend_field(curve.base_field(), k);
    PointSet out;
    out.degree = k;
    out.field = ext.extension;
    const auto elems = FieldElement::all(ext.extension);

    switch (curve.kind()) {
        case CurveKind::ProjectiveLine:
            for (const auto& x : elems) out.affine.push_back({x, FieldElement::zero(ext.extension)});
            out.at_infinity = 1;
            break;
        case CurveKind::Elliptic:
            for (const auto& x : elems) {
                for (const auto& y : elems) {
                    if (weierstrass_residual(curve.weierstrass(), ext.embed, x, y).is_zero()) out.affine.push_back({x, y});
                }
            }
            out.at_infinity = 1;
            break;
        case CurveKind::DoubleCover: {
            const CurveModel base = CurveModel::elliptic(curve.q());
            for (const auto& z : elems) {
                const FieldElement x = z * z + z;
                for (const auto& y : elems) {
                    if (weierstrass_residual(curve.weierstrass(), ext.embed, x, y).is_zero()) out.affine.push_back({z, y});
                }
            }
            out.at_infinity = cover_points_at_infinity(base, ext);
            break;
        }
    }
    return out;
}

bool EllipticPoint::operator<(const EllipticPoint& o) const {
    if (infinity != o.infinity) return infinity;
    if (infinity) return false;
    if (x.index() != o.x.index()) return x.index() < o.x.index();
    return y.index() < o.y.index();
}

std::string EllipticPoint::to_string() const {
    if (infinity) return "O";
    return "(" + x.to_string() + ", " + y.to_string() + ")";
}

EllipticGroup::EllipticGroup(const CurveModel& curve, int k)
    : w_(curve.weierstrass()), ext_(extend_field(curve.base_field(), k)), q_(curve.q()) {
    if (curve.kind() != CurveKind::Elliptic) throw DomainError("EllipticGroup needs an elliptic model");
    const PointSet pts = enumerate_points(curve, k);
    elements_.push_back(EllipticPoint::identity(ext_.extension));
    for (const auto& p : pts.affine) elements_.push_back({false, p.x, p.y});
    std::sort(elements_.begin(), elements_.end());
}

bool EllipticGroup::contains(const EllipticPoint& p) const {
    return p.infinity || weierstrass_residual(w_, ext_.embed, p.x, p.y).is_zero();
}

EllipticPoint EllipticGroup::negate(const EllipticPoint& p) const {
    if (p.infinity) return p;
    return {false, p.x, -p.y - ext_.embed(w_.a1) * p.x - ext_.embed(w_.a3)};
}

EllipticPoint EllipticGroup::add(const EllipticPoint& p, const EllipticPoint& r) const {
    if (p.infinity) return r;
    if (r.infinity) return p;
    const auto a1 = ext_.embed(w_.a1);
    const auto a2 = ext_.embed(w_.a2);
    const auto a3 = ext_.embed(w_.a3);
    const auto a4 = ext_.embed(w_.a4);
    const FieldPtr& f = ext_.extension;
    if (p.x == r.x && (p.y + r.y + a1 * r.x + a3).is_zero()) return EllipticPoint::identity(f);

    FieldElement slope = FieldElement::zero(f);
    if (p.x == r.x) {
        const auto num = FieldElement::from_int(f, 3) * p.x * p.x + FieldElement::from_int(f, 2) * a2 * p.x + a4 -
                         a1 * p.y;
        const auto den = FieldElement::from_int(f, 2) * p.y + a1 * p.x + a3;
        slope = num / den;
    } else {
        slope = (r.y - p.y) / (r.x - p.x);
    }
    const auto nu = p.y - slope * p.x;
    const auto x3 = slope * slope + a1 * slope - a2 - p.x - r.x;
    const auto y3 = -(slope + a1) * x3 - nu - a3;
    return {false, x3, y3};
}

EllipticPoint EllipticGroup::multiply(const EllipticPoint& p, long long n) const {
    EllipticPoint base = n < 0 ? negate(p) : p;
    long long m = n < 0 ? -n : n;
    EllipticPoint acc = EllipticPoint::identity(field());
    while (m > 0) {
        if (m & 1) acc = add(acc, base);
        base = add(base, base);
        m >>= 1;
    }
    return acc;
}

int EllipticGroup::order_of(const EllipticPoint& p) const {
    EllipticPoint x = p;
    int n = 1;
    while (!x.infinity) {
        x = add(x, p);
        ++n;
        if (n > static_cast<int>(elements_.size())) throw ConsistencyError("group law does not close");
    }
    return n;
}

EllipticPoint EllipticGroup::frobenius(const EllipticPoint& p) const {
    if (p.infinity) return p;
    return {false, p.x.pow(static_cast<std::uint64_t>(q_)), p.y.pow(static_cast<std::uint64_t>(q_))};
}

GroupStructure group_structure(const EllipticGroup& group) {
    const auto& elems = group.elements();
    const int n = static_cast<int>(elems.size());
    for (const auto& p : elems) {
        if (!group.contains(p)) throw ConsistencyError("enumerated point not on the curve");
    }
    GroupStructure s;
    s.order = n;
    for (const auto& p : elems) s.exponent = std::max(s.exponent, group.order_of(p));
    if (n % s.exponent != 0) throw ConsistencyError("point orders do not divide the group order");
    const int n1 = n / s.exponent;
    if (n1 > 1) {
        if (s.exponent % n1 != 0) throw ConsistencyError("group of order " + std::to_string(n) + " has no rank-2 structure");
        s.invariants = {n1, s.exponent};
        return s;
    }
    if (n > 1) s.invariants = {n};
    for (const auto& p : elems) {
        if (group.order_of(p) != n) continue;
        s.generator = p;
        EllipticPoint acc = EllipticPoint::identity(group.field());
        for (int i = 0; i < n; ++i) {
            s.multiples.push_back(acc);
            acc = group.add(acc, p);
        }
        if (!acc.infinity) throw ConsistencyError("generator multiples do not return to the identity");
        break;
    }
    return s;
}

LPolynomial lpolynomial(const CurveModel& curve) {
    const int g = curve.genus();
    const int q = curve.q();
    if (g == 0) return {IntPolynomial{1}, curve.name()};
    std::vector<long long> counts;
    for (int k = 1; k <= 2; ++k) {
        const long long n = enumerate_points(curve, k).count();
        if (!weil_bound_ok(n, q, k, g)) {
            throw ConsistencyError(curve.name() + ": count " + std::to_string(n) + " over F_" + std::to_string(q) +
                                   "^" + std::to_string(k) + " violates the Weil bound");
        }
        counts.push_back(n);
    }
    return {reconstruct_numerator(q, g, counts[0], counts[1]), curve.name()};
}

LPolynomial constant_ext_quotient(const CurveModel& elliptic) {
    if (elliptic.kind() != CurveKind::Elliptic) throw DomainError("constant_ext_quotient needs an elliptic model");
    const LPolynomial p = lpolynomial(elliptic);
    return {p.poly.negate_variable(), elliptic.name() + " (constant extension quotient)"};
}

LPolynomial genus2_cover_quotient(const CurveModel& elliptic) {
    if (elliptic.kind() != CurveKind::Elliptic) throw DomainError("genus2_cover_quotient needs an elliptic model");
    const CurveModel cover = CurveModel::double_cover(elliptic);
    const LPolynomial big = lpolynomial(cover);
    const LPolynomial small = lpolynomial(elliptic);
    auto quotient = exact_divide(big.poly, small.poly);
    if (!quotient) {
        throw ConsistencyError("numerator " + big.poly.to_string() + " of " + cover.name() + " is not divisible by " +
                               small.poly.to_string());
    }
    if (quotient->degree() != 2 || quotient->coefficient(0) != 1) {
        throw ConsistencyError("cover quotient " + quotient->to_string() + " is not a degree-two numerator");
    }
    return {*quotient, cover.name() + "/" + elliptic.name()};
}

std::vector<DegreeTwoPlace> degree_two_places(const CurveModel& elliptic) {
    const EllipticGroup group(elliptic, 2);
    const int q = elliptic.q();
    const auto& embed = group.extension().embed;
    const auto& w = elliptic.weierstrass();

    // one representative per orbit {P, -P}, the smaller point first
    std::vector<std::pair<EllipticPoint, EllipticPoint>> orbits;
    for (const auto& p : group.elements()) {
        if (p.infinity || (embed.contains(p.x) && embed.contains(p.y))) continue;
        const EllipticPoint m = group.frobenius(p);
        if (!(m == group.negate(p))) throw ConsistencyError("Frobenius does not send " + p.to_string() + " to its negative");
        if (p == m) throw ConsistencyError("Frobenius orbit of " + p.to_string() + " has size one");
        if (p < m) orbits.emplace_back(p, m);
    }
    std::sort(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) { return a.first.x < b.first.x; });
    if (static_cast<int>(orbits.size()) != q) {
        throw ConsistencyError("expected " + std::to_string(q) + " places of degree two, found " + std::to_string(orbits.size()));
    }

    std::vector<DegreeTwoPlace> out;
    for (int i = 1; i <= q; ++i) {
        const auto& [p, m] = orbits[static_cast<std::size_t>(i - 1)];
        const auto ell = embed.preimage(p.x);
        if (!ell) throw ConsistencyError("x-coordinate of " + p.to_string() + " is not defined over F_q");
        if (embed.contains(p.y)) throw ConsistencyError("point " + p.to_string() + " is F_q-rational");

        DegreeTwoPlace place;
        place.place_id = i;
        place.ell = *ell;
        place.vertex_index = i;
        place.point = p;
        place.conjugate = m;
        // y^2 + (a1 l + a3) y - (l^3 + a2 l^2 + a4 l + a6)
        const FieldElement& l = *ell;
        place.residue_polynomial = {-(l * l * l + w.a2 * l * l + w.a4 * l + w.a6), w.a1 * l + w.a3,
                                    FieldElement::one(l.field())};
        for (const auto& y : FieldElement::all(l.field())) {
            const auto v = place.residue_polynomial[0] + place.residue_polynomial[1] * y + y * y;
            if (v.is_zero()) throw ConsistencyError("residue polynomial at x = " + l.to_string() + " has a root in F_q");
        }
        out.push_back(place);
    }
    return out;
}

RhVerdict rh_check(const IntPolynomial& p, int q) {
    RhVerdict v;
    if (p.degree() == 0) {
        if (p.coefficient(0) != 1) throw DomainError("rh_check: P(0) must be 1");
        v.holds = true;
        v.detail = "no inverse roots";
        return v;
    }
    if (p.degree() != 2 || p.coefficient(0) != 1 || p.coefficient(2) != q) {
        throw DomainError("rh_check: expected qT^2 + aT + 1, got " + p.to_string());
    }
    const BigInt a = p.coefficient(1);
    v.discriminant = a * a - 4 * BigInt(q);
    // inverse roots solve X^2 + aX + q = 0 with product q
    v.holds = v.discriminant <= 0;
    std::ostringstream os;
    os << "inverse roots of " << p.to_string() << ": sum " << -a << ", product " << q << ", discriminant "
       << v.discriminant;
    if (v.discriminant < 0) os << " (complex conjugate pair, |alpha|^2 = " << q << ")";
    if (v.discriminant == 0) os << " (double root " << -a << "/2, |alpha|^2 = " << q << ")";
    if (v.discriminant > 0) os << " (distinct real roots, not both of modulus sqrt(" << q << "))";
    v.detail = os.str();
    return v;
}

}  // namespace tforms
