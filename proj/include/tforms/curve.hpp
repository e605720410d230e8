#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tforms/field.hpp"
#include "tforms/int_polynomial.hpp"

namespace tforms {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a base field.
struct WeierstrassModel {
    FieldElement a1, a2, a3, a4, a6;
};

enum class CurveKind {
    ProjectiveLine,
    Elliptic,
    /// Genus-two double cover of an elliptic model obtained by substituting x = z(z+1).
    DoubleCover,
};

/// One of the registered curves over F_q, q in {2,3,4}:
///   X_2: y^2 + y = x^3 + x + 1      over F_2
///   X_3: y^2 = x^3 - x - 1          over F_3
///   X_4: y^2 + y = x^3 + a          over F_4 = F_2(a), a^2 = a + 1
/// plus the projective line and the covers x = z(z+1) of the three elliptic models.
class CurveModel {
public:
    static CurveModel projective_line(int q);
    static CurveModel elliptic(int q);
    static CurveModel double_cover(const CurveModel& elliptic);

    const std::string& name() const noexcept { return name_; }
    CurveKind kind() const noexcept { return kind_; }
    int q() const noexcept { return q_; }
    int genus() const noexcept { return genus_; }
    const FieldPtr& base_field() const noexcept { return base_; }
    /// Underlying Weierstrass model (the covered curve for DoubleCover).
    const WeierstrassModel& weierstrass() const;
    std::string equation() const;

    /// Weierstrass discriminant (elliptic models and covers).
    FieldElement discriminant() const;
    bool is_nonsingular() const { return !discriminant().is_zero(); }

private:
    CurveModel() = default;
    std::string name_;
    CurveKind kind_ = CurveKind::ProjectiveLine;
    int q_ = 0;
    int genus_ = 0;
    FieldPtr base_;
    std::vector<WeierstrassModel> model_;  // empty for the projective line
};

/// F_q for q in {2,3,4}.
FieldPtr base_field(int q);

/// F_q inside F_{q^k}.
struct FieldExtension {
    FieldPtr base;
    FieldPtr extension;
    FieldEmbedding embed;
    int degree;
};
FieldExtension extend_field(const FieldPtr& base, int k);

/// Value of y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6); coefficients mapped through `embed`.
FieldElement weierstrass_residual(const WeierstrassModel& w, const FieldEmbedding& embed, const FieldElement& x,
                                  const FieldElement& y);

struct AffinePoint {
    FieldElement x;
    FieldElement y;
};

/// Rational points over F_{q^k}. For a double cover the affine coordinates are (z, y).
struct PointSet {
    int degree = 1;
    FieldPtr field;
    std::vector<AffinePoint> affine;
    int at_infinity = 0;
    int count() const { return static_cast<int>(affine.size()) + at_infinity; }
};

/// Exhaustive count over F_{q^k}, k in {1,2}.
PointSet enumerate_points(const CurveModel& curve, int k);

struct EllipticPoint {
    bool infinity = true;
    FieldElement x;
    FieldElement y;

    static EllipticPoint identity(const FieldPtr& f) {
        return {true, FieldElement::zero(f), FieldElement::zero(f)};
    }
    bool operator==(const EllipticPoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
    /// Identity first, then lexicographic in (x, y) element indices.
    bool operator<(const EllipticPoint& o) const;
    std::string to_string() const;
};

/// Chord-tangent group on the points of an elliptic model over F_{q^k}.
class EllipticGroup {
public:
    EllipticGroup(const CurveModel& curve, int k);

    const FieldPtr& field() const noexcept { return ext_.extension; }
    const FieldExtension& extension() const noexcept { return ext_; }
    /// Identity followed by the affine points in sorted order.
    const std::vector<EllipticPoint>& elements() const noexcept { return elements_; }

    bool contains(const EllipticPoint& p) const;
    EllipticPoint negate(const EllipticPoint& p) const;
    EllipticPoint add(const EllipticPoint& p, const EllipticPoint& r) const;
    EllipticPoint multiply(const EllipticPoint& p, long long n) const;
    int order_of(const EllipticPoint& p) const;
    /// Coordinatewise q-power Frobenius.
    EllipticPoint frobenius(const EllipticPoint& p) const;

private:
    WeierstrassModel w_;
    FieldExtension ext_;
    int q_;
    std::vector<EllipticPoint> elements_;
};

/// Abelian structure Z/n1 x Z/n2 (n1 | n2) of a finite point group.
struct GroupStructure {
    int order = 0;
    /// Invariant factors with n1 | n2; {n} when cyclic, {} for the trivial group.
    std::vector<int> invariants;
    int exponent = 1;
    bool cyclic() const { return invariants.size() <= 1; }
    /// Smallest generator when cyclic.
    std::optional<EllipticPoint> generator;
    /// multiples[i] = iQ for the generator Q; empty when not cyclic.
    std::vector<EllipticPoint> multiples;
};

/// Invariant factors from the exponent (an elliptic group has rank at most 2).
/// Never throws for a non-cyclic group; callers decide what to require.
GroupStructure group_structure(const EllipticGroup& group);

/// Numerator P(T) of the zeta function, P(0) = 1, degree 2g.
struct LPolynomial {
    IntPolynomial poly;
    std::string curve;
    std::string convention = "numerator of Z(T), P(0)=1";
};

LPolynomial lpolynomial(const CurveModel& curve);
/// P(-T): the numerator quotient for the quadratic constant extension.
LPolynomial constant_ext_quotient(const CurveModel& elliptic);
/// Numerator of the cover x = z(z+1) divided exactly by the numerator of `elliptic`.
LPolynomial genus2_cover_quotient(const CurveModel& elliptic);

/// A place of degree two: a Frobenius orbit {P, -P} of points in X(F_{q^2}) \ X(F_q).
/// Places are numbered 1..q in ascending order of ell; place i sits at vertex t_i.
struct DegreeTwoPlace {
    int place_id = 0;
    /// Common x-coordinate of iQ and -iQ, an element of F_q.
    FieldElement ell;
    /// Index i of the vertex t_i.
    int vertex_index = 0;
    EllipticPoint point;
    EllipticPoint conjugate;
    /// Monic y^2 + c1 y + c0 = F(ell, y) over F_q, ascending (c0, c1, 1); irreducible.
    std::vector<FieldElement> residue_polynomial;
};

std::vector<DegreeTwoPlace> degree_two_places(const CurveModel& elliptic);

struct RhVerdict {
    bool holds = false;
    /// a^2 - 4q for P = qT^2 + aT + 1 (0 for the constant polynomial).
    BigInt discriminant = 0;
    std::string detail;
};

/// All inverse roots of P have absolute value sqrt(q). Degrees 0 and 2 only.
RhVerdict rh_check(const IntPolynomial& p, int q);

}  // namespace tforms
