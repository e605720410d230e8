#include <doctest.h>

#include <set>

#include "tforms/curve.hpp"
#include "tforms/errors.hpp"

using namespace tforms;

namespace {

// Affine count by brute force over the raw equation, independent of enumerate_points.
int brute_affine_count(const CurveModel& c, int k) {
    const FieldExtension ext = extend_field(c.base_field(), k);
    const auto& w = c.weierstrass();
    auto lift = [&](const FieldElement& a) { return ext.embed(a); };
    int n = 0;
    for (const auto& x : FieldElement::all(ext.extension)) {
        for (const auto& y : FieldElement::all(ext.extension)) {
            const auto lhs = y * y + lift(w.a1) * x * y + lift(w.a3) * y;
            const auto rhs = x * x * x + lift(w.a2) * x * x + lift(w.a4) * x + lift(w.a6);
            n += lhs == rhs;
        }
    }
    return n;
}

}  // namespace

TEST_SUITE("curves") {
    TEST_CASE("registered models are nonsingular with a1 = 0") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::elliptic(q);
            CHECK(c.q() == q);
            CHECK(c.genus() == 1);
            CHECK(c.is_nonsingular());
            CHECK(c.weierstrass().a1.is_zero());
        }
        CHECK(CurveModel::elliptic(2).equation() == "y^2 + y = x^3 + x + 1");
        CHECK(CurveModel::elliptic(3).equation() == "y^2 = x^3 + 2x + 2");
        CHECK_THROWS_AS(CurveModel::elliptic(5), DomainError);
        CHECK(CurveModel::double_cover(CurveModel::elliptic(2)).genus() == 2);
    }

    TEST_CASE("point counts match a brute-force count") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::elliptic(q);
            for (int k : {1, 2}) {
                const PointSet ps = enumerate_points(c, k);
                CHECK(ps.at_infinity == 1);
                CHECK(static_cast<int>(ps.affine.size()) == brute_affine_count(c, k));
            }
            CHECK(enumerate_points(c, 1).count() == 1);
            CHECK(enumerate_points(c, 2).count() == 2 * q + 1);
        }
        CHECK(enumerate_points(CurveModel::projective_line(3), 1).count() == 4);
        CHECK(enumerate_points(CurveModel::projective_line(3), 2).count() == 10);
    }

    TEST_CASE("the chord-tangent law is an abelian group") {
        for (int q : {2, 3, 4}) {
            const EllipticGroup g(CurveModel::elliptic(q), 2);
            const auto& els = g.elements();
            REQUIRE(static_cast<int>(els.size()) == 2 * q + 1);
            const auto o = EllipticPoint::identity(g.field());
            for (const auto& p : els) {
                CHECK(g.add(p, o) == p);
                CHECK(g.add(p, g.negate(p)) == o);
                CHECK(g.multiply(p, 2 * q + 1) == o);
                for (const auto& r : els) {
                    const auto s = g.add(p, r);
                    CHECK(g.contains(s));
                    CHECK(s == g.add(r, p));
                    for (const auto& u : els) {
                        if (g.add(s, u) != g.add(p, g.add(r, u))) FAIL("associativity fails for q = " << q);
                    }
                }
            }
        }
    }

    TEST_CASE("X2 and X3 groups are cyclic of order 2q+1") {
        for (int q : {2, 3}) {
            const EllipticGroup g(CurveModel::elliptic(q), 2);
            const GroupStructure s = group_structure(g);
            CHECK(s.order == 2 * q + 1);
            CHECK(s.cyclic());
            CHECK(s.invariants == std::vector<int>{2 * q + 1});
            REQUIRE(s.generator.has_value());
            CHECK(g.order_of(*s.generator) == 2 * q + 1);
            REQUIRE(static_cast<int>(s.multiples.size()) == 2 * q + 1);
            std::set<std::string> seen;
            for (const auto& p : s.multiples) seen.insert(p.to_string());
            CHECK(static_cast<int>(seen.size()) == 2 * q + 1);
        }
    }

    TEST_CASE("X4(F16) is the full 3-torsion") {
        // y^2 + y = x^3 + a: doubling gives x(2P) = x^4, and x lies in F4, so 2P = -P.
        const EllipticGroup g(CurveModel::elliptic(4), 2);
        const auto o = EllipticPoint::identity(g.field());
        for (const auto& p : g.elements()) {
            CHECK(g.multiply(p, 3) == o);
            if (p.infinity) continue;
            const auto d = g.multiply(p, 2);
            REQUIRE_FALSE(d.infinity);
            CHECK(d.x == p.x.pow(4));
            CHECK(d == g.negate(p));
        }
        const GroupStructure s = group_structure(g);
        CHECK(s.order == 9);
        CHECK(s.exponent == 3);
        CHECK(s.invariants == std::vector<int>{3, 3});
        CHECK_FALSE(s.cyclic());
        CHECK_FALSE(s.generator.has_value());
    }

    TEST_CASE("Frobenius acts as -1 on X(F_q^2)") {
        for (int q : {2, 3, 4}) {
            const EllipticGroup g(CurveModel::elliptic(q), 2);
            for (const auto& p : g.elements()) CHECK(g.frobenius(p) == g.negate(p));
        }
    }

    TEST_CASE("L-polynomials") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::elliptic(q);
            const IntPolynomial p = lpolynomial(c).poly;
            CHECK(p == IntPolynomial{1, -q, q});
            CHECK(p.evaluate(BigInt(1)) == 1);  // class number one
            CHECK(constant_ext_quotient(c).poly == IntPolynomial{1, q, q});
        }
        CHECK(lpolynomial(CurveModel::projective_line(3)).poly == IntPolynomial{1});
        CHECK(genus2_cover_quotient(CurveModel::elliptic(2)).poly == IntPolynomial{1, 0, 2});
        CHECK(genus2_cover_quotient(CurveModel::elliptic(3)).poly == IntPolynomial{1, 1, 3});
        CHECK(genus2_cover_quotient(CurveModel::elliptic(4)).poly == IntPolynomial{1, 0, 4});
    }

    TEST_CASE("genus-two cover numerator satisfies the functional equation") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::double_cover(CurveModel::elliptic(q));
            const IntPolynomial p = lpolynomial(c).poly;
            REQUIRE(p.degree() == 4);
            CHECK(p.coefficient(0) == 1);
            for (int i = 0; i <= 2; ++i) {
                BigInt qpow = 1;
                for (int j = i; j < 2; ++j) qpow *= q;
                CHECK(p.coefficient(4 - i) == qpow * p.coefficient(i));
            }
            // #C(F_q) = q + 1 - a1 with P = 1 + a1 T + ...
            CHECK(enumerate_points(c, 1).count() == q + 1 + p.coefficient(1));
        }
        CHECK(lpolynomial(CurveModel::double_cover(CurveModel::elliptic(2))).poly == IntPolynomial{1, -2, 4, -4, 4});
    }

    TEST_CASE("Lq and Ltilde are coprime") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::elliptic(q);
            const auto lq = constant_ext_quotient(c).poly;
            const auto lt = genus2_cover_quotient(c).poly;
            CHECK(poly_gcd(lq, lt) == IntPolynomial{1});
            CHECK(resultant(lq, lt) != 0);
        }
    }

    TEST_CASE("degree-two places") {
        for (int q : {2, 3, 4}) {
            const auto c = CurveModel::elliptic(q);
            const EllipticGroup g(c, 2);
            const auto places = degree_two_places(c);
            REQUIRE(static_cast<int>(places.size()) == q);
            for (std::size_t i = 0; i < places.size(); ++i) {
                const auto& pl = places[i];
                CHECK(pl.place_id == static_cast<int>(i) + 1);
                CHECK(pl.vertex_index == pl.place_id);
                CHECK(g.extension().embed(pl.ell) == pl.point.x);
                CHECK(pl.conjugate == g.frobenius(pl.point));
                CHECK(pl.conjugate == g.negate(pl.point));
                CHECK_FALSE(g.extension().embed.contains(pl.point.y));
                // residue polynomial has no root in F_q
                for (const auto& y : FieldElement::all(c.base_field())) {
                    CHECK_FALSE((pl.residue_polynomial[0] + pl.residue_polynomial[1] * y + y * y).is_zero());
                }
                if (i > 0) CHECK(places[i - 1].ell < pl.ell);
            }
            std::set<std::uint32_t> xs;
            for (const auto& pl : places) xs.insert(pl.ell.index());
            CHECK(static_cast<int>(xs.size()) == q);
        }
        CHECK_THROWS_AS(degree_two_places(CurveModel::projective_line(2)), DomainError);
    }

    TEST_CASE("RH check on quadratics") {
        CHECK(rh_check(IntPolynomial{1, -2, 2}, 2).holds);
        CHECK(rh_check(IntPolynomial{1, 4, 4}, 4).holds);
        CHECK(rh_check(IntPolynomial{1, 4, 4}, 4).discriminant == 0);
        CHECK_FALSE(rh_check(IntPolynomial{1, 3, 2}, 2).holds);
        CHECK(rh_check(IntPolynomial{1}, 2).holds);
        CHECK_THROWS_AS(rh_check(IntPolynomial{1, 1, 1, 1}, 2), DomainError);
    }
}
