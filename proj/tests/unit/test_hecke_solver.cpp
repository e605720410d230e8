#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "tforms/errors.hpp"
#include "tforms/hecke.hpp"

using namespace tforms;

namespace {

GraphPtr elliptic(int q) { return std::make_shared<const QuotientGraph>(graph_elliptic(q)); }
GraphPtr p1(int q) { return std::make_shared<const QuotientGraph>(graph_p1(q)); }

// sum_w weight(v->w) f(w), straight from the neighbour lists.
Rational phi_at(const FormVector& f, const VertexId& v) {
    Rational s = 0;
    for (const auto& [u, w] : f.graph()->neighbors(v)) s += Rational(w) * f.at(u);
    return s;
}

FormVector random_form(const GraphPtr& g, int depth, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-5, 5);
    return FormVector::from_function(g, depth, [&](const VertexId&) { return Rational(d(rng)); });
}

Rational leibniz_det_shift(const RationalMatrix& m, long long x) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
        }
        Rational prod = inv % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) prod *= (i == perm[i] ? Rational(x) : Rational(0)) - m[i][perm[i]];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Subspace elliptic_space(int q, int depth = 16, int iterations = 12) {
    const auto g = elliptic(q);
    return solve_space(toroidal_system(g, torus_orbit(q, OrbitKind::EllipticConstant), iterations, depth));
}

}  // namespace

TEST_SUITE("hecke operator") {
    TEST_CASE("coordinates") {
        const auto g = elliptic(3);
        const auto c = form_coordinates(*g, 4);
        REQUIRE(c.size() == 3 + 2 + 5);
        CHECK(c.front() == VertexId::t(1));
        CHECK(c[3] == VertexId::z(0));
        CHECK(c[5] == VertexId::c(0));
        CHECK(c.back() == VertexId::c(4));
        CHECK(form_coordinates(*p1(2), 3).size() == 4);
        const auto shorter = form_coordinates(*g, 2);
        CHECK(std::equal(shorter.begin(), shorter.end(), c.begin()));
    }

    TEST_CASE("Phi on indicators") {
        const auto g = p1(3);
        const auto f = apply_phi_infty(FormVector::indicator(g, 5, VertexId::c(1)));
        CHECK(f.depth() == 4);
        CHECK(f.at(VertexId::c(0)) == 4);
        CHECK(f.at(VertexId::c(2)) == 3);
        CHECK(f.at(VertexId::c(1)) == 0);

        const auto e = elliptic(2);
        const auto h = apply_phi_infty(FormVector::indicator(e, 6, VertexId::z(1)));
        CHECK(h.at(VertexId::t(1)) == 3);
        CHECK(h.at(VertexId::t(2)) == 3);
        CHECK(h.at(VertexId::z(0)) == 2);
        CHECK(h.at(VertexId::c(1)) == 0);
        const auto k = apply_phi_infty(FormVector::indicator(e, 6, VertexId::z(0)));
        CHECK(k.at(VertexId::z(1)) == 1);
        CHECK(k.at(VertexId::c(1)) == 1);
    }

    TEST_CASE("Phi agrees with the neighbour sums") {
        std::mt19937 rng(1);
        for (int q : {2, 3, 4}) {
            const auto g = elliptic(q);
            const auto f = random_form(g, 9, rng);
            const auto pf = apply_phi_infty(f);
            for (const auto& v : pf.coordinates()) CHECK(pf.at(v) == phi_at(f, v));
        }
    }

    TEST_CASE("exhausted depth is an error") {
        CHECK_THROWS_AS(apply_phi_infty(FormVector(elliptic(2), 1)), DomainError);
        CHECK_THROWS_AS(FormVector(elliptic(2), 3).at(VertexId::c(4)), DomainError);
        CHECK_THROWS_AS(FormVector(elliptic(2), 3, {1, 2}), DomainError);
    }
}

TEST_SUITE("toroidal system") {
    TEST_CASE("row k evaluates the orbit sum of Phi^k f") {
        std::mt19937 rng(2);
        for (int q : {2, 3, 4}) {
            const auto g = elliptic(q);
            const TorusOrbit orbit = torus_orbit(q, OrbitKind::EllipticConstant);
            const int n = 12, k_max = 8;
            const auto sys = toroidal_system(g, orbit, k_max, n);
            REQUIRE(static_cast<int>(sys.rows.size()) == k_max + 1);
            for (int trial = 0; trial < 3; ++trial) {
                const FormVector f = random_form(g, n, rng);
                FormVector pk = f;
                for (int k = 0; k <= k_max; ++k) {
                    Rational direct = 0;
                    for (const auto& [v, m] : orbit.entries) direct += Rational(m) * pk.at(v);
                    CHECK(evaluate(sys.rows[static_cast<std::size_t>(k)], f) == direct);
                    if (k < k_max) pk = apply_phi_infty(pk);
                }
            }
        }
    }

    TEST_CASE("row 0 on the elliptic graph") {
        const auto sys = toroidal_system(elliptic(2), torus_orbit(2, OrbitKind::EllipticConstant), 0, 4);
        REQUIRE(sys.rows.size() == 1);
        // t1 t2 z0 z1 c0 ...
        const std::vector<Rational> head{2, 2, 0, 0, 1};
        CHECK(std::equal(head.begin(), head.end(), sys.rows[0].coefficients.begin()));
    }

    TEST_CASE("too many iterations for the depth") {
        const auto g = elliptic(2);
        CHECK_THROWS_AS(toroidal_system(g, torus_orbit(2, OrbitKind::EllipticConstant), 11, 12), DomainError);
        CHECK_NOTHROW(toroidal_system(g, torus_orbit(2, OrbitKind::EllipticConstant), 10, 12));
        CHECK_THROWS_AS(toroidal_system(g, torus_orbit(2, OrbitKind::EllipticConstant), -1, 12), DomainError);
    }

    TEST_CASE("dimension q+2, stable under doubling") {
        for (int q : {2, 3, 4}) {
            CHECK(elliptic_space(q, 8, 6).dimension() == q + 2);
            CHECK(elliptic_space(q).dimension() == q + 2);
            CHECK(elliptic_space(q, 32, 28).dimension() == q + 2);
        }
    }

    TEST_CASE("basis solves every row and is in echelon form") {
        for (int q : {2, 3, 4}) {
            const auto g = elliptic(q);
            const auto sys = toroidal_system(g, torus_orbit(q, OrbitKind::EllipticConstant), 12, 16);
            const auto s = solve_space(sys);
            std::size_t last_lead = 0;
            for (std::size_t b = 0; b < s.basis.size(); ++b) {
                const auto& v = s.basis[b].values();
                const auto lead = static_cast<std::size_t>(
                    std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; }) - v.begin());
                CHECK(v[lead] == 1);
                if (b > 0) CHECK(lead > last_lead);
                last_lead = lead;
                for (std::size_t o = 0; o < s.basis.size(); ++o) {
                    if (o != b) CHECK(s.basis[o].values()[lead] == 0);
                }
                for (const auto& row : sys.rows) CHECK(evaluate(row, s.basis[b]) == 0);
            }
        }
    }

    TEST_CASE("the projective line has no toroidal forms") {
        for (int q : {2, 3}) {
            const auto g = p1(q);
            const auto s = solve_space(toroidal_system(g, torus_orbit(q, OrbitKind::P1Constant), 63, 64));
            CHECK(s.dimension() == 0);
        }
        // row k pins f(c_k) in terms of f(c_0..c_{k-1}), so the solution space collapses one coordinate at a time
        const auto g = p1(2);
        for (int k = 0; k <= 6; ++k) {
            const auto s = solve_space(toroidal_system(g, torus_orbit(2, OrbitKind::P1Constant), k, k + 1), k);
            CHECK(s.dimension() == 0);
            CHECK(solve_space(toroidal_system(g, torus_orbit(2, OrbitKind::P1Constant), k, k + 1), k + 1).dimension() == 1);
        }
    }
}

TEST_SUITE("recursion and spectrum") {
    TEST_CASE("recursion coefficients") {
        for (int q : {2, 3, 4}) {
            const auto rc = recursion_coefficients(elliptic(q), 12);
            CHECK(rc.lambda[0] == 0);
            CHECK(rc.mu[0] == -2);
            CHECK(rc.nu[1] == -2 * q);
            CHECK(rc.lambda[2] == -(3 * q - 1));
            CHECK(rc.mu[2] == -2 * (q - 1));
            CHECK(rc.closed_step_holds);
            CHECK(std::find(rc.discrepancies.begin(), rc.discrepancies.end(), "closed step fails at k = 1") !=
                  rc.discrepancies.end());
        }
        CHECK_THROWS_AS(recursion_coefficients(p1(2), 4), DomainError);
    }

    TEST_CASE("spectrum is 0^q, +q, -q") {
        for (int q : {2, 3, 4}) {
            const auto dec = eigen_decompose(elliptic_space(q));
            IntPolynomial expect = IntPolynomial{-q * q, 0, 1};
            for (int i = 0; i < q; ++i) expect = expect * IntPolynomial{0, 1};
            CHECK(dec.characteristic_polynomial == expect);
            for (long long x = -5; x <= 5; ++x) {
                CHECK(Rational(dec.characteristic_polynomial.evaluate(BigInt(x))) == leibniz_det_shift(dec.induced, x));
            }
            REQUIRE(dec.spaces.size() == 3);
            CHECK(dec.spaces[0].eigenvalue == -q);
            CHECK(dec.spaces[1].eigenvalue == 0);
            CHECK(dec.spaces[1].multiplicity == q);
            CHECK(dec.spaces[2].eigenvalue == q);
            CHECK(dec.dimension() == q + 2);
            CHECK(dec.find(Rational(q + 1)) == nullptr);
        }
    }

    TEST_CASE("eigenvectors satisfy Phi f = lambda f") {
        for (int q : {2, 3, 4}) {
            const auto dec = eigen_decompose(elliptic_space(q));
            for (const auto& es : dec.spaces) {
                for (const auto& f : es.basis) {
                    const auto pf = apply_phi_infty(f);
                    CHECK(pf == f.truncated(pf.depth()) * es.eigenvalue);
                }
            }
        }
    }

    TEST_CASE("+q eigenform head") {
        const int q = 2;
        const auto dec = eigen_decompose(elliptic_space(q));
        const auto& f = dec.find(Rational(q))->basis.front();
        CHECK(f.at(VertexId::t(1)) == q + 1);
        CHECK(f.at(VertexId::t(2)) == q + 1);
        CHECK(f.at(VertexId::z(0)) == -q);
        CHECK(f.at(VertexId::z(1)) == q);
        CHECK(f.at(VertexId::c(0)) == -2 * q * (q + 1));
        CHECK(f.at(VertexId::c(1)) == -2 * q * q);
    }

    TEST_CASE("cusp forms") {
        for (int q : {2, 3, 4}) {
            const auto cusp = cusp_subspace(eigen_decompose(elliptic_space(q)));
            CHECK(cusp.dimension() == q - 1);
            for (const auto& f : cusp.basis) {
                Rational tsum = 0;
                for (const auto& v : f.coordinates()) {
                    if (v.kind == VertexKind::T) {
                        tsum += f.at(v);
                    } else {
                        CHECK(f.at(v) == 0);
                    }
                }
                CHECK(tsum == 0);
                CHECK(apply_phi_infty(f).is_zero());
            }
        }
    }

    TEST_CASE("residue forms violate row 0") {
        for (int q : {2, 3, 4}) {
            const auto g = elliptic(q);
            const auto sys = toroidal_system(g, torus_orbit(q, OrbitKind::EllipticConstant), 4, 10);
            for (int sign : {1, -1}) {
                const auto r = residue_form(g, 10, sign);
                const auto pr = apply_phi_infty(r);
                CHECK(pr == r.truncated(9) * Rational(sign * (q + 1)));
                CHECK(evaluate(sys.rows[0], r) == 1 + 2 * q);
                for (const auto& v : r.coordinates()) CHECK(r.at(v) == (sign == 1 ? 1 : (vertex_parity(*g, v) ? -1 : 1)));
            }
            CHECK_THROWS_AS(residue_form(g, 10, 2), DomainError);
        }
    }
}
