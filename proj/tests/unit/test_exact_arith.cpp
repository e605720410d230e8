#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tforms/errors.hpp"
#include "tforms/field.hpp"
#include "tforms/int_polynomial.hpp"
#include "tforms/laurent_series.hpp"
#include "tforms/linear_algebra.hpp"
#include "tforms/rational.hpp"

using namespace tforms;

namespace {

const std::vector<std::pair<int, int>> kFields = {{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 4}};

FieldElement el(const FieldPtr& f, std::uint32_t i) { return {f, i}; }

// Leibniz expansion of det(x I - M) at an integer point.
Rational leibniz_charpoly_at(const RationalMatrix& m, long long x) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        }
        Rational prod = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) prod *= (i == perm[i] ? Rational(x) : Rational(0)) - m[i][perm[i]];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TEST_SUITE("finite fields") {
    TEST_CASE("table fields have the documented sizes and moduli") {
        CHECK(build_field(2, 1)->size() == 2);
        CHECK(build_field(3, 1)->size() == 3);
        CHECK(build_field(3, 1)->modulus() == std::vector<int>{0, 1});
        const auto f4 = build_field(2, 2);
        CHECK(f4->size() == 4);
        CHECK(f4->modulus() == std::vector<int>{1, 1, 1});
        CHECK(build_field(3, 2)->modulus() == std::vector<int>{1, 0, 1});
        CHECK(build_field(2, 4)->size() == 16);
        for (const auto& [p, k] : kFields) {
            const auto f = build_field(p, k);
            CHECK(f->size() == static_cast<int>(std::pow(p, k)));
            if (k > 1) CHECK(is_irreducible_mod_p(f->modulus(), p));
        }
        CHECK(build_field(2, 2) == build_field(2, 2));
    }

    TEST_CASE("unsupported or non-prime arguments are rejected") {
        CHECK_THROWS_AS(build_field(4, 1), DomainError);
        CHECK_THROWS_AS(build_field(3, 4), DomainError);
        CHECK_THROWS_AS(build_field(5, 1), DomainError);
    }

    TEST_CASE("irreducibility test on small polynomials") {
        CHECK(is_irreducible_mod_p({1, 1, 1}, 2));
        CHECK_FALSE(is_irreducible_mod_p({1, 0, 1}, 2));  // (x+1)^2
        CHECK(is_irreducible_mod_p({1, 1, 0, 0, 1}, 2));
        CHECK_FALSE(is_irreducible_mod_p({1, 0, 1, 0, 1}, 2));  // (x^2+x+1)^2
        CHECK_FALSE(is_irreducible_mod_p({2, 0, 1}, 3));  // x^2 - 1
    }

    TEST_CASE("alpha^2 = alpha + 1 in F4") {
        const auto f = build_field(2, 2);
        const auto a = FieldElement::generator(f);
        CHECK(a * a == a + FieldElement::one(f));
        CHECK(a.to_string() == "(0,1)");
        CHECK((a + FieldElement::one(f)).to_string() == "(1,1)");
    }

    TEST_CASE("field axioms hold exhaustively") {
        for (const auto& [p, k] : kFields) {
            const auto f = build_field(p, k);
            const auto all = FieldElement::all(f);
            const auto zero = FieldElement::zero(f);
            const auto one = FieldElement::one(f);
            for (const auto& a : all) {
                CHECK(a + zero == a);
                CHECK(a * one == a);
                CHECK(a + (-a) == zero);
                if (!a.is_zero()) CHECK(a * a.inverse() == one);
                for (const auto& b : all) {
                    CHECK(a + b == b + a);
                    CHECK(a * b == b * a);
                    for (const auto& c : all) {
                        if ((a + b) + c != a + (b + c)) FAIL("additive associativity in " << f->label());
                        if ((a * b) * c != a * (b * c)) FAIL("multiplicative associativity in " << f->label());
                        if (a * (b + c) != a * b + a * c) FAIL("distributivity in " << f->label());
                    }
                }
            }
        }
    }

    TEST_CASE("a^(p^k) = a for every element") {
        for (const auto& [p, k] : kFields) {
            const auto f = build_field(p, k);
            for (const auto& a : FieldElement::all(f)) CHECK(a.pow(static_cast<std::uint64_t>(f->size())) == a);
        }
    }

    TEST_CASE("Frobenius of F_q^2 is an automorphism fixing exactly F_q") {
        for (const auto& [base, ext] : std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>{
                 {{2, 1}, {2, 2}}, {{3, 1}, {3, 2}}, {{2, 2}, {2, 4}}}) {
            const auto fq = build_field(base.first, base.second);
            const auto fq2 = build_field(ext.first, ext.second);
            const auto q = static_cast<std::uint64_t>(fq->size());
            const FieldEmbedding emb(fq, fq2);
            std::vector<std::uint32_t> images;
            int fixed = 0;
            for (const auto& a : FieldElement::all(fq2)) {
                const auto fa = a.pow(q);
                images.push_back(fa.index());
                if (fa == a) {
                    ++fixed;
                    CHECK(emb.contains(a));
                }
                for (const auto& b : FieldElement::all(fq2)) {
                    if ((a * b).pow(q) != fa * b.pow(q) || (a + b).pow(q) != fa + b.pow(q)) FAIL("Frobenius is not a homomorphism");
                }
            }
            std::sort(images.begin(), images.end());
            CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
            CHECK(fixed == static_cast<int>(q));
        }
    }

    TEST_CASE("F16 contains a copy of F4") {
        const auto f4 = build_field(2, 2);
        const auto f16 = build_field(2, 4);
        const FieldEmbedding emb(f4, f16);
        const auto a = emb.generator_image();
        CHECK(a * a + a + FieldElement::one(f16) == FieldElement::zero(f16));
        for (const auto& x : FieldElement::all(f4)) {
            for (const auto& y : FieldElement::all(f4)) {
                CHECK(emb(x * y) == emb(x) * emb(y));
                CHECK(emb(x + y) == emb(x) + emb(y));
            }
            CHECK(emb.preimage(emb(x)) == x);
        }
        // the tower description: the generator g satisfies g^2 + g + alpha = 0
        const auto g = FieldElement::generator(f16);
        CHECK(g * g + g + a == FieldElement::zero(f16));
    }

    TEST_CASE("mixing fields is an error") {
        CHECK_THROWS_AS(FieldElement::one(build_field(2, 1)) + FieldElement::one(build_field(3, 1)), DomainError);
        CHECK_THROWS_AS(FieldElement::zero(build_field(3, 1)).inverse(), DomainError);
    }
}

TEST_SUITE("rationals and integer polynomials") {
    TEST_CASE("rationals are normalized") {
        const Rational r = Rational(6) / Rational(-4);
        CHECK(boost::multiprecision::denominator(r) == 2);
        CHECK(boost::multiprecision::numerator(r) == -3);
        CHECK(to_string(r) == "-3/2");
        CHECK(to_string(Rational(4)) == "4");
    }

    TEST_CASE("polynomial printing and degree") {
        const IntPolynomial p{1, -2, 2};
        CHECK(p.to_string() == "1 - 2T + 2T^2");
        CHECK(p.degree() == 2);
        CHECK(IntPolynomial{}.degree() == -1);
        CHECK(IntPolynomial{0, 0}.is_zero());
        CHECK(IntPolynomial{1, 3, 3}.negate_variable() == IntPolynomial{1, -3, 3});
        CHECK(IntPolynomial{2, 4, 6}.primitive_part() == IntPolynomial{1, 2, 3});
    }

    TEST_CASE("gcd examples") {
        CHECK(poly_gcd(IntPolynomial{1, 2, 2}, IntPolynomial{1, 0, 2}) == IntPolynomial{1});
        CHECK(poly_gcd(IntPolynomial{1, 3, 3}, IntPolynomial{1, 1, 3}) == IntPolynomial{1});
        const IntPolynomial p{2, 4, 6};
        CHECK(poly_gcd(p, p) == p.primitive_part());
        CHECK(poly_gcd(IntPolynomial{-1, 0, 1}, IntPolynomial{1, 2, 1}) == IntPolynomial{1, 1});
        CHECK_THROWS_AS(poly_gcd(IntPolynomial{}, IntPolynomial{}), DomainError);
        CHECK(poly_gcd(IntPolynomial{}, IntPolynomial{-3, 6}) == IntPolynomial{-1, 2});
    }

    TEST_CASE("gcd divides both inputs and agrees with the resultant") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coef(-4, 4);
        for (int trial = 0; trial < 200; ++trial) {
            auto rnd = [&](int deg) {
                std::vector<BigInt> c;
                for (int i = 0; i <= deg; ++i) c.emplace_back(coef(rng));
                if (c.back() == 0) c.back() = 1;
                return IntPolynomial(c);
            };
            const IntPolynomial common = rnd(trial % 2);
            const IntPolynomial a = rnd(2) * common;
            const IntPolynomial b = rnd(2) * (trial % 3 == 0 ? IntPolynomial{1} : common);
            if (a.is_zero() || b.is_zero()) continue;
            const IntPolynomial g = poly_gcd(a, b);
            CHECK(g.leading() > 0);
            CHECK(exact_divide(a, g).has_value());
            CHECK(exact_divide(b, g).has_value());
            const bool coprime = g.degree() == 0;
            CHECK(coprime == (resultant(a, b) != 0));
        }
    }

    TEST_CASE("resultant of a product of linear factors") {
        // Res(prod (T - r_i), b) = prod b(r_i) for monic a
        const IntPolynomial a = IntPolynomial{-1, 1} * IntPolynomial{-2, 1} * IntPolynomial{3, 1};
        const IntPolynomial b{5, -1, 2};
        const BigInt expect = b.evaluate(BigInt(1)) * b.evaluate(BigInt(2)) * b.evaluate(BigInt(-3));
        CHECK(resultant(a, b) == expect);
        CHECK(resultant(IntPolynomial{1, 3, 3}, IntPolynomial{1, 1, 3}) != 0);
    }

    TEST_CASE("exact division") {
        const IntPolynomial a{1, 2, 1};
        CHECK(exact_divide(a, IntPolynomial{1, 1}) == IntPolynomial{1, 1});
        CHECK_FALSE(exact_divide(a, IntPolynomial{1, 2}).has_value());
        CHECK_FALSE(exact_divide(IntPolynomial{1, 1}, IntPolynomial{0, 2}).has_value());
    }
}

TEST_SUITE("laurent series") {
    TEST_CASE("inverse of a monomial") {
        const auto f = build_field(2, 1);
        const auto one = FieldElement::one(f);
        const auto s = LaurentSeries::monomial(one, 2);
        const auto inv = s.inverse();
        CHECK(inv.valuation() == -2);
        CHECK(inv.coefficient(-2).is_one());
        CHECK(inv.is_exact());
    }

    TEST_CASE("geometric series over F2") {
        const auto f = build_field(2, 1);
        const auto one = FieldElement::one(f);
        const LaurentSeries s(f, 0, {one, one}, 20);
        const auto inv = s.inverse();
        CHECK(inv.valuation() == 0);
        CHECK(inv.precision() == 20);
        for (int e = 0; e < 20; ++e) CHECK(inv.coefficient(e).is_one());
        CHECK_THROWS_AS(inv.coefficient(20), PrecisionError);
    }

    TEST_CASE("inverting zero is an error") {
        const auto f = build_field(3, 1);
        CHECK_THROWS_AS(LaurentSeries::zero(f, 10).inverse(), DomainError);
    }

    TEST_CASE("(a b) a^-1 = b on the joint window") {
        std::mt19937 rng(11);
        for (const auto& [p, k] : kFields) {
            const auto f = build_field(p, k);
            std::uniform_int_distribution<int> pick(0, f->size() - 1);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<FieldElement> ca, cb;
                for (int i = 0; i < 12; ++i) {
                    ca.push_back(el(f, static_cast<std::uint32_t>(pick(rng))));
                    cb.push_back(el(f, static_cast<std::uint32_t>(pick(rng))));
                }
                ca[0] = FieldElement::one(f);
                const LaurentSeries a(f, trial % 5 - 2, ca, 12);
                const LaurentSeries b(f, trial % 3 - 1, cb, 10);
                const auto back = (a * b) * a.inverse();
                CHECK(back.agrees_with(b));
                CHECK(back.cap() <= b.cap());
            }
        }
    }

    TEST_CASE("precision is tracked through arithmetic") {
        const auto f = build_field(3, 1);
        const auto one = FieldElement::one(f);
        const LaurentSeries a(f, -2, {one, one}, 6);  // known below t^4
        const LaurentSeries b(f, 1, {one}, 3);        // known below t^4
        CHECK((a + b).cap() == 4);
        CHECK((a * b).cap() == std::min(-2 + 4, 1 + 4));
        CHECK(a.shift(3).cap() == 7);
        CHECK(a.truncate(1).cap() == 1);
        CHECK_THROWS_AS((a * b).coefficient(2), PrecisionError);
        CHECK(a.keep_below(0).is_exact());
    }
}

TEST_SUITE("exact linear algebra") {
    TEST_CASE("characteristic polynomial matches the Leibniz determinant") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> entry(-3, 3);
        for (std::size_t n = 1; n <= 5; ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                RationalMatrix m(n, std::vector<Rational>(n));
                for (auto& row : m) {
                    for (auto& x : row) x = entry(rng);
                }
                const IntPolynomial cp = characteristic_polynomial(m);
                CHECK(cp.degree() == static_cast<int>(n));
                for (long long x = -3; x <= 3; ++x) CHECK(Rational(cp.evaluate(BigInt(x))) == leibniz_charpoly_at(m, x));
            }
        }
    }

    TEST_CASE("nullspace vectors are killed and count n - rank") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> entry(-2, 2);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
            RationalMatrix m(rows, std::vector<Rational>(cols));
            for (auto& row : m) {
                for (auto& x : row) x = entry(rng);
            }
            const auto ns = nullspace(m, cols);
            CHECK(ns.size() == cols - rank(m, cols));
            for (const auto& v : ns) {
                for (const auto& row : m) {
                    Rational acc = 0;
                    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * v[j];
                    CHECK(acc == 0);
                }
            }
        }
    }

    TEST_CASE("nullspace basis has unit entries on the free columns") {
        // x0 + x1 + x2 = 0: the last column is the pivot
        const auto ns = nullspace({{1, 1, 1}}, 3);
        REQUIRE(ns.size() == 2);
        CHECK(ns[0] == std::vector<Rational>{1, 0, -1});
        CHECK(ns[1] == std::vector<Rational>{0, 1, -1});
    }

    TEST_CASE("integer roots with multiplicity") {
        // T^2 (T - 2)(T + 2)^2 (T^2 + 1)
        const IntPolynomial p = IntPolynomial{0, 0, 1} * IntPolynomial{-2, 1} * IntPolynomial{2, 1} * IntPolynomial{2, 1} *
                                IntPolynomial{1, 0, 1};
        IntPolynomial rest;
        const auto roots = integer_roots(p, &rest);
        REQUIRE(roots.size() == 3);
        CHECK(roots[0] == std::pair<BigInt, int>{-2, 2});
        CHECK(roots[1] == std::pair<BigInt, int>{0, 2});
        CHECK(roots[2] == std::pair<BigInt, int>{2, 1});
        CHECK(rest == IntPolynomial{1, 0, 1});
    }
}
