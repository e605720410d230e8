#include "tforms/linear_algebra.hpp"

#include <algorithm>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

using IntRow = std::vector<BigInt>;

IntRow to_integer_row(const std::vector<Rational>& row, std::size_t ncols) {
    BigInt den = 1;
    for (std::size_t i = 0; i < ncols && i < row.size(); ++i) den = lcm(den, boost::multiprecision::denominator(row[i]));
    IntRow out(ncols);
    for (std::size_t i = 0; i < ncols && i < row.size(); ++i) {
        out[i] = boost::multiprecision::numerator(row[i] * Rational(den));
    }
    return out;
}

void make_primitive(IntRow& row) {
    BigInt g = 0;
    for (const auto& x : row) g = gcd(g, abs(x));
    if (g > 1) {
        for (auto& x : row) x /= g;
    }
}

struct Echelon {
    std::vector<IntRow> rows;
    std::vector<std::size_t> pivot_col;  // per row in `rows`
};

// Fraction-free Gauss-Jordan, pivot columns scanned right to left.
Echelon eliminate(const RationalMatrix& input, std::size_t ncols) {
    std::vector<IntRow> rows;
    for (const auto& r : input) {
        IntRow ir = to_integer_row(r, ncols);
        if (std::any_of(ir.begin(), ir.end(), [](const BigInt& x) { return x != 0; })) rows.push_back(std::move(ir));
    }
    std::vector<bool> used(rows.size(), false);
    std::vector<std::size_t> pivot_row;
    Echelon e;
    for (std::size_t col = ncols; col-- > 0;) {
        std::size_t piv = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!used[i] && rows[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows.size()) continue;
        used[piv] = true;
        const BigInt p = rows[piv][col];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == piv || rows[i][col] == 0) continue;
            const BigInt f = rows[i][col];
            for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = rows[i][j] * p - f * rows[piv][j];
            make_primitive(rows[i]);
        }
        pivot_row.push_back(piv);
        e.pivot_col.push_back(col);
    }
    for (auto i : pivot_row) e.rows.push_back(rows[i]);
    return e;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& rows, std::size_t ncols) {
    const Echelon e = eliminate(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : e.pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < e.rows.size(); ++k) {
            const std::size_t pc = e.pivot_col[k];
            v[pc] = -Rational(e.rows[k][f]) / Rational(e.rows[k][pc]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const RationalMatrix& rows, std::size_t ncols) { return eliminate(rows, ncols).rows.size(); }

IntPolynomial characteristic_polynomial(const RationalMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw DomainError("characteristic_polynomial: matrix is not square");
    }
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    RationalMatrix mk(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix next(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Rational acc = 0;
                for (std::size_t l = 0; l < n; ++l) acc += m[i][l] * mk[l][j];
                next[i][j] = acc;
            }
            next[i][i] += c[n - k + 1];
        }
        mk = std::move(next);
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) trace += m[i][l] * mk[l][i];
        }
        c[n - k] = -trace / Rational(static_cast<long long>(k));
    }
    std::vector<BigInt> ints;
    for (const auto& x : c) {
        if (!is_integer(x)) throw DomainError("characteristic polynomial has a non-integral coefficient " + to_string(x));
        ints.push_back(boost::multiprecision::numerator(x));
    }
    return IntPolynomial(std::move(ints));
}

std::vector<std::pair<BigInt, int>> integer_roots(const IntPolynomial& p, IntPolynomial* remainder) {
    if (p.is_zero()) throw DomainError("integer_roots of the zero polynomial");
    std::vector<std::pair<BigInt, int>> roots;
    IntPolynomial rest = p;
    auto strip = [&rest](const BigInt& r) {
        int mult = 0;
        const IntPolynomial factor(std::vector<BigInt>{-r, 1});
        while (rest.degree() > 0) {
            auto q = exact_divide(rest, factor);
            if (!q) break;
            rest = *q;
            ++mult;
        }
        return mult;
    };
    if (int m = strip(0); m > 0) roots.emplace_back(0, m);
    if (rest.degree() > 0) {
        const BigInt c0 = abs(rest.coefficient(0));
        std::vector<BigInt> divisors;
        for (BigInt d = 1; d * d <= c0; ++d) {
            if (c0 % d == 0) {
                divisors.push_back(d);
                if (d * d != c0) divisors.push_back(c0 / d);
            }
        }
        std::vector<BigInt> candidates;
        for (const auto& d : divisors) {
            candidates.push_back(d);
            candidates.push_back(-d);
        }
        std::sort(candidates.begin(), candidates.end());
        for (const auto& r : candidates) {
            if (rest.degree() <= 0) break;
            if (int m = strip(r); m > 0) roots.emplace_back(r, m);
        }
    }
    std::sort(roots.begin(), roots.end());
    if (remainder) *remainder = rest;
    return roots;
}

}  // namespace tforms
