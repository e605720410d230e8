#pragma once

#include <cstddef>
#include <vector>

#include "tforms/int_polynomial.hpp"
#include "tforms/rational.hpp"

namespace tforms {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact nullspace of the row system by fraction-free elimination.
///
/// Pivots are taken from the rightmost columns first, so each basis vector has
/// a 1 at a distinct free column, zeros at the other free columns, and its
/// first nonzero entry at that free column. Basis vectors are ordered by free
/// column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& rows, std::size_t ncols);

std::size_t rank(const RationalMatrix& rows, std::size_t ncols);

/// det(X*I - M) by Faddeev-LeVerrier; DomainError if a coefficient is not integral.
IntPolynomial characteristic_polynomial(const RationalMatrix& m);

/// Integer roots of a nonzero polynomial with multiplicities, ascending.
/// `remainder` receives the cofactor without integer roots.
std::vector<std::pair<BigInt, int>> integer_roots(const IntPolynomial& p, IntPolynomial* remainder = nullptr);

}  // namespace tforms
