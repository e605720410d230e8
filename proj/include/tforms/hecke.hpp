#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tforms/graph.hpp"
#include "tforms/int_polynomial.hpp"
#include "tforms/linear_algebra.hpp"
#include "tforms/rational.hpp"

namespace tforms {

using GraphPtr = std::shared_ptr<const QuotientGraph>;

/// Coordinates of a form truncated at depth N: (t_1..t_q, z_0, z_1, c_0..c_N),
/// or just (c_0..c_N) for a pure ray.
std::vector<VertexId> form_coordinates(const QuotientGraph& g, int depth);

/// Exact rational function on the truncated vertex set of a quotient graph.
class FormVector {
public:
    FormVector(GraphPtr graph, int depth);
    FormVector(GraphPtr graph, int depth, std::vector<Rational> values);
    static FormVector indicator(GraphPtr graph, int depth, const VertexId& v);
    static FormVector from_function(GraphPtr graph, int depth, const std::function<Rational(const VertexId&)>& f);

    const GraphPtr& graph() const noexcept { return graph_; }
    int depth() const noexcept { return depth_; }
    const std::vector<VertexId>& coordinates() const noexcept { return coords_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    bool has(const VertexId& v) const;
    /// Throws DomainError outside the truncation.
    const Rational& at(const VertexId& v) const;
    void set(const VertexId& v, Rational value);

    /// Restriction to a smaller depth.
    FormVector truncated(int depth) const;
    bool is_zero() const;

    FormVector operator+(const FormVector& o) const;
    FormVector operator-(const FormVector& o) const;
    FormVector operator*(const Rational& c) const;
    bool operator==(const FormVector& o) const;

    /// "[T1,..,Tq | Z0,Z1 | C0,C1,...]".
    std::string to_string() const;

private:
    std::size_t index_of(const VertexId& v) const;

    GraphPtr graph_;
    int depth_;
    std::vector<VertexId> coords_;
    std::vector<Rational> values_;
};

/// Hecke operator at infinity: (Phi f)(v) = sum_w weight(v->w) f(w).
/// The result has depth N-1; DomainError when the input depth cannot feed every
/// core vertex (N < ray start).
FormVector apply_phi_infty(const FormVector& f);

struct ConstraintRow {
    std::vector<Rational> coefficients;
    std::string provenance;
};

/// Linear conditions on the coordinates of form_coordinates(graph, depth).
struct LinearSystem {
    GraphPtr graph;
    int depth = 0;
    std::vector<ConstraintRow> rows;
};

Rational evaluate(const ConstraintRow& row, const FormVector& f);

/// Row k (k = 0..K) is sum_{(v,m) in orbit} m (Phi^k f)(v) = 0, expanded into
/// coefficients by pushing the identity form through Phi symbolically.
/// Requires K <= N - ray_start.
LinearSystem toroidal_system(GraphPtr graph, const TorusOrbit& orbit, int iterations, int depth);

struct Subspace {
    GraphPtr graph;
    int depth = 0;
    std::vector<FormVector> basis;
    int dimension() const { return static_cast<int>(basis.size()); }
};

/// Solutions of the system over the coordinates the rows can see (depth = the
/// highest c-index with a nonzero coefficient). The basis is in reduced echelon
/// form over the coordinate order, leading entries on the earliest coordinates.
Subspace solve_space(const LinearSystem& sys);
/// Same, truncated at an explicit depth.
Subspace solve_space(const LinearSystem& sys, int depth);

/// Coefficients of C_k in terms of Z_0, tau = T_1 + ... + T_q and Z_1:
///   C_k = lambda_k Z_0 + mu_k tau  (k even),   C_k = nu_k Z_1  (k odd).
struct RecursionCoefficients {
    int depth = 0;
    std::vector<Rational> lambda;  ///< 0 at odd k
    std::vector<Rational> mu;      ///< 0 at odd k
    std::vector<Rational> nu;      ///< 0 at even k
    /// The closed step (k >= 2)
    ///   nu_{k+1} = lambda_k nu_1 + q lambda_k + q(q+1) mu_k - q nu_{k-1}      (k even)
    ///   lambda_{k+1} = nu_k - q lambda_{k-1},  mu_{k+1} = nu_k - q mu_{k-1}   (k odd)
    /// holds on every derived index.
    bool closed_step_holds = false;
    /// Every disagreement with the reference values C_0 = -2 tau, C_1 = -2 Z_1,
    /// C_2 = -(q+1) Z_0 and with the closed step.
    std::vector<std::string> discrepancies;
};

/// Derives the tables up to depth K by forward substitution through the toroidal
/// rows. ConsistencyError when some C_k leaves the expected span.
RecursionCoefficients recursion_coefficients(GraphPtr graph, int iterations);

struct Eigenspace {
    Rational eigenvalue;
    std::vector<FormVector> basis;
    int multiplicity = 0;
};

struct EigenDecomposition {
    /// Matrix of Phi on the subspace basis (column i = image of basis vector i).
    RationalMatrix induced;
    IntPolynomial characteristic_polynomial;
    /// Ascending eigenvalues.
    std::vector<Eigenspace> spaces;
    int dimension() const;
    const Eigenspace* find(const Rational& eigenvalue) const;
};

/// Exact eigendecomposition of Phi on a Phi-stable subspace with integral spectrum.
EigenDecomposition eigen_decompose(const Subspace& s);

/// Phi-eigenforms of the eigenvalue-0 space vanishing along the cusp ray beyond
/// the core; returned in the basis f_k - f_1 (k = 2..q), where f_k has T = e_k.
Subspace cusp_subspace(const EigenDecomposition& dec);

/// chi o det for the trivial (sign = +1) or the parity (sign = -1) character.
FormVector residue_form(GraphPtr graph, int depth, int sign);

/// Parity of the graph distance from c_0 (the graph is bipartite).
int vertex_parity(const QuotientGraph& g, const VertexId& v);

}  // namespace tforms
