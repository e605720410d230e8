#pragma once

#include <map>
#include <string>
#include <vector>

#include "tforms/curve.hpp"
#include "tforms/graph.hpp"
#include "tforms/hecke.hpp"
#include "tforms/laurent_series.hpp"
#include "tforms/local_expansion.hpp"

namespace tforms {

/// A monomial x^i y^j (j <= 1) of the coordinate ring, expanded at infinity.
struct AFunction {
    int x_power = 0;
    int y_power = 0;
    int pole_order = 0;
    LaurentSeries expansion;
    std::string label() const;
};

/// Monomials of pole order <= bound. Pole orders are 2i + 3j, so every
/// order except 1 occurs exactly once.
class AFunctionBasis {
public:
    AFunctionBasis(const LocalExpansion& e, int max_pole_order = 16);

    int max_pole_order() const noexcept { return bound_; }
    const std::vector<AFunction>& functions() const noexcept { return functions_; }
    /// nullptr at a gap or beyond the bound.
    const AFunction* with_pole_order(int k) const;
    /// Ascending.
    std::vector<int> pole_orders() const;

private:
    int bound_;
    std::vector<AFunction> functions_;
};

class LaurentMatrix {
public:
    LaurentMatrix(LaurentSeries a, LaurentSeries b, LaurentSeries c, LaurentSeries d, std::string provenance = {});

    static LaurentMatrix diag(const LaurentSeries& a, const LaurentSeries& d, std::string provenance = {});
    /// <a, b> = (a b; 0 1).
    static LaurentMatrix upper(const LaurentSeries& a, const LaurentSeries& b, std::string provenance = {});
    static LaurentMatrix identity(const FieldPtr& f);
    /// (0 1; 1 0).
    static LaurentMatrix swap(const FieldPtr& f);

    const LaurentSeries& a() const noexcept { return a_; }
    const LaurentSeries& b() const noexcept { return b_; }
    const LaurentSeries& c() const noexcept { return c_; }
    const LaurentSeries& d() const noexcept { return d_; }
    const std::string& provenance() const noexcept { return provenance_; }
    const FieldPtr& field() const noexcept { return a_.field(); }

    LaurentSeries determinant() const;
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    /// Entrywise agreement on the joint windows.
    bool agrees_with(const LaurentMatrix& o) const;
    /// Smallest cap over the entries.
    int cap() const;

    std::string to_string() const;

private:
    LaurentSeries a_, b_, c_, d_;
    std::string provenance_;
};

/// True for matrices in K Z at infinity: some t^m g is integral with unit determinant.
bool in_maximal_compact_mod_center(const LaurentMatrix& g);

struct ReductionMove {
    enum class Side { Left, Right };
    Side side;
    LaurentMatrix matrix;
    std::string note;
};

/// Canonical vertex with the moves that reach its representative.
struct StandardVertex {
    VertexId vertex;
    std::vector<ReductionMove> chain;
    LaurentMatrix representative;
};

/// c_i -> diag(t^-i, 1); t_i -> <t^2, t^-1 + ell_i t> with ell_i from `places`.
LaurentMatrix canonical_representative(const VertexId& v, const FieldPtr& field, const std::vector<DegreeTwoPlace>& places);

/// Reduces m by left GL_2(A) moves and right K Z moves to a canonical vertex.
/// Covers the shapes <t^n, 0> (giving c_|n|) and <t^2, c t^-1 + c' t> with c != 0
/// (giving the t_i with ell_i = c'/c). Anything else is a DomainError; reading
/// past a known coefficient is a PrecisionError.
StandardVertex reduce_to_standard(const LaurentMatrix& m, const AFunctionBasis& basis,
                                  const std::vector<DegreeTwoPlace>& places);

/// Applies the chain to m.
LaurentMatrix replay(const LaurentMatrix& m, const std::vector<ReductionMove>& chain);
/// Replays the chain, checks every move lies in the right group and that the
/// result agrees with the representative.
bool verify_witness(const LaurentMatrix& m, const StandardVertex& s);

/// pi = x - ell and y/pi at a degree-two place, the latter through the
/// geometric series (y/x)(1 + ell/x + (ell/x)^2 + ...).
struct PlaceExpansion {
    LaurentSeries pi;
    /// t^2 pi.
    LaurentSeries cofactor;
    bool cofactor_is_unit = false;
    LaurentSeries y_over_pi;
    /// Coefficients of y/pi at t^-1, t^0, t^1 equal 1, 0, ell.
    bool head_matches = false;
};

PlaceExpansion place_expansion(const LocalExpansion& e, const DegreeTwoPlace& place);

/// diag(pi, 1) followed by the q^2 matrices (1 b; 0 pi), b = b0 + b1 y, b1 major.
std::vector<LaurentMatrix> phi_p_cosets(const CurveModel& curve, const LocalExpansion& e, const DegreeTwoPlace& place);

struct PhiColumn {
    int place_id = 0;
    int vertex_index = 0;
    std::vector<LaurentMatrix> cosets;
    std::vector<StandardVertex> reductions;
    std::map<VertexId, int> tally;
    int total() const;
};

PhiColumn phi_p_column(const CurveModel& curve, const LocalExpansion& e, const AFunctionBasis& basis,
                       const std::vector<DegreeTwoPlace>& places, const DegreeTwoPlace& place);

struct CuspElimination {
    /// One row per place: sum over the column of multiplicity * f(vertex) = 0.
    std::vector<ConstraintRow> conditions;
    Subspace remaining;
};

/// Cuts the cusp space by the conditions (Phi_P f)(c_0) = 0, one per place.
CuspElimination eliminate_cusp_forms(const Subspace& cusp, const std::vector<PhiColumn>& columns);

}  // namespace tforms
