#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tforms/curve.hpp"
#include "tforms/graph.hpp"
#include "tforms/int_polynomial.hpp"
#include "tforms/rational.hpp"

namespace tforms {

inline constexpr const char* kReportSchema = "tforms.analysis/1";

/// One degree-two polynomial qT^2 + aT + 1 and the Hecke eigenvalue -a it pairs with.
struct EisensteinEntry {
    std::string source;  ///< "P" or "Lq"
    IntPolynomial poly;
    BigInt eigenvalue = 0;
    bool in_spectrum = false;
    bool survives = false;
    std::string reason;
};

struct EisensteinSelection {
    std::vector<EisensteinEntry> entries;
    /// gcd(Lq, Ltilde) and their resultant (nonzero exactly when the gcd is 1).
    IntPolynomial gcd;
    BigInt resultant = 0;
    std::optional<BigInt> surviving;
};

/// Pairs P with its eigenvalue and excludes the eigenvalue of Lq when Lq and
/// Ltilde are coprime. DomainError if a polynomial is not of the form qT^2+aT+1,
/// if P's eigenvalue is not in the spectrum, or if the gcd is not 1.
EisensteinSelection select_eisenstein(const std::vector<std::pair<Rational, int>>& spectrum, int q, const IntPolynomial& p,
                                      const IntPolynomial& lq, const IntPolynomial& ltilde);

/// Roots of u^2 - lambda u + q for u = q^s.
struct RhResult {
    BigInt lambda = 0;
    int q = 0;
    BigInt discriminant = 0;
    std::vector<std::string> roots;
    /// |u|^2 = q for both roots, i.e. Re(s) = 1/2.
    bool verdict = false;
    std::string detail;
};

/// lambda must lie in {0, +-q, +-(q+1)}; DomainError otherwise.
RhResult rh_verdict(const BigInt& lambda, int q);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PhiPSummary {
    int place = 0;
    std::string ell;
    std::vector<std::pair<std::string, int>> tally;
    bool matches = false;
};

struct AnalysisOptions {
    std::string field = "e2";  ///< p1, e2, e3 or e4
    int q = 2;                 ///< only read for p1
    int depth = 16;
    int iterations = 12;
    int precision = 32;
};

struct AnalysisReport {
    AnalysisOptions options;
    std::string field;
    int q = 0;
    std::string curve;
    ValidationReport graph;
    long long count_k1 = 0;
    long long count_k2 = 0;
    std::vector<int> group_invariants;
    std::optional<IntPolynomial> p, lq, ltilde;
    int dim_s = 0;
    int dim_cusp = 0;
    int dim_cusp_after = 0;
    int dim_toroidal = 0;
    std::vector<std::pair<Rational, int>> spectrum;
    std::vector<std::string> eigenforms;
    std::vector<PhiPSummary> phi_p;
    std::vector<std::pair<std::string, std::string>> residues;  ///< form, violated row residual
    std::optional<EisensteinSelection> eisenstein;
    std::optional<RhResult> rh;
    std::vector<Check> checks;
    std::vector<std::string> discrepancies;
    std::vector<std::string> notes;

    bool all_passed() const;
};

/// Runs the full pipeline for one field. Stage failures are rethrown as
/// Error("<stage>: <message>").
AnalysisReport run_full_analysis(const AnalysisOptions& options);

nlohmann::ordered_json to_json(const AnalysisReport& r);
std::string to_markdown(const AnalysisReport& r);

/// CurveModel for "p1" (with q), "e2", "e3", "e4".
CurveModel curve_for_field(const std::string& field, int q = 2);

}  // namespace tforms
