#include "tforms/report.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "tforms/errors.hpp"
#include "tforms/hecke.hpp"
#include "tforms/local_expansion.hpp"
#include "tforms/local_reduction.hpp"

namespace tforms {

namespace {

long long as_ll(const BigInt& v) { return v.convert_to<long long>(); }

nlohmann::ordered_json rational_json(const Rational& r) {
    if (is_integer(r)) return as_ll(boost::multiprecision::numerator(r));
    return to_string(r);
}

// a*sqrt(r), r squarefree, as "sqrt(3)/2" style text
std::string surd(const Rational& a, const BigInt& r) {
    if (r == 1) return to_string(a);
    const BigInt num = boost::multiprecision::numerator(a);
    const BigInt den = boost::multiprecision::denominator(a);
    std::string s = (num == 1 ? "" : num.str() + "*") + "sqrt(" + r.str() + ")";
    if (den != 1) s += "/" + den.str();
    return s;
}

std::pair<BigInt, BigInt> split_square(BigInt m) {
    BigInt k = 1;
    for (BigInt d = 2; d * d <= m; ++d) {
        while (m % (d * d) == 0) {
            m /= d * d;
            k *= d;
        }
    }
    return {k, m};
}

// (-a) for qT^2 + aT + 1, after checking the shape
BigInt paired_eigenvalue(const IntPolynomial& p, int q, const std::string& name) {
    if (p.degree() != 2 || p.coefficient(0) != 1 || p.coefficient(2) != q) {
        throw DomainError(name + " = " + p.to_string() + " is not of the form qT^2 + aT + 1");
    }
    return -p.coefficient(1);
}

template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

std::string join(const std::vector<int>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

EisensteinSelection select_eisenstein(const std::vector<std::pair<Rational, int>>& spectrum, int q, const IntPolynomial& p,
                                      const IntPolynomial& lq, const IntPolynomial& ltilde) {
    EisensteinSelection sel;
    auto in_spec = [&spectrum](const BigInt& lam) {
        return std::any_of(spectrum.begin(), spectrum.end(), [&lam](const auto& e) { return e.first == Rational(lam); });
    };
    sel.gcd = poly_gcd(lq, ltilde);
    sel.resultant = resultant(lq, ltilde);

    EisensteinEntry ep{"P", p, paired_eigenvalue(p, q, "P"), false, false, {}};
    ep.in_spectrum = in_spec(ep.eigenvalue);
    if (!ep.in_spectrum) throw DomainError("eigenvalue " + ep.eigenvalue.str() + " of the zeta numerator is not in the spectrum");
    ep.survives = true;
    ep.reason = "zero of the zeta function of the field itself";

    EisensteinEntry el{"Lq", lq, paired_eigenvalue(lq, q, "Lq"), false, false, {}};
    el.in_spectrum = in_spec(el.eigenvalue);
    if (!(sel.gcd == IntPolynomial{1})) {
        throw DomainError("gcd(Lq, Ltilde) = " + sel.gcd.to_string() + " is not 1; the exclusion argument does not apply");
    }
    el.survives = false;
    el.reason = "zero of Lq but not of Ltilde (gcd 1, resultant " + sel.resultant.str() + ")";
    if (el.eigenvalue == ep.eigenvalue) throw DomainError("P and Lq pair with the same eigenvalue");

    sel.entries = {ep, el};
    for (const auto& [lam, mult] : spectrum) {
        (void)mult;
        if (lam == Rational(ep.eigenvalue) || lam == Rational(el.eigenvalue)) continue;
        EisensteinEntry other{"-", IntPolynomial{}, boost::multiprecision::numerator(lam), true, false,
                              "pairs with no zero of P or Lq"};
        sel.entries.push_back(other);
    }
    sel.surviving = ep.eigenvalue;
    return sel;
}

RhResult rh_verdict(const BigInt& lambda, int q) {
    const BigInt Q = q;
    if (!(lambda == 0 || abs(lambda) == Q || abs(lambda) == Q + 1)) {
        throw DomainError("rh_verdict: eigenvalue " + lambda.str() + " is outside {0, +-q, +-(q+1)}");
    }
    RhResult r;
    r.lambda = lambda;
    r.q = q;
    r.discriminant = lambda * lambda - 4 * Q;
    const Rational half = Rational(lambda) / 2;
    const BigInt& d = r.discriminant;
    if (d == 0) {
        r.roots = {to_string(half), to_string(half)};
        r.verdict = true;
        r.detail = "double root u = " + to_string(half) + " with u^2 = " + std::to_string(q);
    } else if (d > 0) {
        const auto [k, rad] = split_square(d);
        const Rational s = Rational(k) / 2;
        if (rad == 1) {
            r.roots = {to_string(half + s), to_string(half - s)};
        } else {
            r.roots = {to_string(half) + "+" + surd(s, rad), to_string(half) + "-" + surd(s, rad)};
        }
        r.verdict = false;
        r.detail = "real roots " + r.roots[0] + ", " + r.roots[1] + ": |u|^2 != q, so Re(s) != 1/2";
    } else {
        const auto [k, rad] = split_square(-d);
        const Rational s = Rational(k) / 2;
        std::string im = surd(s, rad);
        im = im == "1" ? "i" : im + "*i";
        const std::string re = half == 0 ? "" : to_string(half);
        r.roots = {re + (re.empty() ? "" : "+") + im, re + "-" + im};
        r.verdict = true;
        r.detail = "conjugate roots with |u|^2 = " + std::to_string(q) + ", so Re(s) = 1/2";
    }
    return r;
}

bool AnalysisReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

CurveModel curve_for_field(const std::string& field, int q) {
    if (field == "p1") return CurveModel::projective_line(q);
    if (field == "e2") return CurveModel::elliptic(2);
    if (field == "e3") return CurveModel::elliptic(3);
    if (field == "e4") return CurveModel::elliptic(4);
    throw DomainError("unknown field '" + field + "' (expected p1, e2, e3 or e4)");
}

AnalysisReport run_full_analysis(const AnalysisOptions& opt) {
    AnalysisReport r;
    r.options = opt;
    r.field = opt.field;
    const CurveModel curve = stage("curve", [&] { return curve_for_field(opt.field, opt.q); });
    const bool elliptic = curve.kind() == CurveKind::Elliptic;
    const int q = curve.q();
    r.q = q;
    r.curve = elliptic ? curve.equation() : curve.name();
    auto check = [&r](std::string name, bool ok, std::string detail = {}) {
        r.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    // graph
    const GraphPtr graph = stage("graph", [&] {
        return std::make_shared<const QuotientGraph>(elliptic ? graph_elliptic(q) : graph_p1(q));
    });
    r.graph = validate_graph(*graph);
    {
        std::string v;
        for (const auto& s : r.graph.violations) v += (v.empty() ? "" : "; ") + s;
        check("graph is valid", r.graph.valid, v);
    }

    // points and zeta data
    stage("points", [&] {
        r.count_k1 = enumerate_points(curve, 1).count();
        r.count_k2 = enumerate_points(curve, 2).count();
        if (elliptic) {
            check("#X(F_q) = 1", r.count_k1 == 1, std::to_string(r.count_k1));
            check("#X(F_q^2) = 2q+1", r.count_k2 == 2 * q + 1, std::to_string(r.count_k2));
            const GroupStructure g = group_structure(EllipticGroup(curve, 2));
            r.group_invariants = g.invariants;
            check("X(F_q^2) is cyclic", g.cyclic(), "Z/" + join(g.invariants, " x Z/"));
            if (!g.cyclic()) {
                r.discrepancies.push_back("X(F_" + std::to_string(q * q) + ") is Z/" + join(g.invariants, " x Z/") +
                                          ", not cyclic of order " + std::to_string(2 * q + 1));
            }
        } else {
            check("#P1(F_q) = q+1", r.count_k1 == q + 1, std::to_string(r.count_k1));
            check("#P1(F_q^2) = q^2+1", r.count_k2 == q * q + 1, std::to_string(r.count_k2));
        }
        return 0;
    });
    stage("zeta", [&] {
        r.p = lpolynomial(curve).poly;
        if (!elliptic) {
            check("zeta numerator is 1", *r.p == IntPolynomial{1}, r.p->to_string());
            return 0;
        }
        r.lq = constant_ext_quotient(curve).poly;
        r.ltilde = genus2_cover_quotient(curve).poly;
        const IntPolynomial ep{1, -q, q};
        const IntPolynomial elq{1, q, q};
        const IntPolynomial elt = q == 2 ? IntPolynomial{1, 0, 2} : q == 3 ? IntPolynomial{1, 1, 3} : IntPolynomial{1, 0, 4};
        check("P = qT^2 - qT + 1", *r.p == ep, r.p->to_string());
        check("Lq = qT^2 + qT + 1", *r.lq == elq, r.lq->to_string());
        check("Ltilde matches", *r.ltilde == elt, r.ltilde->to_string());
        const IntPolynomial g = poly_gcd(*r.lq, *r.ltilde);
        check("gcd(Lq, Ltilde) = 1", g == IntPolynomial{1}, "resultant " + resultant(*r.lq, *r.ltilde).str());
        return 0;
    });

    const OrbitKind orbit_kind = elliptic ? OrbitKind::EllipticConstant : OrbitKind::P1Constant;
    const TorusOrbit orbit = torus_orbit(q, orbit_kind);
    const LinearSystem sys = stage("toroidal system", [&] { return toroidal_system(graph, orbit, opt.iterations, opt.depth); });
    const Subspace s = stage("solve", [&] { return solve_space(sys); });
    r.dim_s = s.dimension();
    stage("stability", [&] {
        const int d2 = solve_space(toroidal_system(graph, orbit, 2 * opt.iterations, 2 * opt.depth)).dimension();
        check("dim S stable at doubled truncation", d2 == r.dim_s,
              std::to_string(r.dim_s) + " at (" + std::to_string(opt.depth) + "," + std::to_string(opt.iterations) + "), " +
                  std::to_string(d2) + " at (" + std::to_string(2 * opt.depth) + "," + std::to_string(2 * opt.iterations) + ")");
        return 0;
    });

    if (!elliptic) {
        check("dim S = 0", r.dim_s == 0, std::to_string(r.dim_s));
        r.dim_toroidal = r.dim_s;
        check("toroidal dimension 0", r.dim_toroidal == 0);
        r.notes.push_back("rows 0.." + std::to_string(opt.iterations) + " pin C_0..C_" + std::to_string(s.depth) + " to zero");
        return r;
    }

    check("dim S = q+2", r.dim_s == q + 2, std::to_string(r.dim_s));

    const RecursionCoefficients rc = stage("recursion", [&] { return recursion_coefficients(graph, opt.iterations); });
    check("closed recursion step holds for k >= 2", rc.closed_step_holds);
    for (const auto& d : rc.discrepancies) r.discrepancies.push_back("recursion: " + d);

    const EigenDecomposition dec = stage("eigen", [&] { return eigen_decompose(s); });
    for (const auto& es : dec.spaces) {
        r.spectrum.emplace_back(es.eigenvalue, es.multiplicity);
        for (const auto& b : es.basis) r.eigenforms.push_back("lambda=" + to_string(es.eigenvalue) + ": " + b.to_string());
    }
    stage("spectrum", [&] {
        const Eigenspace* z = dec.find(0);
        const Eigenspace* plus = dec.find(q);
        const Eigenspace* minus = dec.find(-q);
        const bool shape = dec.spaces.size() == 3 && z && z->multiplicity == q && plus && plus->multiplicity == 1 && minus &&
                           minus->multiplicity == 1;
        check("spectrum {0^q, +q, -q}", shape, dec.characteristic_polynomial.to_string());
        if (plus) {
            const FormVector& f = plus->basis.front();
            bool head = f.at(VertexId::z(0)) == -q && f.at(VertexId::z(1)) == q && f.at(VertexId::c(0)) == -2 * q * (q + 1);
            for (int j = 1; j <= q; ++j) head = head && f.at(VertexId::t(j)) == q + 1;
            check("+q eigenform head [q+1.. | -q, q | -2q(q+1)]", head, f.to_string());
            const Rational c1 = f.at(VertexId::c(1));
            const Rational derived = rc.nu[1] * f.at(VertexId::z(1));
            check("+q eigenform C_1 follows the derived recursion", c1 == derived,
                  "C_1 = " + to_string(c1) + ", nu_1 Z_1 = " + to_string(derived));
        }
        if (z) {
            // printed eigenvalue-0 head [e_k | 0, -1 | -q, ...] tested against the t-vertex equation
            FormVector printed(graph, s.depth);
            printed.set(VertexId::t(1), 1);
            printed.set(VertexId::z(1), -1);
            printed.set(VertexId::c(0), -q);
            const Rational at_t = apply_phi_infty(printed).at(VertexId::t(1));
            if (at_t != 0) {
                r.discrepancies.push_back("eigenvalue-0 form: the printed head [e_k | 0,-1 | -q] gives (Phi f)(t_k) = " +
                                          to_string(at_t) + " != 0; computed f_k = " + z->basis.front().to_string());
            }
        }
        return 0;
    });

    const Subspace cusp = stage("cusp", [&] { return cusp_subspace(dec); });
    r.dim_cusp = cusp.dimension();
    check("cusp dimension q-1", r.dim_cusp == q - 1, std::to_string(r.dim_cusp));
    {
        bool support = true;
        for (const auto& b : cusp.basis) {
            for (const auto& v : b.coordinates()) {
                if (v.kind != VertexKind::T && b.at(v) != 0) support = false;
            }
        }
        check("cusp forms supported on t-vertices", support);
    }

    // local data at the degree-two places
    const int precision = opt.precision;
    stage("local reduction", [&] {
        const LocalExpansion e = expand_at_infinity(curve, precision);
        check("curve residual vanishes to the working precision", curve_residual(curve, e).is_zero(),
              "precision " + std::to_string(precision));
        const AFunctionBasis basis(e, 16);
        const auto orders = basis.pole_orders();
        check("pole orders skip 1", std::find(orders.begin(), orders.end(), 1) == orders.end() && orders.size() == 16);
        const auto places = degree_two_places(curve);
        check("q places of degree two", static_cast<int>(places.size()) == q, std::to_string(places.size()));
        std::vector<PhiColumn> cols;
        bool identities = true;
        for (const auto& p : places) {
            const PlaceExpansion pe = place_expansion(e, p);
            identities = identities && pe.pi.valuation() == -2 && pe.cofactor_is_unit && pe.head_matches;
            PhiColumn col = phi_p_column(curve, e, basis, places, p);
            PhiPSummary sum{p.place_id, p.ell.to_string(), {}, false};
            for (const auto& [v, k] : col.tally) sum.tally.emplace_back(v.to_string(), k);
            sum.matches = col.tally.size() == 2 && col.tally[VertexId::c(2)] == q + 1 &&
                          col.tally[VertexId::t(p.vertex_index)] == q * (q - 1) && col.total() == q * q + 1;
            r.phi_p.push_back(sum);
            cols.push_back(std::move(col));
        }
        check("x - ell = t^-2 * unit and y/(x - ell) = t^-1 + ell t + O(t^2)", identities);
        check("Phi_P(c0) = (q+1) c2 + q(q-1) t_P at every place",
              std::all_of(r.phi_p.begin(), r.phi_p.end(), [](const PhiPSummary& x) { return x.matches; }));
        const CuspElimination ce = eliminate_cusp_forms(cusp, cols);
        r.dim_cusp_after = ce.remaining.dimension();
        check("Phi_P conditions remove every cusp form", r.dim_cusp_after == 0, std::to_string(r.dim_cusp_after));
        r.notes.push_back("cusp elimination assumes the cusp space has a basis of simultaneous Hecke eigenforms");
        return 0;
    });

    stage("residues", [&] {
        bool excluded = true;
        for (int sign : {1, -1}) {
            const FormVector f = residue_form(graph, s.depth, sign);
            const Rational row0 = evaluate(sys.rows.front(), f);
            const FormVector image = apply_phi_infty(f);
            const bool eigen = image == f.truncated(s.depth - 1) * Rational(sign * (q + 1));
            r.residues.emplace_back(sign > 0 ? "r+" : "r-", to_string(row0));
            excluded = excluded && row0 == 1 + 2 * q && eigen;
        }
        check("residues r+- violate row 0 with residual 1+2q", excluded);
        // printed r- = [1.. | -1, 1 | 1, -1, 1, ...]
        FormVector printed = FormVector::from_function(graph, s.depth, [](const VertexId& v) {
            if (v == VertexId::z(0)) return Rational(-1);
            if (v.kind == VertexKind::C) return Rational(v.index % 2 ? -1 : 1);
            return Rational(1);
        });
        const Rational lhs = apply_phi_infty(printed).at(VertexId::z(0));
        if (lhs != -(q + 1) * printed.at(VertexId::z(0))) {
            r.discrepancies.push_back("r-: the printed vector [1.. | -1, 1 | 1, -1, ...] gives (Phi f)(z0) = " + to_string(lhs) +
                                      ", not " + to_string(Rational(q + 1)) +
                                      "; the parity form (z0 = 1, z1 = -1) is the eigenform");
        }
        return 0;
    });

    stage("eisenstein", [&] {
        r.eisenstein = select_eisenstein(r.spectrum, q, *r.p, *r.lq, *r.ltilde);
        check("+q survives, -q excluded", r.eisenstein->surviving && *r.eisenstein->surviving == q);
        return 0;
    });

    int surviving_mult = 0;
    for (const auto& [lam, mult] : r.spectrum) {
        if (r.eisenstein->surviving && lam == Rational(*r.eisenstein->surviving)) surviving_mult = mult;
    }
    r.dim_toroidal = surviving_mult + r.dim_cusp_after;
    check("toroidal dimension 1", r.dim_toroidal == 1, std::to_string(r.dim_toroidal));

    stage("rh", [&] {
        r.rh = rh_verdict(*r.eisenstein->surviving, q);
        const RhVerdict direct = rh_check(*r.p, q);
        check("Re(s) = 1/2 for the surviving eigenvalue", r.rh->verdict && direct.holds, r.rh->detail);
        return 0;
    });
    r.notes.push_back("E(s) and E(1-s) span the same line; the toroidal line is identified by its eigenvalue");
    return r;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
    using J = nlohmann::ordered_json;
    J j;
    j["schema"] = kReportSchema;
    j["field"] = r.field;
    j["q"] = r.q;
    j["curve"] = r.curve;
    j["params"] = {{"depth", r.options.depth}, {"iterations", r.options.iterations}, {"precision", r.options.precision}};
    j["counts"] = {{"k1", r.count_k1}, {"k2", r.count_k2}};
    if (!r.group_invariants.empty()) j["group"] = {{"invariants", r.group_invariants}};
    auto poly = [](const std::optional<IntPolynomial>& p) { return p ? J(p->to_string()) : J(nullptr); };
    j["lpolys"] = {{"P", poly(r.p)}, {"Lq", poly(r.lq)}, {"Ltilde", poly(r.ltilde)}};
    j["dims"] = {{"S", r.dim_s}, {"cusp", r.dim_cusp}, {"cusp_after_phi_p", r.dim_cusp_after}, {"toroidal", r.dim_toroidal}};
    j["spectrum"] = J::array();
    for (const auto& [lam, mult] : r.spectrum) j["spectrum"].push_back({{"lambda", rational_json(lam)}, {"mult", mult}});
    j["eigenforms"] = r.eigenforms;
    j["phi_p"] = J::array();
    for (const auto& p : r.phi_p) {
        J tally = J::object();
        for (const auto& [v, k] : p.tally) tally[v] = k;
        j["phi_p"].push_back({{"place", p.place}, {"ell", p.ell}, {"tally", tally}});
    }
    j["residues"] = J::array();
    for (const auto& [name, res] : r.residues) j["residues"].push_back({{"form", name}, {"row0_residual", res}});
    if (r.eisenstein) {
        J e = J::array();
        for (const auto& en : r.eisenstein->entries) {
            e.push_back({{"source", en.source},
                         {"lambda", as_ll(en.eigenvalue)},
                         {"survives", en.survives},
                         {"reason", en.reason}});
        }
        j["eisenstein"] = e;
    }
    if (r.rh) {
        j["rh"] = {{"lambda", as_ll(r.rh->lambda)}, {"roots", r.rh->roots}, {"verdict", r.rh->verdict}};
    } else {
        j["rh"] = {{"lambda", nullptr}, {"roots", J::array()}, {"verdict", true}};
    }
    j["checks"] = J::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["discrepancies"] = r.discrepancies;
    j["notes"] = r.notes;
    return j;
}

std::string to_markdown(const AnalysisReport& r) {
    std::ostringstream os;
    os << "# " << r.field << " (q = " << r.q << ")\n\n";
    os << "Curve: `" << r.curve << "`\n\n";
    os << "| quantity | value |\n|---|---|\n";
    os << "| points over F_q, F_q^2 | " << r.count_k1 << ", " << r.count_k2 << " |\n";
    if (r.p) os << "| P | " << r.p->to_string() << " |\n";
    if (r.lq) os << "| Lq | " << r.lq->to_string() << " |\n";
    if (r.ltilde) os << "| Ltilde | " << r.ltilde->to_string() << " |\n";
    os << "| dim S | " << r.dim_s << " |\n";
    if (!r.spectrum.empty()) {
        os << "| spectrum |";
        for (const auto& [lam, mult] : r.spectrum) os << ' ' << to_string(lam) << "^" << mult;
        os << " |\n";
    }
    os << "| cusp forms (before / after Phi_P) | " << r.dim_cusp << " / " << r.dim_cusp_after << " |\n";
    os << "| toroidal dimension | " << r.dim_toroidal << " |\n";
    if (r.rh) {
        os << "| RH | lambda = " << r.rh->lambda << ", roots";
        for (const auto& x : r.rh->roots) os << ' ' << x;
        os << ", " << (r.rh->verdict ? "holds" : "fails") << " |\n";
    }
    os << "\n## Checks\n\n";
    for (const auto& c : r.checks) {
        os << "- [" << (c.passed ? "x" : " ") << "] " << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << '\n';
    }
    if (!r.discrepancies.empty()) {
        os << "\n## Discrepancies\n\n";
        for (const auto& d : r.discrepancies) os << "- " << d << '\n';
    }
    if (!r.notes.empty()) {
        os << "\n## Notes\n\n";
        for (const auto& n : r.notes) os << "- " << n << '\n';
    }
    return os.str();
}

}  // namespace tforms
