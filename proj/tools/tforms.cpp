#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tforms/curve.hpp"
#include "tforms/errors.hpp"
#include "tforms/graph.hpp"
#include "tforms/hecke.hpp"
#include "tforms/local_expansion.hpp"
#include "tforms/local_reduction.hpp"
#include "tforms/report.hpp"

using namespace tforms;
using Json = nlohmann::ordered_json;

namespace {

// --precision wins over TFORMS_PRECISION, which wins over the default
int resolve_precision(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("TFORMS_PRECISION")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("TFORMS_PRECISION must be a positive integer, got '") + env + "'");
    }
    return LaurentSeries::kDefaultPrecision;
}

int field_q(const std::string& field, int q) { return curve_for_field(field, q).q(); }

GraphPtr graph_for(const std::string& field, int q) {
    if (field == "p1") return std::make_shared<const QuotientGraph>(graph_p1(q));
    return std::make_shared<const QuotientGraph>(graph_elliptic(field_q(field, q)));
}

Json rational_json(const Rational& r) {
    if (is_integer(r)) return boost::multiprecision::numerator(r).convert_to<long long>();
    return to_string(r);
}

Json form_json(const FormVector& f) {
    Json j = Json::object();
    for (const auto& v : f.coordinates()) j[v.to_string()] = rational_json(f.at(v));
    return j;
}

int cmd_analyze(const AnalysisOptions& opt, const std::string& format) {
    const AnalysisReport r = run_full_analysis(opt);
    if (format == "md") {
        std::cout << to_markdown(r);
    } else {
        std::cout << to_json(r).dump(2) << '\n';
    }
    return r.all_passed() ? 0 : 1;
}

int cmd_zeta(const std::string& field, int q, const std::string& cover) {
    const CurveModel c = curve_for_field(field, q);
    Json j;
    j["field"] = field;
    j["q"] = c.q();
    j["counts"] = {{"k1", enumerate_points(c, 1).count()}, {"k2", enumerate_points(c, 2).count()}};
    const LPolynomial p = lpolynomial(c);
    j["P"] = p.poly.to_string();
    if (c.kind() != CurveKind::Elliptic) throw DomainError("zeta quotients are only defined here for e2, e3, e4");
    const LPolynomial quotient = cover == "genus2" ? genus2_cover_quotient(c) : constant_ext_quotient(c);
    j["cover"] = cover;
    j["quotient"] = quotient.poly.to_string();
    if (cover == "genus2") {
        const CurveModel dc = CurveModel::double_cover(c);
        j["cover_counts"] = {{"k1", enumerate_points(dc, 1).count()}, {"k2", enumerate_points(dc, 2).count()}};
        j["cover_P"] = lpolynomial(dc).poly.to_string();
        const IntPolynomial lq = constant_ext_quotient(c).poly;
        j["gcd_with_Lq"] = poly_gcd(lq, quotient.poly).to_string();
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_graph(const std::string& field, int q, bool dot) {
    const GraphPtr g = graph_for(field, q);
    const ValidationReport v = validate_graph(*g);
    if (dot) {
        std::cout << to_dot(*g, 6);
    } else {
        Json j = to_json(*g);
        j["valid"] = v.valid;
        j["violations"] = v.violations;
        if (g->has_special_vertices()) {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(elliptic_graph_checksum()));
            j["checksum"] = buf;
        }
        std::cout << j.dump(2) << '\n';
    }
    return v.valid ? 0 : 1;
}

int cmd_reduce(const std::string& field, int place_index, int precision, const std::string& format) {
    const CurveModel c = curve_for_field(field);
    if (c.kind() != CurveKind::Elliptic) throw DomainError("reduce needs an elliptic field (e2, e3, e4)");
    const LocalExpansion e = expand_at_infinity(c, precision);
    const AFunctionBasis basis(e, 16);
    const auto places = degree_two_places(c);
    if (place_index < 1 || place_index > static_cast<int>(places.size())) {
        throw DomainError("place index must lie in 1.." + std::to_string(places.size()));
    }
    const DegreeTwoPlace& place = places[static_cast<std::size_t>(place_index - 1)];
    const PhiColumn col = phi_p_column(c, e, basis, places, place);
    const int q = c.q();
    const bool ok = col.total() == q * q + 1 && col.tally.size() == 2 && col.tally.at(VertexId::c(2)) == q + 1 &&
                    col.tally.at(VertexId::t(place.vertex_index)) == q * (q - 1);

    if (format == "json") {
        Json j;
        j["field"] = field;
        j["place"] = place.place_id;
        j["ell"] = place.ell.to_string();
        j["reductions"] = Json::array();
        for (std::size_t i = 0; i < col.cosets.size(); ++i) {
            Json chain = Json::array();
            for (const auto& mv : col.reductions[i].chain) {
                chain.push_back({{"side", mv.side == ReductionMove::Side::Left ? "left" : "right"}, {"move", mv.note}});
            }
            j["reductions"].push_back(
                {{"coset", col.cosets[i].provenance()}, {"vertex", col.reductions[i].vertex.to_string()}, {"chain", chain}});
        }
        Json tally = Json::object();
        for (const auto& [v, k] : col.tally) tally[v.to_string()] = k;
        j["tally"] = tally;
        j["total"] = col.total();
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << c.equation() << ", place " << place.place_id << " at x = " << place.ell.to_string() << '\n';
        for (std::size_t i = 0; i < col.cosets.size(); ++i) {
            std::cout << col.cosets[i].provenance() << " -> " << col.reductions[i].vertex.to_string() << '\n';
            for (const auto& mv : col.reductions[i].chain) {
                std::cout << "    " << (mv.side == ReductionMove::Side::Left ? "left " : "right") << "  " << mv.note << '\n';
            }
        }
        std::cout << "tally:";
        for (const auto& [v, k] : col.tally) std::cout << ' ' << k << '*' << v.to_string();
        std::cout << " (total " << col.total() << ")\n";
    }
    return ok ? 0 : 1;
}

int cmd_toroidal(const std::string& field, int q, int depth, int iterations) {
    const GraphPtr g = graph_for(field, q);
    const OrbitKind kind = g->has_special_vertices() ? OrbitKind::EllipticConstant : OrbitKind::P1Constant;
    const Subspace s = solve_space(toroidal_system(g, torus_orbit(g->q(), kind), iterations, depth));
    Json j;
    j["field"] = field;
    j["q"] = g->q();
    j["dimension"] = s.dimension();
    j["basis"] = Json::array();
    for (const auto& b : s.basis) j["basis"].push_back(form_json(b));
    j["spectrum"] = Json::array();
    j["cusp_dimension"] = 0;
    if (s.dimension() > 0) {
        const EigenDecomposition dec = eigen_decompose(s);
        for (const auto& es : dec.spaces) j["spectrum"].push_back({{"lambda", rational_json(es.eigenvalue)}, {"mult", es.multiplicity}});
        if (g->has_special_vertices()) j["cusp_dimension"] = cusp_subspace(dec).dimension();
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toroidal automorphic forms over small function fields"};
    app.require_subcommand(1);

    std::string field = "e2";
    int q = 2;
    const auto field_check = CLI::IsMember({"p1", "e2", "e3", "e4"});

    AnalysisOptions opt;
    std::string format = "json";
    int precision_flag = 0;
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline for one field");
    analyze->add_option("--field", field, "p1, e2, e3 or e4")->check(field_check);
    analyze->add_option("--q", q, "Constant field size for p1")->check(CLI::Range(2, 64));
    analyze->add_option("--depth", opt.depth, "Truncation depth N")->check(CLI::PositiveNumber);
    analyze->add_option("--iterations", opt.iterations, "Number of Phi iterations K")->check(CLI::NonNegativeNumber);
    analyze->add_option("--precision", precision_flag, "Laurent series precision")->check(CLI::PositiveNumber);
    analyze->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));

    std::string cover = "constant";
    auto* zeta = app.add_subcommand("zeta", "Point counts and zeta quotients");
    zeta->add_option("--field", field)->check(field_check);
    zeta->add_option("--q", q)->check(CLI::Range(2, 64));
    zeta->add_option("--cover", cover, "constant or genus2")->check(CLI::IsMember({"constant", "genus2"}));

    bool dot = false;
    auto* graph = app.add_subcommand("graph", "Quotient graph as JSON or DOT");
    graph->add_option("--field", field)->check(field_check);
    graph->add_option("--q", q)->check(CLI::Range(2, 64));
    graph->add_flag("--dot", dot, "Emit DOT instead of JSON");

    int place = 1;
    std::string reduce_format = "text";
    auto* reduce = app.add_subcommand("reduce", "Reduce the Phi_P cosets at a degree-two place");
    reduce->add_option("--field", field)->check(CLI::IsMember({"e2", "e3", "e4"}));
    reduce->add_option("--place", place, "Place index 1..q");
    reduce->add_option("--precision", precision_flag)->check(CLI::PositiveNumber);
    reduce->add_option("--format", reduce_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    int tdepth = 16, titer = 12;
    auto* toroidal = app.add_subcommand("toroidal", "Solve the toroidal system and decompose it");
    toroidal->add_option("--field", field)->check(field_check);
    toroidal->add_option("--q", q)->check(CLI::Range(2, 64));
    toroidal->add_option("--depth", tdepth)->check(CLI::PositiveNumber);
    toroidal->add_option("--iterations", titer)->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            opt.field = field;
            opt.q = q;
            opt.precision = resolve_precision(precision_flag);
            return cmd_analyze(opt, format);
        }
        if (*zeta) return cmd_zeta(field, q, cover);
        if (*graph) return cmd_graph(field, q, dot);
        if (*reduce) return cmd_reduce(field, place, resolve_precision(precision_flag), reduce_format);
        if (*toroidal) return cmd_toroidal(field, q, tdepth, titer);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
