#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "tforms/curve.hpp"
#include "tforms/errors.hpp"
#include "tforms/graph.hpp"
#include "tforms/hecke.hpp"
#include "tforms/local_expansion.hpp"
#include "tforms/local_reduction.hpp"
#include "tforms/report.hpp"

namespace py = pybind11;
using namespace tforms;

namespace {

std::string analyze(const std::string& field, int q, int depth, int iterations, int precision) {
    AnalysisOptions o;
    o.field = field;
    o.q = q;
    o.depth = depth;
    o.iterations = iterations;
    o.precision = precision;
    AnalysisReport r;
    {
        py::gil_scoped_release release;
        r = run_full_analysis(o);
    }
    return to_json(r).dump();
}

std::string lpolynomials(const std::string& field) {
    const CurveModel c = curve_for_field(field);
    nlohmann::ordered_json j;
    j["P"] = lpolynomial(c).poly.to_string();
    if (c.kind() == CurveKind::Elliptic) {
        j["Lq"] = constant_ext_quotient(c).poly.to_string();
        j["Ltilde"] = genus2_cover_quotient(c).poly.to_string();
    }
    return j.dump();
}

std::pair<int, int> point_counts(const std::string& field, int q) {
    const CurveModel c = curve_for_field(field, q);
    return {enumerate_points(c, 1).count(), enumerate_points(c, 2).count()};
}

std::string graph_json(const std::string& field, int q) {
    const QuotientGraph g = field == "p1" ? graph_p1(q) : graph_elliptic(curve_for_field(field).q());
    auto j = to_json(g);
    j["valid"] = validate_graph(g).valid;
    return j.dump();
}

int toroidal_dimension(const std::string& field, int q, int depth, int iterations) {
    py::gil_scoped_release release;
    if (field == "p1") {
        const GraphPtr g = std::make_shared<const QuotientGraph>(graph_p1(q));
        return solve_space(toroidal_system(g, torus_orbit(q, OrbitKind::P1Constant), iterations, depth)).dimension();
    }
    AnalysisOptions o;
    o.field = field;
    o.depth = depth;
    o.iterations = iterations;
    return run_full_analysis(o).dim_toroidal;
}

std::string phi_p_tally(const std::string& field, int place, int precision) {
    const CurveModel c = curve_for_field(field);
    if (c.kind() != CurveKind::Elliptic) throw DomainError("phi_p_tally needs e2, e3 or e4");
    const LocalExpansion e = expand_at_infinity(c, precision);
    const AFunctionBasis basis(e, 16);
    const auto places = degree_two_places(c);
    if (place < 1 || place > static_cast<int>(places.size())) throw DomainError("place index out of range");
    const PhiColumn col = phi_p_column(c, e, basis, places, places[static_cast<std::size_t>(place - 1)]);
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [v, k] : col.tally) j[v.to_string()] = k;
    return j.dump();
}

std::string rh(long long lambda, int q) {
    const RhResult r = rh_verdict(lambda, q);
    nlohmann::ordered_json j;
    j["lambda"] = lambda;
    j["q"] = q;
    j["roots"] = r.roots;
    j["verdict"] = r.verdict;
    j["detail"] = r.detail;
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_tforms, m) {
    m.doc() = "Toroidal automorphic forms over small function fields";

    // translators run newest first, so the base class goes first
    const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<PrecisionError>(m, "PrecisionError", base);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base);

    m.def("analyze", &analyze, py::arg("field"), py::arg("q") = 2, py::arg("depth") = 16, py::arg("iterations") = 12,
          py::arg("precision") = 32);
    m.def("lpolynomials", &lpolynomials, py::arg("field"));
    m.def("point_counts", &point_counts, py::arg("field"), py::arg("q") = 2);
    m.def("graph_json", &graph_json, py::arg("field"), py::arg("q") = 2);
    m.def("toroidal_dimension", &toroidal_dimension, py::arg("field"), py::arg("q") = 2, py::arg("depth") = 16,
          py::arg("iterations") = 12);
    m.def("phi_p_tally", &phi_p_tally, py::arg("field"), py::arg("place"), py::arg("precision") = 32);
    m.def("rh_verdict", &rh, py::arg("lam"), py::arg("q"));
}
