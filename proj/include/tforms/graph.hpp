#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tforms {

enum class VertexKind { T, Z, C };

/// Vertex of a quotient graph: t_1..t_q, z_0, z_1 or the cusp ray c_0, c_1, ...
struct VertexId {
    VertexKind kind = VertexKind::C;
    int index = 0;

    static VertexId t(int i) { return {VertexKind::T, i}; }
    static VertexId z(int i) { return {VertexKind::Z, i}; }
    static VertexId c(int i) { return {VertexKind::C, i}; }

    /// "t1", "z0", "c3".
    std::string to_string() const;
    static VertexId parse(const std::string& s);

    auto operator<=>(const VertexId&) const = default;
};

struct Arc {
    VertexId src;
    VertexId dst;
    int weight = 0;
};

/// Quotient graph with Hecke weights: a finite core of weighted arcs plus the
/// cusp ray c_r, c_{r+1}, ... on which c_i has weight q toward c_{i-1} and
/// weight 1 toward c_{i+1}. Weights are stored per direction.
class QuotientGraph {
public:
    QuotientGraph(std::string name, int q, std::vector<VertexId> core, std::vector<Arc> arcs, int ray_start);

    const std::string& name() const noexcept { return name_; }
    int q() const noexcept { return q_; }
    const std::vector<VertexId>& core() const noexcept { return core_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    int ray_start() const noexcept { return ray_start_; }
    bool has_special_vertices() const;

    /// Outgoing weighted neighbours of v, with the tail rule on the ray.
    std::vector<std::pair<VertexId, int>> neighbors(const VertexId& v) const;
    bool contains(const VertexId& v) const;

private:
    std::string name_;
    int q_;
    std::vector<VertexId> core_;
    std::vector<Arc> arcs_;
    int ray_start_;
};

/// Cusp ray of the rational function field: c_0 -(q+1)-> c_1, ray from c_1.
QuotientGraph graph_p1(int q);
/// The class-number-one elliptic graph for q in {2,3,4}: core {t_j, z_0, z_1, c_0, c_1}, ray from c_2.
QuotientGraph graph_elliptic(int q);

/// Literal arc table behind graph_elliptic, weights written as affine expressions in q.
const std::string& elliptic_graph_table();
/// FNV-1a digest of elliptic_graph_table().
std::uint64_t elliptic_graph_checksum();

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Out-weight sums q+1, edge symmetry, connectivity and ray periodicity.
/// Violations are reported, never thrown.
ValidationReport validate_graph(const QuotientGraph& g);

enum class OrbitKind { P1Constant, EllipticConstant };

/// Image of the nonsplit torus of the quadratic constant extension, with multiplicities.
struct TorusOrbit {
    std::vector<std::pair<VertexId, int>> entries;
    int total() const;
};

TorusOrbit torus_orbit(int q, OrbitKind kind);

/// DOT text of the core plus the first `ray_vertices` ray vertices; arc labels are weights.
std::string to_dot(const QuotientGraph& g, int ray_vertices = 6);
/// {q, vertices:[...], arcs:[{src,dst,w}], ray:{start}}.
nlohmann::ordered_json to_json(const QuotientGraph& g);

}  // namespace tforms
