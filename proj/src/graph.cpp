#include "tforms/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

// Arc table of the elliptic quotient graph. "t*" stands for each of t_1..t_q.
// Each weight is an index [Gamma_v : Gamma_e]; with stabilizer orders
// |c_0| = |GL_2(F_q)|, |c_n| = (q-1)^2 q^n (n >= 1), |z_0| = q(q-1),
// |z_1| = q-1, |t_j| = q^2-1 the weights satisfy
// w(v->u) / w(u->v) = |Gamma_v| / |Gamma_u| on every edge.
const std::string kEllipticTable =
    "t* z1 q+1\n"
    "z1 t* 1\n"
    "z1 z0 1\n"
    "z0 z1 q\n"
    "z0 c1 1\n"
    "c0 c1 q+1\n"
    "c1 c0 1\n"
    "c1 z0 q-1\n"
    "c1 c2 1\n";

constexpr std::uint64_t kEllipticChecksum = 0xaa874ed1d7b7cf85ULL;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int eval_weight(const std::string& expr, int q) {
    if (expr == "q") return q;
    if (expr == "q+1") return q + 1;
    if (expr == "q-1") return q - 1;
    return std::stoi(expr);
}

}  // namespace

std::string VertexId::to_string() const {
    const char tag = kind == VertexKind::T ? 't' : kind == VertexKind::Z ? 'z' : 'c';
    return std::string(1, tag) + std::to_string(index);
}

VertexId VertexId::parse(const std::string& s) {
    if (s.size() < 2) throw DomainError("bad vertex label '" + s + "'");
    const int idx = std::stoi(s.substr(1));
    switch (s[0]) {
        case 't': return t(idx);
        case 'z': return z(idx);
        case 'c': return c(idx);
        default: throw DomainError("bad vertex label '" + s + "'");
    }
}

QuotientGraph::QuotientGraph(std::string name, int q, std::vector<VertexId> core, std::vector<Arc> arcs, int ray_start)
    : name_(std::move(name)), q_(q), core_(std::move(core)), arcs_(std::move(arcs)), ray_start_(ray_start) {
    if (q_ < 2) throw DomainError("quotient graph needs q >= 2");
    if (ray_start_ < 1) throw DomainError("ray start must be at least 1");
}

bool QuotientGraph::has_special_vertices() const {
    return std::any_of(core_.begin(), core_.end(), [](const VertexId& v) { return v.kind != VertexKind::C; });
}

bool QuotientGraph::contains(const VertexId& v) const {
    if (v.kind == VertexKind::C && v.index >= ray_start_) return true;
    return std::find(core_.begin(), core_.end(), v) != core_.end();
}

std::vector<std::pair<VertexId, int>> QuotientGraph::neighbors(const VertexId& v) const {
    if (v.kind == VertexKind::C && v.index >= ray_start_) {
        return {{VertexId::c(v.index - 1), q_}, {VertexId::c(v.index + 1), 1}};
    }
    if (!contains(v)) throw DomainError("vertex " + v.to_string() + " is not in graph " + name_);
    std::vector<std::pair<VertexId, int>> out;
    for (const auto& a : arcs_) {
        if (a.src == v) out.emplace_back(a.dst, a.weight);
    }
    return out;
}

QuotientGraph graph_p1(int q) {
    if (q < 2) throw DomainError("graph_p1 needs q >= 2");
    return {"P1/F" + std::to_string(q), q, {VertexId::c(0)}, {{VertexId::c(0), VertexId::c(1), q + 1}}, 1};
}

const std::string& elliptic_graph_table() { return kEllipticTable; }

std::uint64_t elliptic_graph_checksum() { return fnv1a(kEllipticTable); }

QuotientGraph graph_elliptic(int q) {
    if (q < 2 || q > 4) throw DomainError("graph_elliptic: q must be 2, 3 or 4, got " + std::to_string(q));
    if (elliptic_graph_checksum() != kEllipticChecksum) throw ConsistencyError("elliptic graph table checksum mismatch");

    std::vector<VertexId> core;
    for (int j = 1; j <= q; ++j) core.push_back(VertexId::t(j));
    for (int j = 0; j <= 1; ++j) core.push_back(VertexId::z(j));
    core.push_back(VertexId::c(0));
    core.push_back(VertexId::c(1));

    std::vector<Arc> arcs;
    std::istringstream in(kEllipticTable);
    std::string src, dst, w;
    while (in >> src >> dst >> w) {
        const int weight = eval_weight(w, q);
        auto expand = [q](const std::string& label) {
            std::vector<VertexId> v;
            if (label == "t*") {
                for (int j = 1; j <= q; ++j) v.push_back(VertexId::t(j));
            } else {
                v.push_back(VertexId::parse(label));
            }
            return v;
        };
        for (const auto& s : expand(src)) {
            for (const auto& d : expand(dst)) arcs.push_back({s, d, weight});
        }
    }
    return {"X" + std::to_string(q), q, std::move(core), std::move(arcs), 2};
}

ValidationReport validate_graph(const QuotientGraph& g) {
    ValidationReport r;
    auto fail = [&r](std::string msg) {
        r.valid = false;
        r.violations.push_back(std::move(msg));
    };
    const int q = g.q();
    const int r0 = g.ray_start();

    std::set<VertexId> core(g.core().begin(), g.core().end());
    if (core.size() != g.core().size()) fail("duplicate core vertex");
    for (const auto& v : g.core()) {
        if (v.kind == VertexKind::C && v.index >= r0) fail("core lists ray vertex " + v.to_string());
        if (v.kind == VertexKind::T && (v.index < 1 || v.index > q)) fail("t-index out of range: " + v.to_string());
        if (v.kind == VertexKind::Z && (v.index < 0 || v.index > 1)) fail("z-index out of range: " + v.to_string());
    }
    for (const auto& a : g.arcs()) {
        if (!core.count(a.src)) fail("arc from non-core vertex " + a.src.to_string());
        if (!g.contains(a.dst)) fail("arc to unknown vertex " + a.dst.to_string());
        if (a.dst.kind == VertexKind::C && a.dst.index > r0) {
            fail("arc " + a.src.to_string() + "->" + a.dst.to_string() + " skips the ray start");
        }
        if (a.weight <= 0) fail("non-positive weight on " + a.src.to_string() + "->" + a.dst.to_string());
    }

    // vertices to inspect: core plus a window of the ray
    std::vector<VertexId> window(g.core().begin(), g.core().end());
    for (int i = r0; i < r0 + 4; ++i) window.push_back(VertexId::c(i));

    auto weight = [&g](const VertexId& from, const VertexId& to) {
        int w = 0;
        for (const auto& [v, wt] : g.neighbors(from)) {
            if (v == to) w += wt;
        }
        return w;
    };

    for (const auto& v : window) {
        if (!g.contains(v)) continue;
        int sum = 0;
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)u;
            sum += w;
        }
        if (sum != q + 1) {
            fail("out-weight sum at " + v.to_string() + " is " + std::to_string(sum) + ", expected " +
                 std::to_string(q + 1));
        }
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            if (!g.contains(u)) continue;
            if (weight(u, v) == 0) fail("edge " + v.to_string() + "->" + u.to_string() + " has no reverse arc");
        }
    }

    // tail periodicity: the ray weights repeat and the first ray vertex points back into the core
    for (int i = r0; i < r0 + 4; ++i) {
        if (weight(VertexId::c(i), VertexId::c(i - 1)) != q || weight(VertexId::c(i), VertexId::c(i + 1)) != 1) {
            fail("ray rule broken at c" + std::to_string(i));
        }
    }

    // connectivity of core plus c_r
    std::set<VertexId> seen;
    std::queue<VertexId> todo;
    if (!g.core().empty()) {
        todo.push(g.core().front());
        seen.insert(g.core().front());
    }
    while (!todo.empty()) {
        const VertexId v = todo.front();
        todo.pop();
        if (v.kind == VertexKind::C && v.index >= r0) continue;
        if (!g.contains(v)) continue;
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            if (seen.insert(u).second) todo.push(u);
        }
    }
    for (const auto& v : g.core()) {
        if (!seen.count(v)) fail("vertex " + v.to_string() + " is disconnected");
    }
    if (!seen.count(VertexId::c(r0))) fail("ray start c" + std::to_string(r0) + " is unreachable from the core");
    return r;
}

int TorusOrbit::total() const {
    int t = 0;
    for (const auto& [v, m] : entries) {
        (void)v;
        t += m;
    }
    return t;
}

TorusOrbit torus_orbit(int q, OrbitKind kind) {
    TorusOrbit o;
    o.entries.emplace_back(VertexId::c(0), 1);
    if (kind == OrbitKind::EllipticConstant) {
        if (q < 2 || q > 4) throw DomainError("elliptic torus orbit needs q in {2,3,4}");
        for (int j = 1; j <= q; ++j) o.entries.emplace_back(VertexId::t(j), 2);
    }
    return o;
}

std::string to_dot(const QuotientGraph& g, int ray_vertices) {
    std::ostringstream os;
    os << "digraph \"" << g.name() << "\" {\n";
    os << "  rankdir=LR;\n";
    std::vector<VertexId> verts(g.core().begin(), g.core().end());
    for (int i = 0; i < ray_vertices; ++i) verts.push_back(VertexId::c(g.ray_start() + i));
    for (const auto& v : verts) os << "  " << v.to_string() << ";\n";
    const std::set<VertexId> shown(verts.begin(), verts.end());
    for (const auto& v : verts) {
        for (const auto& [u, w] : g.neighbors(v)) {
            if (!shown.count(u)) continue;
            os << "  " << v.to_string() << " -> " << u.to_string() << " [label=\"" << w << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

nlohmann::ordered_json to_json(const QuotientGraph& g) {
    nlohmann::ordered_json j;
    j["q"] = g.q();
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : g.core()) j["vertices"].push_back(v.to_string());
    j["arcs"] = nlohmann::ordered_json::array();
    for (const auto& a : g.arcs()) {
        j["arcs"].push_back({{"src", a.src.to_string()}, {"dst", a.dst.to_string()}, {"w", a.weight}});
    }
    j["ray"] = {{"start", g.ray_start()}};
    return j;
}

}  // namespace tforms
