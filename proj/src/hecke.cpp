#include "tforms/hecke.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

std::size_t coordinate_count(const QuotientGraph& g, int depth) {
    return g.has_special_vertices() ? static_cast<std::size_t>(g.q() + 2 + depth + 1) : static_cast<std::size_t>(depth + 1);
}

std::size_t coordinate_index(const QuotientGraph& g, const VertexId& v) {
    const int q = g.q();
    const bool special = g.has_special_vertices();
    switch (v.kind) {
        case VertexKind::T:
            if (!special || v.index < 1 || v.index > q) break;
            return static_cast<std::size_t>(v.index - 1);
        case VertexKind::Z:
            if (!special || v.index < 0 || v.index > 1) break;
            return static_cast<std::size_t>(q + v.index);
        case VertexKind::C:
            if (v.index < 0) break;
            return static_cast<std::size_t>((special ? q + 2 : 0) + v.index);
    }
    throw DomainError("vertex " + v.to_string() + " is not a coordinate of " + g.name());
}

// Phi on any value type that supports +, * by int and has a zero.
template <class V>
std::vector<V> apply_phi(const QuotientGraph& g, int depth, const std::vector<V>& in, const V& zero) {
    if (depth < 2) throw DomainError("apply_phi_infty: depth " + std::to_string(depth) + " is exhausted");
    const auto coords = form_coordinates(g, depth - 1);
    std::vector<V> out;
    out.reserve(coords.size());
    for (const auto& v : coords) {
        V acc = zero;
        for (const auto& [w, weight] : g.neighbors(v)) acc = acc + in[coordinate_index(g, w)] * weight;
        out.push_back(std::move(acc));
    }
    return out;
}

// A linear form over the coordinates of a fixed depth.
struct LinearForm {
    std::vector<Rational> c;
    LinearForm operator+(const LinearForm& o) const {
        LinearForm r{c};
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    LinearForm operator*(int k) const {
        LinearForm r{c};
        for (auto& x : r.c) x *= k;
        return r;
    }
};

int max_c_index(const QuotientGraph& g, const std::vector<ConstraintRow>& rows) {
    const std::size_t offset = g.has_special_vertices() ? static_cast<std::size_t>(g.q() + 2) : 0;
    int best = 0;
    for (const auto& r : rows) {
        for (std::size_t i = offset; i < r.coefficients.size(); ++i) {
            if (r.coefficients[i] != 0) best = std::max(best, static_cast<int>(i - offset));
        }
    }
    return best;
}

// Scales v to a primitive integer vector whose first nonzero entry is positive.
std::vector<Rational> normalize(std::vector<Rational> v) {
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, abs(boost::multiprecision::numerator(x * Rational(den))));
    if (g == 0) return v;
    Rational scale = Rational(den) / Rational(g);
    const auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (*first < 0) scale = -scale;
    for (auto& x : v) x *= scale;
    return v;
}

}  // namespace

std::vector<VertexId> form_coordinates(const QuotientGraph& g, int depth) {
    if (depth < 0) throw DomainError("negative depth");
    std::vector<VertexId> out;
    if (g.has_special_vertices()) {
        for (int j = 1; j <= g.q(); ++j) out.push_back(VertexId::t(j));
        out.push_back(VertexId::z(0));
        out.push_back(VertexId::z(1));
    }
    for (int i = 0; i <= depth; ++i) out.push_back(VertexId::c(i));
    return out;
}

FormVector::FormVector(GraphPtr graph, int depth)
    : FormVector(graph, depth, std::vector<Rational>(coordinate_count(*graph, depth), Rational(0))) {}

FormVector::FormVector(GraphPtr graph, int depth, std::vector<Rational> values)
    : graph_(std::move(graph)), depth_(depth), values_(std::move(values)) {
    if (!graph_) throw DomainError("FormVector needs a graph");
    coords_ = form_coordinates(*graph_, depth_);
    if (values_.size() != coords_.size()) {
        throw DomainError("FormVector: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(coords_.size()) + " coordinates");
    }
}

FormVector FormVector::indicator(GraphPtr graph, int depth, const VertexId& v) {
    FormVector f(std::move(graph), depth);
    f.set(v, 1);
    return f;
}

FormVector FormVector::from_function(GraphPtr graph, int depth, const std::function<Rational(const VertexId&)>& fn) {
    FormVector f(std::move(graph), depth);
    for (std::size_t i = 0; i < f.coords_.size(); ++i) f.values_[i] = fn(f.coords_[i]);
    return f;
}

std::size_t FormVector::index_of(const VertexId& v) const {
    const std::size_t i = coordinate_index(*graph_, v);
    if (i >= values_.size()) throw DomainError("vertex " + v.to_string() + " lies beyond depth " + std::to_string(depth_));
    return i;
}

bool FormVector::has(const VertexId& v) const {
    return std::find(coords_.begin(), coords_.end(), v) != coords_.end();
}

const Rational& FormVector::at(const VertexId& v) const { return values_[index_of(v)]; }

void FormVector::set(const VertexId& v, Rational value) { values_[index_of(v)] = std::move(value); }

FormVector FormVector::truncated(int depth) const {
    if (depth > depth_ || depth < 0) throw DomainError("cannot truncate depth " + std::to_string(depth_) + " to " + std::to_string(depth));
    std::vector<Rational> v(values_.begin(), values_.begin() + static_cast<long>(coordinate_count(*graph_, depth)));
    return {graph_, depth, std::move(v)};
}

bool FormVector::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return x == 0; });
}

FormVector FormVector::operator+(const FormVector& o) const {
    if (graph_ != o.graph_ || depth_ != o.depth_) throw DomainError("FormVector sum over different coordinates");
    FormVector r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
    return r;
}

FormVector FormVector::operator-(const FormVector& o) const { return *this + o * Rational(-1); }

FormVector FormVector::operator*(const Rational& c) const {
    FormVector r = *this;
    for (auto& x : r.values_) x *= c;
    return r;
}

bool FormVector::operator==(const FormVector& o) const {
    return graph_ == o.graph_ && depth_ == o.depth_ && values_ == o.values_;
}

std::string FormVector::to_string() const {
    std::ostringstream os;
    os << '[';
    std::size_t i = 0;
    auto emit = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) os << (k ? "," : "") << tforms::to_string(values_[i]);
    };
    if (graph_->has_special_vertices()) {
        emit(static_cast<std::size_t>(graph_->q()));
        os << " | ";
        emit(2);
        os << " | ";
    }
    emit(values_.size() - i);
    os << ']';
    return os.str();
}

FormVector apply_phi_infty(const FormVector& f) {
    const auto out = apply_phi(*f.graph(), f.depth(), f.values(), Rational(0));
    return {f.graph(), f.depth() - 1, out};
}

Rational evaluate(const ConstraintRow& row, const FormVector& f) {
    Rational acc = 0;
    const auto& v = f.values();
    for (std::size_t i = 0; i < row.coefficients.size(); ++i) {
        if (row.coefficients[i] == 0) continue;
        if (i >= v.size()) throw DomainError("row '" + row.provenance + "' reaches beyond the form's depth");
        acc += row.coefficients[i] * v[i];
    }
    return acc;
}

LinearSystem toroidal_system(GraphPtr graph, const TorusOrbit& orbit, int iterations, int depth) {
    const QuotientGraph& g = *graph;
    if (iterations < 0) throw DomainError("negative iteration count");
    if (iterations > depth - g.ray_start()) {
        throw DomainError("toroidal_system: K = " + std::to_string(iterations) + " exceeds N - r = " +
                          std::to_string(depth - g.ray_start()));
    }
    const std::size_t n = coordinate_count(g, depth);
    // identity form: the value at coordinate i is the i-th coordinate function
    std::vector<LinearForm> cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        cur[i].c.assign(n, Rational(0));
        cur[i].c[i] = 1;
    }
    const LinearForm zero{std::vector<Rational>(n, Rational(0))};

    LinearSystem sys{graph, depth, {}};
    int d = depth;
    for (int k = 0; k <= iterations; ++k) {
        if (k > 0) {
            cur = apply_phi(g, d, cur, zero);
            --d;
        }
        LinearForm row = zero;
        for (const auto& [v, m] : orbit.entries) row = row + cur[coordinate_index(g, v)] * m;
        sys.rows.push_back({std::move(row.c), "Phi^" + std::to_string(k) + " orbit sum"});
    }
    return sys;
}

Subspace solve_space(const LinearSystem& sys) { return solve_space(sys, max_c_index(*sys.graph, sys.rows)); }

Subspace solve_space(const LinearSystem& sys, int depth) {
    const QuotientGraph& g = *sys.graph;
    const std::size_t n = coordinate_count(g, depth);
    RationalMatrix m;
    for (const auto& r : sys.rows) {
        for (std::size_t i = n; i < r.coefficients.size(); ++i) {
            if (r.coefficients[i] != 0) throw DomainError("solve_space: row '" + r.provenance + "' reaches beyond depth " + std::to_string(depth));
        }
        std::vector<Rational> row(r.coefficients.begin(), r.coefficients.begin() + static_cast<long>(std::min(n, r.coefficients.size())));
        row.resize(n, Rational(0));
        m.push_back(std::move(row));
    }
    Subspace s{sys.graph, depth, {}};
    for (auto& v : nullspace(m, n)) s.basis.emplace_back(sys.graph, depth, std::move(v));
    return s;
}

RecursionCoefficients recursion_coefficients(GraphPtr graph, int iterations) {
    const QuotientGraph& g = *graph;
    if (!g.has_special_vertices()) throw DomainError("recursion_coefficients needs an elliptic graph");
    const int q = g.q();
    const int depth = iterations + g.ray_start();
    const LinearSystem sys = toroidal_system(graph, torus_orbit(q, OrbitKind::EllipticConstant), iterations, depth);
    const std::size_t base = static_cast<std::size_t>(q + 2);

    // C_k as a form in (T_1..T_q, Z_0, Z_1)
    std::vector<std::vector<Rational>> ck;
    for (int k = 0; k <= iterations; ++k) {
        const auto& row = sys.rows[static_cast<std::size_t>(k)].coefficients;
        const Rational lead = row[base + static_cast<std::size_t>(k)];
        if (lead == 0) throw ConsistencyError("row " + std::to_string(k) + " does not pin C_" + std::to_string(k));
        for (std::size_t i = base + static_cast<std::size_t>(k) + 1; i < row.size(); ++i) {
            if (row[i] != 0) throw ConsistencyError("row " + std::to_string(k) + " reaches past C_" + std::to_string(k));
        }
        std::vector<Rational> form(row.begin(), row.begin() + static_cast<long>(base));
        for (int j = 0; j < k; ++j) {
            const Rational cj = row[base + static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < base; ++i) form[i] += cj * ck[static_cast<std::size_t>(j)][i];
        }
        for (auto& x : form) x = -x / lead;
        ck.push_back(std::move(form));
    }

    RecursionCoefficients rc;
    rc.depth = iterations;
    const auto qz = static_cast<std::size_t>(q);
    for (int k = 0; k <= iterations; ++k) {
        const auto& f = ck[static_cast<std::size_t>(k)];
        const std::string name = "C_" + std::to_string(k);
        for (std::size_t j = 1; j < qz; ++j) {
            if (f[j] != f[0]) throw ConsistencyError(name + " is not symmetric in the t-vertices");
        }
        const Rational tau = f[0], z0 = f[qz], z1 = f[qz + 1];
        if (k % 2 == 0) {
            if (z1 != 0) throw ConsistencyError(name + " leaves span{Z0, tau}");
            rc.lambda.push_back(z0);
            rc.mu.push_back(tau);
            rc.nu.push_back(0);
        } else {
            if (z0 != 0 || tau != 0) throw ConsistencyError(name + " leaves span{Z1}");
            rc.lambda.push_back(0);
            rc.mu.push_back(0);
            rc.nu.push_back(z1);
        }
    }

    auto mismatch = [&rc](const std::string& what, const Rational& derived, const Rational& printed) {
        if (derived != printed) {
            rc.discrepancies.push_back(what + ": derived " + to_string(derived) + ", reference " + to_string(printed));
        }
    };
    const Rational Q = q;
    if (iterations >= 0) {
        mismatch("C_0 coefficient of Z0", rc.lambda[0], 0);
        mismatch("C_0 coefficient of tau", rc.mu[0], -2);
    }
    if (iterations >= 1) mismatch("C_1 coefficient of Z1", rc.nu[1], -2);
    if (iterations >= 2) {
        mismatch("C_2 coefficient of Z0", rc.lambda[2], -(Q + 1));
        mismatch("C_2 coefficient of tau", rc.mu[2], 0);
    }

    rc.closed_step_holds = true;
    for (int k = 1; k + 1 <= iterations; ++k) {
        const auto K = static_cast<std::size_t>(k);
        bool ok = true;
        if (k % 2 == 0) {
            const Rational nu_next = rc.lambda[K] * rc.nu[1] + rc.lambda[K] * Q + rc.mu[K] * Q * (Q + 1) - Q * rc.nu[K - 1];
            ok = nu_next == rc.nu[K + 1];
        } else {
            const Rational lambda_next = rc.nu[K] - Q * rc.lambda[K - 1];
            const Rational mu_next = rc.nu[K] - Q * rc.mu[K - 1];
            ok = lambda_next == rc.lambda[K + 1] && mu_next == rc.mu[K + 1];
        }
        if (ok) continue;
        if (k >= 2) rc.closed_step_holds = false;
        rc.discrepancies.push_back("closed step fails at k = " + std::to_string(k));
    }
    return rc;
}

int EigenDecomposition::dimension() const {
    int d = 0;
    for (const auto& s : spaces) d += s.multiplicity;
    return d;
}

const Eigenspace* EigenDecomposition::find(const Rational& eigenvalue) const {
    for (const auto& s : spaces) {
        if (s.eigenvalue == eigenvalue) return &s;
    }
    return nullptr;
}

EigenDecomposition eigen_decompose(const Subspace& s) {
    const std::size_t n = s.basis.size();
    if (n == 0) return {};
    const int depth = s.depth;

    // leading coordinate of each echelon basis vector
    std::vector<std::size_t> lead;
    for (const auto& b : s.basis) {
        const auto& v = b.values();
        const auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        lead.push_back(static_cast<std::size_t>(it - v.begin()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational expect = i == j ? Rational(1) : Rational(0);
            if (s.basis[j].values()[lead[i]] != expect) throw DomainError("eigen_decompose: basis is not in reduced echelon form");
        }
    }

    EigenDecomposition dec;
    dec.induced.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        const FormVector image = apply_phi_infty(s.basis[j]);
        FormVector recon(s.graph, depth - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational c = image.values()[lead[i]];
            dec.induced[i][j] = c;
            recon = recon + s.basis[i].truncated(depth - 1) * c;
        }
        if (!(recon == image)) throw ConsistencyError("eigen_decompose: subspace is not Phi-stable (basis vector " + std::to_string(j) + ")");
    }

    dec.characteristic_polynomial = characteristic_polynomial(dec.induced);
    IntPolynomial rest;
    const auto roots = integer_roots(dec.characteristic_polynomial, &rest);
    if (rest.degree() > 0) throw ConsistencyError("eigen_decompose: non-integral spectrum, leftover factor " + rest.to_string());

    for (const auto& [root, mult] : roots) {
        const Rational lam(root);
        RationalMatrix shifted = dec.induced;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= lam;
        const auto kernel = nullspace(shifted, n);
        if (static_cast<int>(kernel.size()) != mult) {
            throw ConsistencyError("eigen_decompose: eigenvalue " + to_string(lam) + " has algebraic multiplicity " +
                                   std::to_string(mult) + " but geometric multiplicity " + std::to_string(kernel.size()));
        }
        Eigenspace es{lam, {}, mult};
        for (const auto& coeffs : kernel) {
            FormVector v(s.graph, depth);
            for (std::size_t i = 0; i < n; ++i) v = v + s.basis[i] * coeffs[i];
            v = FormVector(s.graph, depth, normalize(v.values()));
            const FormVector residual = apply_phi_infty(v) - v.truncated(depth - 1) * lam;
            if (!residual.is_zero()) throw ConsistencyError("eigen_decompose: nonzero residual for eigenvalue " + to_string(lam));
            es.basis.push_back(std::move(v));
        }
        dec.spaces.push_back(std::move(es));
    }
    return dec;
}

Subspace cusp_subspace(const EigenDecomposition& dec) {
    const Eigenspace* zero = dec.find(0);
    if (!zero || zero->basis.empty()) throw ConsistencyError("cusp_subspace: no eigenvalue-0 space");
    const GraphPtr graph = zero->basis.front().graph();
    const QuotientGraph& g = *graph;
    const int q = g.q();
    const int depth = zero->basis.front().depth();
    const std::size_t m = zero->basis.size();
    const std::size_t n = zero->basis.front().values().size();

    // combinations sum a_i b_i with vanishing C_k for k > ray start
    RationalMatrix rows;
    for (int k = g.ray_start() + 1; k <= depth; ++k) {
        std::vector<Rational> row;
        for (const auto& b : zero->basis) row.push_back(b.at(VertexId::c(k)));
        rows.push_back(std::move(row));
    }
    std::vector<FormVector> cusp;
    for (const auto& a : nullspace(rows, m)) {
        FormVector v(graph, depth);
        for (std::size_t i = 0; i < m; ++i) v = v + zero->basis[i] * a[i];
        for (const auto& vert : v.coordinates()) {
            if (vert.kind != VertexKind::T && v.at(vert) != 0) {
                throw ConsistencyError("cusp_subspace: cusp form " + v.to_string() + " is not supported on the t-vertices");
            }
        }
        cusp.push_back(std::move(v));
    }
    if (static_cast<int>(cusp.size()) != q - 1) {
        throw ConsistencyError("cusp_subspace: dimension " + std::to_string(cusp.size()) + ", expected " + std::to_string(q - 1));
    }

    // rewrite in the basis f_k - f_1, checking it spans the same space
    Subspace out{graph, depth, {}};
    for (int k = 2; k <= q; ++k) {
        FormVector d(graph, depth);
        d.set(VertexId::t(k), 1);
        d.set(VertexId::t(1), -1);
        out.basis.push_back(std::move(d));
    }
    RationalMatrix both;
    for (const auto& v : cusp) both.push_back(v.values());
    for (const auto& v : out.basis) both.push_back(v.values());
    if (rank(both, n) != cusp.size()) throw ConsistencyError("cusp_subspace: cusp forms are not spanned by f_k - f_1");
    return out;
}

int vertex_parity(const QuotientGraph& g, const VertexId& v) {
    if (v.kind == VertexKind::C && v.index >= g.ray_start()) return v.index % 2;
    std::map<VertexId, int> dist{{VertexId::c(0), 0}};
    std::queue<VertexId> todo;
    todo.push(VertexId::c(0));
    while (!todo.empty()) {
        const VertexId u = todo.front();
        todo.pop();
        if (u == v) return dist[u] % 2;
        if (u.kind == VertexKind::C && u.index >= g.ray_start()) continue;
        for (const auto& [w, wt] : g.neighbors(u)) {
            (void)wt;
            if (dist.emplace(w, dist[u] + 1).second) todo.push(w);
        }
    }
    throw DomainError("vertex " + v.to_string() + " is not reachable from c0");
}

FormVector residue_form(GraphPtr graph, int depth, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("residue_form: sign must be +1 or -1");
    const QuotientGraph& g = *graph;
    return FormVector::from_function(std::move(graph), depth, [&g, sign](const VertexId& v) {
        return Rational(sign == 1 || vertex_parity(g, v) == 0 ? 1 : -1);
    });
}

}  // namespace tforms
