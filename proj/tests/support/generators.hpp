#pragma once

// Random inputs for property tests. Everything is driven by an explicit
// std::mt19937_64 so failures reproduce from the seed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "causalnet/diagram.hpp"
#include "causalnet/eval.hpp"
#include "causalnet/moves.hpp"
#include "causalnet/network.hpp"
#include "causalnet/smc.hpp"

namespace causalnet::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
    return std::bernoulli_distribution(p)(rng);
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[uniform(rng, 0, v.size() - 1)];
}

struct DagOptions {
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 8;
    double edge_probability = 0.35;
    double parallel_probability = 0.15;
    std::size_t max_edges = 14;
};

/// Vertices are placed along a hidden random order; edges only go forward
/// in it, so the result is acyclic by construction.
inline CausalNetwork random_dag(Rng& rng, const DagOptions& opt = {}) {
    const std::size_t n = uniform(rng, opt.min_vertices, opt.max_vertices);
    std::vector<VertexId> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<VertexId> order = vs;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (es.size() >= opt.max_edges || !coin(rng, opt.edge_probability)) continue;
            es.push_back(Edge{"e" + std::to_string(es.size()), order[i], order[j]});
            while (es.size() < opt.max_edges && coin(rng, opt.parallel_probability)) {
                es.push_back(Edge{"e" + std::to_string(es.size()), order[i], order[j]});
            }
        }
    }
    return CausalNetwork(vs, es);
}

/// A uniformly chosen linear extension step by step: Kahn's algorithm with
/// random tie breaking, restricted to `subset`.
inline std::vector<VertexId> random_linearization(Rng& rng, const CausalNetwork& n, const std::vector<VertexId>& subset) {
    const std::set<VertexId> s(subset.begin(), subset.end());
    std::map<VertexId, std::size_t> indeg;
    for (const auto& v : s) indeg[v] = 0;
    for (const auto& e : n.edges())
        if (s.count(e.src) && s.count(e.tgt)) ++indeg[e.tgt];
    std::vector<VertexId> ready, out;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    while (!ready.empty()) {
        const std::size_t k = uniform(rng, 0, ready.size() - 1);
        const VertexId v = ready[k];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(k));
        out.push_back(v);
        for (const auto& e : n.out_edges(v)) {
            const auto& t = n.edge(e).tgt;
            if (s.count(t) && --indeg[t] == 0) ready.push_back(t);
        }
    }
    return out;
}

/// Smallest superset of `seed` closed under "lies on a path between members".
inline std::vector<VertexId> convex_hull(const CausalNetwork& n, const std::vector<VertexId>& seed) {
    std::vector<VertexId> out;
    for (const auto& w : n.vertices()) {
        bool below = false, above = false;
        for (const auto& a : seed) {
            below = below || n.reaches(a, w);
            above = above || n.reaches(w, a);
        }
        if (below && above) out.push_back(w);
    }
    return out;
}

/// Fresh names for generated moves.
struct IdSource {
    std::size_t next = 0;
    std::string fresh(const std::string& prefix) { return prefix + std::to_string(next++); }
};

enum class MoveKind { Iso, AddVertex, AddEdge, Subdivide, Merge, Shrink };

/// An applicable move of the requested kind, or of some kind if that one
/// has no applicable instance on `n` (e.g. no parallel edges to merge).
inline ElementaryMove random_move(Rng& rng, const CausalNetwork& n, IdSource& ids, MoveKind kind) {
    auto parallel_groups = [&] {
        std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> by_ends;
        for (const auto& e : n.edges()) by_ends[{e.src, e.tgt}].push_back(e.id);
        std::vector<std::vector<EdgeId>> groups;
        for (auto& [k, g] : by_ends)
            if (g.size() >= 2) groups.push_back(g);
        return groups;
    };
    auto addable_pairs = [&] {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (const auto& a : n.vertices())
            for (const auto& b : n.vertices())
                if (!n.reaches(b, a)) pairs.emplace_back(a, b);
        return pairs;
    };

    switch (kind) {
        case MoveKind::Iso: {
            Iso m;
            const std::string tag = ids.fresh("r");
            for (const auto& v : n.vertices()) m.vertices[v] = tag + "_" + v;
            for (const auto& e : n.edges()) m.edges[e.id] = tag + "_" + e.id;
            return m;
        }
        case MoveKind::AddVertex:
            return AddVertex{ids.fresh("x")};
        case MoveKind::AddEdge: {
            const auto pairs = n.vertices().empty() ? decltype(addable_pairs()){} : addable_pairs();
            if (pairs.empty()) return AddVertex{ids.fresh("x")};
            const auto& [a, b] = pick(rng, pairs);
            return AddEdge{ids.fresh("f"), a, b};
        }
        case MoveKind::Subdivide: {
            if (n.edges().empty()) return random_move(rng, n, ids, MoveKind::AddEdge);
            const auto& e = pick(rng, n.edges());
            return Subdivide{e.id, ids.fresh("s"), {ids.fresh("f"), ids.fresh("f")}};
        }
        case MoveKind::Merge: {
            const auto groups = parallel_groups();
            if (groups.empty()) {
                if (n.edges().empty()) return random_move(rng, n, ids, MoveKind::AddEdge);
                const auto& e = pick(rng, n.edges());
                return AddEdge{ids.fresh("f"), e.src, e.tgt};
            }
            auto g = pick(rng, groups);
            std::shuffle(g.begin(), g.end(), rng);
            g.resize(uniform(rng, 2, g.size()));
            const EdgeId merged = coin(rng) ? g.front() : ids.fresh("m");
            return MergeEdges{g, merged};
        }
        case MoveKind::Shrink: {
            if (n.vertices().empty()) return AddVertex{ids.fresh("x")};
            std::vector<VertexId> seed;
            const std::size_t k = uniform(rng, 1, std::min<std::size_t>(3, n.vertices().size()));
            for (std::size_t i = 0; i < k; ++i) seed.push_back(pick(rng, n.vertices()));
            auto hull = convex_hull(n, seed);
            std::shuffle(hull.begin(), hull.end(), rng);
            const VertexId target = coin(rng) ? hull.front() : ids.fresh("c");
            return ShrinkVertices{hull, target};
        }
    }
    return AddVertex{ids.fresh("x")};
}

inline MoveKind random_kind(Rng& rng) {
    return static_cast<MoveKind>(uniform(rng, 0, 5));
}

inline ElementaryMove random_move(Rng& rng, const CausalNetwork& n, IdSource& ids) {
    return random_move(rng, n, ids, random_kind(rng));
}

/// `count` moves applied one after another, each applicable to the
/// previous result.
inline std::vector<ElementaryMove> random_moves(Rng& rng, const CausalNetwork& start, std::size_t count, IdSource& ids) {
    std::vector<ElementaryMove> moves;
    CausalNetwork cur = start;
    for (std::size_t i = 0; i < count; ++i) {
        moves.push_back(random_move(rng, cur, ids));
        cur = apply_move(cur, moves.back()).network;
    }
    return moves;
}

// ---------------------------------------------------------------------------
// MatQ values

inline Rational random_rational(Rng& rng, int span = 3, bool fractions = true) {
    const long num = static_cast<long>(uniform(rng, 0, 2 * span)) - span;
    const long den = fractions && coin(rng, 0.25) ? static_cast<long>(uniform(rng, 2, 3)) : 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng);
    return m;
}

/// Rejection sampling until the determinant is nonzero.
inline Matrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n);
        if (m.inverse()) return m;
    }
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline Polarization random_polarization(Rng& rng, const CausalNetwork& n) {
    Polarization pol = default_polarization(n);
    for (auto& [v, p] : pol) {
        std::shuffle(p.in.begin(), p.in.end(), rng);
        std::shuffle(p.out.begin(), p.out.end(), rng);
    }
    return pol;
}

struct MatqOptions {
    std::uint64_t max_dim = 3;
    /// Bound on the product of all edge dimensions. Every frontier during
    /// evaluation is a set of edges, so this bounds every matrix built.
    std::uint64_t max_total_volume = 243;
};

/// Random edge dimensions, then random rational matrices of the right
/// shape at every vertex.
inline CausalDiagram random_matq_diagram(Rng& rng, const CausalNetwork& n, const MatqOptions& opt = {}) {
    const Polarization pol = random_polarization(rng, n);
    std::map<EdgeId, std::uint64_t> dims;
    std::uint64_t total = 1;
    for (const auto& e : n.edges()) {
        std::uint64_t d = uniform(rng, 1, opt.max_dim);
        while (d > 1 && total * d > opt.max_total_volume) --d;
        total *= d;
        dims.emplace(e.id, d);
    }
    Valuation val;
    for (const auto& [e, d] : dims) val.edges.emplace(e, Object::dimension(d));
    for (const auto& v : n.vertices()) {
        std::uint64_t in = 1, out = 1;
        for (const auto& e : pol.at(v).in) in *= dims.at(e);
        for (const auto& e : pol.at(v).out) out *= dims.at(e);
        val.vertices.emplace(v, Morphism::matrix(random_matrix(rng, out, in)));
    }
    return CausalDiagram(Instance::MatQ, n, pol, std::move(val));
}

/// Invertible matrices of the right size on every edge, so the target
/// labels equal the source labels.
inline GaugeWitness random_matq_witness(Rng& rng, const CausalDiagram& d) {
    std::map<EdgeId, Morphism> fwd;
    for (const auto& e : d.network().edges()) {
        fwd.emplace(e.id, Morphism::matrix(random_invertible(rng, d.edge_object(e.id).dim())));
    }
    return GaugeWitness::from_forward(fwd);
}

/// Also changes the polarization.
inline CausalDiagram random_gauge_transform(Rng& rng, const CausalDiagram& d, GaugeWitness* witness = nullptr) {
    GaugeWitness w = random_matq_witness(rng, d);
    CausalDiagram out = apply_gauge(d, w, random_polarization(rng, d.network()));
    if (witness) *witness = std::move(w);
    return out;
}

/// Product of the dimensions of all edges; a cheap bound on total_value cost.
inline std::uint64_t total_volume(const CausalDiagram& d) {
    std::uint64_t v = 1;
    for (const auto& e : d.network().edges()) v *= d.edge_object(e.id).dim();
    return v;
}

}  // namespace causalnet::testing
