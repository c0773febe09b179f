#include "causalnet/network.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace causalnet {

namespace {

// Iterative DFS over out-edges; returns the edges of the first back-edge cycle.
std::vector<EdgeId> find_cycle(const std::map<VertexId, std::vector<const Edge*>>& out) {
    enum class Color { White, Grey, Black };
    std::map<VertexId, Color> color;
    for (const auto& [v, _] : out) color[v] = Color::White;

    for (const auto& [root, _] : out) {
        if (color[root] != Color::White) continue;
        // Stack of (vertex, next out-edge index); `trail` holds the edges taken.
        std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
        std::vector<const Edge*> trail;
        color[root] = Color::Grey;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& edges = out.at(v);
            if (next == edges.size()) {
                color[v] = Color::Black;
                stack.pop_back();
                if (!trail.empty()) trail.pop_back();
                continue;
            }
            const Edge* e = edges[next++];
            Color c = color[e->tgt];
            if (c == Color::Grey) {
                // trail[i] is the edge that entered stack[i + 1]
                std::size_t j = 0;
                while (stack[j].first != e->tgt) ++j;
                std::vector<EdgeId> cycle;
                for (std::size_t i = j; i < trail.size(); ++i) cycle.push_back(trail[i]->id);
                cycle.push_back(e->id);
                return cycle;
            }
            if (c == Color::White) {
                color[e->tgt] = Color::Grey;
                trail.push_back(e);
                stack.push_back({e->tgt, 0});
            }
        }
    }
    return {};
}

}  // namespace

void validate_network(std::span<const VertexId> vertices, std::span<const Edge> edges) {
    std::set<VertexId> vset;
    for (const auto& v : vertices) {
        if (!vset.insert(v).second) throw Error(ErrorCode::DuplicateId, "vertex '" + v + "' listed twice", {v});
    }
    std::set<EdgeId> eset;
    std::map<VertexId, std::vector<const Edge*>> out;
    for (const auto& v : vset) out[v];
    for (const auto& e : edges) {
        if (!eset.insert(e.id).second) throw Error(ErrorCode::DuplicateId, "edge '" + e.id + "' listed twice", {e.id});
        if (!vset.count(e.src) || !vset.count(e.tgt)) {
            throw Error(ErrorCode::DanglingEndpoint,
                        "edge '" + e.id + "' has an endpoint outside the vertex set", {e.id});
        }
        out[e.src].push_back(&e);
    }
    for (auto& [_, list] : out) {
        std::sort(list.begin(), list.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
    }
    auto cycle = find_cycle(out);
    if (!cycle.empty()) {
        std::string msg = "directed cycle through edges";
        for (const auto& id : cycle) msg += " " + id;
        throw Error(ErrorCode::CycleFound, msg, cycle);
    }
}

CausalNetwork::CausalNetwork(std::vector<VertexId> vertices, std::vector<Edge> edges) {
    validate_network(vertices, edges);
    std::sort(vertices.begin(), vertices.end());
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    vertices_ = std::move(vertices);
    edges_ = std::move(edges);
    for (const auto& v : vertices_) incidence_[v];
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        edge_index_.emplace(e.id, i);
        // edges_ is sorted, so these lists come out sorted too
        incidence_[e.src].out.push_back(e.id);
        incidence_[e.tgt].in.push_back(e.id);
    }
}

const Edge& CausalNetwork::edge(const EdgeId& e) const {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end()) throw Error(ErrorCode::UnknownId, "no edge '" + e + "'", {e});
    return edges_[it->second];
}

const std::vector<EdgeId>& CausalNetwork::in_edges(const VertexId& v) const {
    auto it = incidence_.find(v);
    if (it == incidence_.end()) throw Error(ErrorCode::UnknownId, "no vertex '" + v + "'", {v});
    return it->second.in;
}

const std::vector<EdgeId>& CausalNetwork::out_edges(const VertexId& v) const {
    auto it = incidence_.find(v);
    if (it == incidence_.end()) throw Error(ErrorCode::UnknownId, "no vertex '" + v + "'", {v});
    return it->second.out;
}

std::vector<VertexId> CausalNetwork::topological_order() const {
    std::map<VertexId, std::size_t> indegree;
    for (const auto& [v, inc] : incidence_) indegree[v] = inc.in.size();
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (const auto& [v, d] : indegree)
        if (d == 0) ready.push(v);
    std::vector<VertexId> order;
    order.reserve(vertices_.size());
    while (!ready.empty()) {
        VertexId v = ready.top();
        ready.pop();
        for (const auto& e : incidence_.at(v).out) {
            const auto& t = edge(e).tgt;
            if (--indegree[t] == 0) ready.push(t);
        }
        order.push_back(std::move(v));
    }
    return order;
}

bool CausalNetwork::reaches(const VertexId& from, const VertexId& to) const {
    if (!has_vertex(from)) throw Error(ErrorCode::UnknownId, "no vertex '" + from + "'", {from});
    if (!has_vertex(to)) throw Error(ErrorCode::UnknownId, "no vertex '" + to + "'", {to});
    std::set<VertexId> seen{from};
    std::vector<VertexId> stack{from};
    while (!stack.empty()) {
        VertexId v = std::move(stack.back());
        stack.pop_back();
        if (v == to) return true;
        for (const auto& e : out_edges(v)) {
            const auto& t = edge(e).tgt;
            if (seen.insert(t).second) stack.push_back(t);
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Paths

void validate_path(const CausalNetwork& n, const Path& p) {
    if (!n.has_vertex(p.anchor)) throw Error(ErrorCode::InvalidPath, "anchor '" + p.anchor + "' is not a vertex");
    VertexId at = p.anchor;
    for (const auto& id : p.edges) {
        if (!n.has_edge(id)) throw Error(ErrorCode::InvalidPath, "path uses unknown edge '" + id + "'", {id});
        const Edge& e = n.edge(id);
        if (e.src != at) {
            throw Error(ErrorCode::InvalidPath, "edge '" + id + "' does not start where the path is", {id});
        }
        at = e.tgt;
    }
}

VertexId path_source(const CausalNetwork& n, const Path& p) {
    return p.empty() ? p.anchor : n.edge(p.edges.front()).src;
}

VertexId path_target(const CausalNetwork& n, const Path& p) {
    return p.empty() ? p.anchor : n.edge(p.edges.back()).tgt;
}

Path concatenate(const Path& first, const Path& second) {
    Path out = first;
    out.edges.insert(out.edges.end(), second.edges.begin(), second.edges.end());
    return out;
}

// ---------------------------------------------------------------------------
// Functors

PathFunctor::PathFunctor(CausalNetwork source, CausalNetwork target, std::map<VertexId, VertexId> vertex_map,
                         std::map<EdgeId, Path> edge_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      vertex_map_(std::move(vertex_map)),
      edge_map_(std::move(edge_map)) {
    if (vertex_map_.size() != source_.vertices().size()) {
        throw Error(ErrorCode::InvalidFunctor, "vertex map must be defined exactly on the source vertices");
    }
    for (const auto& v : source_.vertices()) {
        auto it = vertex_map_.find(v);
        if (it == vertex_map_.end()) throw Error(ErrorCode::InvalidFunctor, "vertex '" + v + "' is unmapped", {v});
        if (!target_.has_vertex(it->second)) {
            throw Error(ErrorCode::InvalidFunctor, "vertex '" + v + "' maps outside the target", {v});
        }
    }
    if (edge_map_.size() != source_.edges().size()) {
        throw Error(ErrorCode::InvalidFunctor, "edge map must be defined exactly on the source edges");
    }
    for (const auto& e : source_.edges()) {
        auto it = edge_map_.find(e.id);
        if (it == edge_map_.end()) throw Error(ErrorCode::InvalidFunctor, "edge '" + e.id + "' is unmapped", {e.id});
        const Path& p = it->second;
        try {
            validate_path(target_, p);
        } catch (const Error& err) {
            throw Error(ErrorCode::InvalidFunctor, "image of edge '" + e.id + "': " + err.detail(), {e.id});
        }
        if (path_source(target_, p) != vertex_map_.at(e.src) || path_target(target_, p) != vertex_map_.at(e.tgt)) {
            throw Error(ErrorCode::InvalidFunctor,
                        "image of edge '" + e.id + "' does not connect the images of its endpoints", {e.id});
        }
    }
}

const VertexId& PathFunctor::map_vertex(const VertexId& v) const {
    auto it = vertex_map_.find(v);
    if (it == vertex_map_.end()) throw Error(ErrorCode::UnknownId, "no vertex '" + v + "' in functor source", {v});
    return it->second;
}

const Path& PathFunctor::map_edge(const EdgeId& e) const {
    auto it = edge_map_.find(e);
    if (it == edge_map_.end()) throw Error(ErrorCode::UnknownId, "no edge '" + e + "' in functor source", {e});
    return it->second;
}

Path PathFunctor::map_path(const Path& p) const {
    Path out = Path::identity(map_vertex(p.anchor));
    for (const auto& e : p.edges) out = concatenate(out, map_edge(e));
    return out;
}

PathFunctor identity_functor(const CausalNetwork& n) {
    std::map<VertexId, VertexId> vmap;
    for (const auto& v : n.vertices()) vmap.emplace(v, v);
    std::map<EdgeId, Path> emap;
    for (const auto& e : n.edges()) emap.emplace(e.id, Path::of_edge(e));
    return PathFunctor(n, n, std::move(vmap), std::move(emap));
}

PathFunctor compose_functors(const PathFunctor& g, const PathFunctor& f) {
    if (!(f.target() == g.source())) {
        throw Error(ErrorCode::SourceTargetMismatch, "cannot compose: target of the first functor is not the source of the second");
    }
    std::map<VertexId, VertexId> vmap;
    for (const auto& [v, w] : f.vertex_map()) vmap.emplace(v, g.map_vertex(w));
    std::map<EdgeId, Path> emap;
    for (const auto& [e, p] : f.edge_map()) emap.emplace(e, g.map_path(p));
    return PathFunctor(f.source(), g.target(), std::move(vmap), std::move(emap));
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using PairCount = std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>>;

PairCount group_parallel(const CausalNetwork& n) {
    PairCount groups;
    for (const auto& e : n.edges()) groups[{e.src, e.tgt}].push_back(e.id);
    return groups;
}

std::size_t multiplicity(const PairCount& g, const VertexId& s, const VertexId& t) {
    auto it = g.find({s, t});
    return it == g.end() ? 0 : it->second.size();
}

}  // namespace

std::optional<NetworkIsomorphism> find_isomorphism(const CausalNetwork& a, const CausalNetwork& b) {
    if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size()) return std::nullopt;
    const auto ga = group_parallel(a);
    const auto gb = group_parallel(b);
    auto degree = [](const CausalNetwork& n, const VertexId& v) {
        return std::pair{n.in_edges(v).size(), n.out_edges(v).size()};
    };

    const auto& av = a.vertices();
    std::map<VertexId, VertexId> forward;
    std::set<VertexId> used;

    std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
        if (k == av.size()) return true;
        const VertexId& u = av[k];
        for (const auto& w : b.vertices()) {
            if (used.count(w) || degree(a, u) != degree(b, w)) continue;
            bool ok = multiplicity(ga, u, u) == multiplicity(gb, w, w);
            for (std::size_t j = 0; ok && j < k; ++j) {
                const VertexId& x = av[j];
                const VertexId& y = forward[x];
                ok = multiplicity(ga, u, x) == multiplicity(gb, w, y) && multiplicity(ga, x, u) == multiplicity(gb, y, w);
            }
            if (!ok) continue;
            forward[u] = w;
            used.insert(w);
            if (extend(k + 1)) return true;
            forward.erase(u);
            used.erase(w);
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;

    NetworkIsomorphism iso;
    iso.vertices = forward;
    for (const auto& [ends, ids] : ga) {
        const auto& image = gb.at({forward.at(ends.first), forward.at(ends.second)});
        for (std::size_t i = 0; i < ids.size(); ++i) iso.edges.emplace(ids[i], image[i]);
    }
    return iso;
}

// ---------------------------------------------------------------------------
// Posets

void validate_poset(const Poset& p) {
    for (const auto& [x, y] : p.relation) {
        if (!p.elements.count(x) || !p.elements.count(y)) {
            throw Error(ErrorCode::NotAPoset, "pair (" + x + ", " + y + ") mentions a non-element");
        }
    }
    for (const auto& x : p.elements) {
        if (!p.leq(x, x)) throw Error(ErrorCode::NotAPoset, "relation is not reflexive at '" + x + "'", {x});
    }
    for (const auto& [x, y] : p.relation) {
        if (x != y && p.leq(y, x)) {
            throw Error(ErrorCode::NotAPoset, "relation is not antisymmetric on '" + x + "', '" + y + "'", {x, y});
        }
        for (const auto& z : p.elements) {
            if (p.leq(y, z) && !p.leq(x, z)) {
                throw Error(ErrorCode::NotAPoset,
                            "relation is not transitive: " + x + " <= " + y + " <= " + z, {x, y, z});
            }
        }
    }
}

CausalNetwork poset_to_network(const Poset& p) {
    validate_poset(p);
    std::vector<VertexId> vertices(p.elements.begin(), p.elements.end());
    std::vector<Edge> edges;
    for (const auto& [x, y] : p.relation) {
        if (x == y) continue;
        edges.push_back(Edge{"e" + std::to_string(edges.size()), x, y});
    }
    return CausalNetwork(std::move(vertices), std::move(edges));
}

Poset network_to_poset(const CausalNetwork& n) {
    Poset p;
    p.elements.insert(n.vertices().begin(), n.vertices().end());
    // Reachability sets, built in reverse topological order.
    std::map<VertexId, std::set<VertexId>> below;
    auto order = n.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& reach = below[*it];
        reach.insert(*it);
        for (const auto& e : n.out_edges(*it)) {
            const auto& succ = below.at(n.edge(e).tgt);
            reach.insert(succ.begin(), succ.end());
        }
    }
    for (const auto& [x, reach] : below)
        for (const auto& y : reach) p.relation.emplace(x, y);
    return p;
}

}  // namespace causalnet
