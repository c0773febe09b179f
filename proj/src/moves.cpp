#include "causalnet/moves.hpp"

#include <algorithm>
#include <set>

namespace causalnet {

std::string_view move_name(const ElementaryMove& m) {
    struct Name {
        std::string_view operator()(const Iso&) const { return "iso"; }
        std::string_view operator()(const AddVertex&) const { return "add_vertex"; }
        std::string_view operator()(const AddEdge&) const { return "add_edge"; }
        std::string_view operator()(const Subdivide&) const { return "subdivide"; }
        std::string_view operator()(const MergeEdges&) const { return "merge_edges"; }
        std::string_view operator()(const ShrinkVertices&) const { return "shrink_vertices"; }
    };
    return std::visit(Name{}, m);
}

namespace {

[[noreturn]] void unknown(const std::string& what, const std::string& id) {
    throw Error(ErrorCode::UnknownId, "no " + what + " '" + id + "'", {id});
}

[[noreturn]] void collision(const std::string& what, const std::string& id) {
    throw Error(ErrorCode::IdCollision, what + " id '" + id + "' is already in use", {id});
}

// Builds the rewritten network, reporting a cycle as CycleCreated.
CausalNetwork build(std::vector<VertexId> vertices, std::vector<Edge> edges) {
    try {
        return CausalNetwork(std::move(vertices), std::move(edges));
    } catch (const Error& err) {
        if (err.code() == ErrorCode::CycleFound) throw Error(ErrorCode::CycleCreated, err.detail(), err.ids());
        throw;
    }
}

// Functor that is the identity on everything `n` and `out` share.
struct InclusionMaps {
    std::map<VertexId, VertexId> vmap;
    std::map<EdgeId, Path> emap;
};

MoveResult apply(const CausalNetwork& n, const Iso& m) {
    if (m.vertices.size() != n.vertices().size() || m.edges.size() != n.edges().size()) {
        throw Error(ErrorCode::NotABijection, "an iso must relabel every vertex and edge exactly once");
    }
    std::set<VertexId> vimage;
    for (const auto& [v, w] : m.vertices) {
        if (!n.has_vertex(v)) unknown("vertex", v);
        if (!vimage.insert(w).second) throw Error(ErrorCode::NotABijection, "two vertices relabelled to '" + w + "'", {w});
    }
    std::set<EdgeId> eimage;
    for (const auto& [e, f] : m.edges) {
        if (!n.has_edge(e)) unknown("edge", e);
        if (!eimage.insert(f).second) throw Error(ErrorCode::NotABijection, "two edges relabelled to '" + f + "'", {f});
    }
    std::vector<VertexId> vertices(vimage.begin(), vimage.end());
    std::vector<Edge> edges;
    std::map<EdgeId, Path> emap;
    for (const auto& e : n.edges()) {
        Edge image{m.edges.at(e.id), m.vertices.at(e.src), m.vertices.at(e.tgt)};
        emap.emplace(e.id, Path::of_edge(image));
        edges.push_back(std::move(image));
    }
    CausalNetwork out = build(std::move(vertices), std::move(edges));
    PathFunctor f(n, out, m.vertices, std::move(emap));
    return {std::move(out), std::move(f)};
}

InclusionMaps identity_on(const CausalNetwork& n, const std::set<VertexId>& skip_vertices = {},
                          const std::set<EdgeId>& skip_edges = {}) {
    InclusionMaps maps;
    for (const auto& v : n.vertices())
        if (!skip_vertices.count(v)) maps.vmap.emplace(v, v);
    for (const auto& e : n.edges())
        if (!skip_edges.count(e.id)) maps.emap.emplace(e.id, Path::of_edge(e));
    return maps;
}

MoveResult apply(const CausalNetwork& n, const AddVertex& m) {
    if (n.has_vertex(m.vertex)) collision("vertex", m.vertex);
    std::vector<VertexId> vertices = n.vertices();
    vertices.push_back(m.vertex);
    CausalNetwork out = build(std::move(vertices), n.edges());
    auto maps = identity_on(n);
    PathFunctor f(n, out, std::move(maps.vmap), std::move(maps.emap));
    return {std::move(out), std::move(f)};
}

MoveResult apply(const CausalNetwork& n, const AddEdge& m) {
    if (n.has_edge(m.edge)) collision("edge", m.edge);
    if (!n.has_vertex(m.src)) unknown("vertex", m.src);
    if (!n.has_vertex(m.tgt)) unknown("vertex", m.tgt);
    std::vector<Edge> edges = n.edges();
    edges.push_back(Edge{m.edge, m.src, m.tgt});
    CausalNetwork out = build(n.vertices(), std::move(edges));
    auto maps = identity_on(n);
    PathFunctor f(n, out, std::move(maps.vmap), std::move(maps.emap));
    return {std::move(out), std::move(f)};
}

MoveResult apply(const CausalNetwork& n, const Subdivide& m) {
    if (!n.has_edge(m.edge)) unknown("edge", m.edge);
    if (n.has_vertex(m.new_vertex)) collision("vertex", m.new_vertex);
    const auto& [e1, e2] = m.new_edges;
    if (e1 == e2) collision("edge", e1);
    for (const auto& id : m.new_edges)
        if (id != m.edge && n.has_edge(id)) collision("edge", id);
    const Edge old = n.edge(m.edge);

    std::vector<VertexId> vertices = n.vertices();
    vertices.push_back(m.new_vertex);
    std::vector<Edge> edges;
    for (const auto& e : n.edges())
        if (e.id != m.edge) edges.push_back(e);
    edges.push_back(Edge{e1, old.src, m.new_vertex});
    edges.push_back(Edge{e2, m.new_vertex, old.tgt});
    CausalNetwork out = build(std::move(vertices), std::move(edges));

    auto maps = identity_on(n, {}, {m.edge});
    maps.emap.emplace(m.edge, Path{old.src, {e1, e2}});
    PathFunctor f(n, out, std::move(maps.vmap), std::move(maps.emap));
    return {std::move(out), std::move(f)};
}

MoveResult apply(const CausalNetwork& n, const MergeEdges& m) {
    if (m.edges.empty()) throw Error(ErrorCode::NotParallel, "nothing to merge");
    std::set<EdgeId> merged(m.edges.begin(), m.edges.end());
    if (merged.size() != m.edges.size()) throw Error(ErrorCode::NotParallel, "an edge is listed twice");
    for (const auto& e : m.edges)
        if (!n.has_edge(e)) unknown("edge", e);
    const Edge& first = n.edge(m.edges.front());
    for (const auto& id : m.edges) {
        const Edge& e = n.edge(id);
        if (e.src != first.src || e.tgt != first.tgt) {
            throw Error(ErrorCode::NotParallel, "edges '" + first.id + "' and '" + id + "' do not share source and target",
                        {first.id, id});
        }
    }
    if (n.has_edge(m.merged) && !merged.count(m.merged)) collision("edge", m.merged);

    std::vector<Edge> edges;
    for (const auto& e : n.edges())
        if (!merged.count(e.id)) edges.push_back(e);
    const Edge result{m.merged, first.src, first.tgt};
    edges.push_back(result);
    CausalNetwork out = build(n.vertices(), std::move(edges));

    auto maps = identity_on(n, {}, merged);
    for (const auto& id : m.edges) maps.emap.emplace(id, Path::of_edge(result));
    PathFunctor f(n, out, std::move(maps.vmap), std::move(maps.emap));
    return {std::move(out), std::move(f)};
}

MoveResult apply(const CausalNetwork& n, const ShrinkVertices& m) {
    if (m.vertices.empty()) throw Error(ErrorCode::UnknownId, "cannot shrink an empty vertex set");
    std::set<VertexId> group(m.vertices.begin(), m.vertices.end());
    if (group.size() != m.vertices.size()) throw Error(ErrorCode::IdCollision, "a vertex is listed twice");
    for (const auto& v : group)
        if (!n.has_vertex(v)) unknown("vertex", v);
    if (n.has_vertex(m.new_vertex) && !group.count(m.new_vertex)) collision("vertex", m.new_vertex);

    auto image = [&](const VertexId& v) -> const VertexId& { return group.count(v) ? m.new_vertex : v; };
    std::vector<VertexId> vertices;
    for (const auto& v : n.vertices())
        if (!group.count(v)) vertices.push_back(v);
    vertices.push_back(m.new_vertex);
    std::vector<Edge> edges;
    std::map<EdgeId, Path> emap;
    for (const auto& e : n.edges()) {
        if (group.count(e.src) && group.count(e.tgt)) {
            emap.emplace(e.id, Path::identity(m.new_vertex));
            continue;
        }
        Edge moved{e.id, image(e.src), image(e.tgt)};
        emap.emplace(e.id, Path::of_edge(moved));
        edges.push_back(std::move(moved));
    }
    CausalNetwork out = build(std::move(vertices), std::move(edges));
    std::map<VertexId, VertexId> vmap;
    for (const auto& v : n.vertices()) vmap.emplace(v, image(v));
    PathFunctor f(n, out, std::move(vmap), std::move(emap));
    return {std::move(out), std::move(f)};
}

}  // namespace

MoveResult apply_move(const CausalNetwork& n, const ElementaryMove& m) {
    return std::visit([&](const auto& move) { return apply(n, move); }, m);
}

MoveTrace trace_moves(const CausalNetwork& start, std::span<const ElementaryMove> moves) {
    MoveTrace trace{{start}, identity_functor(start)};
    for (const auto& m : moves) {
        MoveResult r = apply_move(trace.networks.back(), m);
        trace.composite = compose_functors(r.functor, trace.composite);
        trace.networks.push_back(std::move(r.network));
    }
    return trace;
}

bool verify_decomposition(const PathFunctor& f, std::span<const ElementaryMove> moves) {
    try {
        return trace_moves(f.source(), moves).composite == f;
    } catch (const Error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

class FreshIds {
public:
    explicit FreshIds(const PathFunctor& f) {
        for (const CausalNetwork* n : {&f.source(), &f.target()}) {
            used_.insert(n->vertices().begin(), n->vertices().end());
            for (const auto& e : n->edges()) used_.insert(e.id);
        }
    }

    std::string next(const std::string& prefix) {
        std::string id;
        do {
            id = prefix + std::to_string(counter_++);
        } while (!used_.insert(id).second);
        return id;
    }

private:
    std::set<std::string> used_;
    std::size_t counter_ = 0;
};

// The current network together with the functor from it into the target.
struct Residual {
    CausalNetwork network;
    std::map<VertexId, VertexId> vmap;
    std::map<EdgeId, Path> emap;
};

[[noreturn]] void not_decomposable(const std::string& why) {
    throw Error(ErrorCode::NotDecomposable, why);
}

void step(Residual& r, std::vector<ElementaryMove>& moves, ElementaryMove m) {
    try {
        r.network = apply_move(r.network, m).network;
    } catch (const Error& err) {
        not_decomposable(std::string(move_name(m)) + " failed: " + err.what());
    }
    moves.push_back(std::move(m));
}

}  // namespace

std::vector<ElementaryMove> decompose(const PathFunctor& f) {
    const CausalNetwork& target = f.target();
    FreshIds fresh(f);
    std::vector<ElementaryMove> moves;
    Residual r{f.source(), f.vertex_map(), f.edge_map()};

    // Subdivide every edge whose image has intermediate vertices.
    for (const auto& e : f.source().edges()) {
        const Path image = r.emap.at(e.id);
        if (image.edges.size() < 2) continue;
        EdgeId current = e.id;
        r.emap.erase(current);
        for (std::size_t i = 0; i + 1 < image.edges.size(); ++i) {
            const Edge& d = target.edge(image.edges[i]);
            Subdivide m{current, fresh.next("_v"), {fresh.next("_e"), fresh.next("_e")}};
            r.vmap.emplace(m.new_vertex, d.tgt);
            r.emap.emplace(m.new_edges[0], Path::of_edge(d));
            current = m.new_edges[1];
            step(r, moves, std::move(m));
        }
        r.emap.emplace(current, Path::of_edge(target.edge(image.edges.back())));
    }

    // Shrink each fiber of the vertex map, in topological order of the images.
    std::map<VertexId, std::vector<VertexId>> fibers;
    for (const auto& [v, w] : r.vmap) fibers[w].push_back(v);
    for (const auto& w : target.topological_order()) {
        auto it = fibers.find(w);
        if (it == fibers.end() || it->second.size() < 2) continue;
        ShrinkVertices m{it->second, fresh.next("_v")};
        const std::set<VertexId> group(m.vertices.begin(), m.vertices.end());
        for (const auto& v : group) r.vmap.erase(v);
        r.vmap.emplace(m.new_vertex, w);
        for (auto e = r.emap.begin(); e != r.emap.end();) {
            const Edge& edge = r.network.edge(e->first);
            if (group.count(edge.src) && group.count(edge.tgt)) {
                if (!e->second.empty()) not_decomposable("edge '" + edge.id + "' inside a fiber has a nonempty image");
                e = r.emap.erase(e);
            } else {
                ++e;
            }
        }
        step(r, moves, std::move(m));
    }
    for (const auto& [e, p] : r.emap) {
        if (p.edges.size() != 1) not_decomposable("edge '" + e + "' still has a non-unit image after shrinking");
    }

    // Merge edges with the same image.
    std::map<EdgeId, std::vector<EdgeId>> by_image;
    for (const auto& [e, p] : r.emap) by_image[p.edges.front()].push_back(e);
    for (const auto& [d, group] : by_image) {
        if (group.size() < 2) continue;
        MergeEdges m{group, fresh.next("_e")};
        for (const auto& e : group) r.emap.erase(e);
        r.emap.emplace(m.merged, Path::of_edge(target.edge(d)));
        step(r, moves, std::move(m));
    }

    // What remains embeds into the target; add what it misses.
    std::map<VertexId, VertexId> preimage;
    for (const auto& [v, w] : r.vmap) {
        if (!preimage.emplace(w, v).second) not_decomposable("vertex map is not injective after shrinking");
    }
    std::set<EdgeId> hit;
    for (const auto& [e, p] : r.emap) hit.insert(p.edges.front());
    for (const auto& w : target.vertices()) {
        if (preimage.count(w)) continue;
        AddVertex m{fresh.next("_v")};
        preimage.emplace(w, m.vertex);
        r.vmap.emplace(m.vertex, w);
        step(r, moves, std::move(m));
    }
    for (const auto& d : target.edges()) {
        if (hit.count(d.id)) continue;
        AddEdge m{fresh.next("_e"), preimage.at(d.src), preimage.at(d.tgt)};
        r.emap.emplace(m.edge, Path::of_edge(d));
        step(r, moves, std::move(m));
    }

    // Relabel onto the target's ids.
    Iso iso;
    iso.vertices = r.vmap;
    for (const auto& [e, p] : r.emap) iso.edges.emplace(e, p.edges.front());
    step(r, moves, std::move(iso));
    if (!(r.network == target)) not_decomposable("final relabeling does not reproduce the target network");
    return moves;
}

}  // namespace causalnet
