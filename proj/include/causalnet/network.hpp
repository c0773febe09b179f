#pragma once

// Causal networks (finite DAGs), paths in their free categories, functors
// between path categories, and the bridge to partially ordered sets.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causalnet/error.hpp"

namespace causalnet {

using VertexId = std::string;
using EdgeId = std::string;

struct Edge {
    EdgeId id;
    VertexId src;
    VertexId tgt;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Throws Error(DuplicateId | DanglingEndpoint | CycleFound) unless the
/// vertex and edge lists describe a finite directed acyclic graph.
/// On CycleFound, `Error::ids()` lists the edges of one directed cycle in
/// traversal order.
void validate_network(std::span<const VertexId> vertices, std::span<const Edge> edges);

/// A finite directed acyclic multigraph with string ids. Always valid: the
/// constructor runs validate_network. Vertices and edges are kept sorted by
/// id, so equality is by id and iteration order is deterministic.
class CausalNetwork {
public:
    CausalNetwork() = default;
    CausalNetwork(std::vector<VertexId> vertices, std::vector<Edge> edges);

    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool has_vertex(const VertexId& v) const { return incidence_.count(v) != 0; }
    bool has_edge(const EdgeId& e) const { return edge_index_.count(e) != 0; }

    /// Throws Error(UnknownId).
    const Edge& edge(const EdgeId& e) const;
    /// t^{-1}(v), sorted by edge id. Throws Error(UnknownId).
    const std::vector<EdgeId>& in_edges(const VertexId& v) const;
    /// s^{-1}(v), sorted by edge id. Throws Error(UnknownId).
    const std::vector<EdgeId>& out_edges(const VertexId& v) const;

    /// Kahn's algorithm, always taking the smallest available id.
    std::vector<VertexId> topological_order() const;

    /// Reflexive reachability: true iff a directed path from `from` to `to` exists.
    bool reaches(const VertexId& from, const VertexId& to) const;

    friend bool operator==(const CausalNetwork& a, const CausalNetwork& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    struct Incidence {
        std::vector<EdgeId> in;
        std::vector<EdgeId> out;
    };

    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<EdgeId, std::size_t> edge_index_;
    std::map<VertexId, Incidence> incidence_;
};

/// A morphism of the free category F(n). Empty paths are identities at `anchor`;
/// a nonempty path's anchor is its first edge's source.
struct Path {
    VertexId anchor;
    std::vector<EdgeId> edges;

    bool empty() const noexcept { return edges.empty(); }

    static Path identity(VertexId at) { return Path{std::move(at), {}}; }
    static Path of_edge(const Edge& e) { return Path{e.src, {e.id}}; }

    friend bool operator==(const Path&, const Path&) = default;
};

/// Throws Error(InvalidPath) if `p` is not a path of `n`.
void validate_path(const CausalNetwork& n, const Path& p);
VertexId path_source(const CausalNetwork& n, const Path& p);
VertexId path_target(const CausalNetwork& n, const Path& p);
Path concatenate(const Path& first, const Path& second);

/// A functor F(source) -> F(target), fixed by its action on vertices and
/// edges. The constructor checks totality and endpoint compatibility and
/// throws Error(InvalidFunctor) otherwise.
class PathFunctor {
public:
    PathFunctor(CausalNetwork source, CausalNetwork target,
                std::map<VertexId, VertexId> vertex_map, std::map<EdgeId, Path> edge_map);

    const CausalNetwork& source() const noexcept { return source_; }
    const CausalNetwork& target() const noexcept { return target_; }
    const std::map<VertexId, VertexId>& vertex_map() const noexcept { return vertex_map_; }
    const std::map<EdgeId, Path>& edge_map() const noexcept { return edge_map_; }

    const VertexId& map_vertex(const VertexId& v) const;
    const Path& map_edge(const EdgeId& e) const;
    /// Image of an arbitrary path of the source.
    Path map_path(const Path& p) const;

    friend bool operator==(const PathFunctor&, const PathFunctor&) = default;

private:
    CausalNetwork source_;
    CausalNetwork target_;
    std::map<VertexId, VertexId> vertex_map_;
    std::map<EdgeId, Path> edge_map_;
};

PathFunctor identity_functor(const CausalNetwork& n);

/// g ∘ f. Throws Error(SourceTargetMismatch) unless f.target() == g.source().
PathFunctor compose_functors(const PathFunctor& g, const PathFunctor& f);

/// A relabeling witnessing that two networks are isomorphic.
struct NetworkIsomorphism {
    std::map<VertexId, VertexId> vertices;
    std::map<EdgeId, EdgeId> edges;
};

/// Backtracking search; intended for small graphs.
std::optional<NetworkIsomorphism> find_isomorphism(const CausalNetwork& a, const CausalNetwork& b);

/// Finite partial order, stored with its reflexive pairs.
struct Poset {
    std::set<std::string> elements;
    std::set<std::pair<std::string, std::string>> relation;

    bool leq(const std::string& x, const std::string& y) const {
        return relation.count({x, y}) != 0;
    }

    friend bool operator==(const Poset&, const Poset&) = default;
};

/// Throws Error(NotAPoset) unless the relation is a reflexive, antisymmetric,
/// transitive relation on `elements`.
void validate_poset(const Poset& p);

/// Transitive closure of the Hasse diagram: one edge x -> y per strict pair x < y.
CausalNetwork poset_to_network(const Poset& p);

/// x <= y iff a directed path from x to y exists.
Poset network_to_poset(const CausalNetwork& n);

}  // namespace causalnet
