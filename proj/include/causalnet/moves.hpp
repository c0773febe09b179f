#pragma once

// Elementary morphisms of causal networks, the path functors they induce,
// and the constructive factorisation of an arbitrary path functor into them.

#include <array>
#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "causalnet/network.hpp"

namespace causalnet {

/// Graph isomorphism given as a relabeling of every vertex and edge.
struct Iso {
    std::map<VertexId, VertexId> vertices;
    std::map<EdgeId, EdgeId> edges;

    friend bool operator==(const Iso&, const Iso&) = default;
};

struct AddVertex {
    VertexId vertex;

    friend bool operator==(const AddVertex&, const AddVertex&) = default;
};

struct AddEdge {
    EdgeId edge;
    VertexId src;
    VertexId tgt;

    friend bool operator==(const AddEdge&, const AddEdge&) = default;
};

/// Splits `edge` (s -> t) into new_edges[0]: s -> new_vertex and
/// new_edges[1]: new_vertex -> t.
struct Subdivide {
    EdgeId edge;
    VertexId new_vertex;
    std::array<EdgeId, 2> new_edges;

    friend bool operator==(const Subdivide&, const Subdivide&) = default;
};

/// Replaces parallel edges by one edge `merged`. The merged id may reuse
/// one of the merged edges' ids.
struct MergeEdges {
    std::vector<EdgeId> edges;
    EdgeId merged;

    friend bool operator==(const MergeEdges&, const MergeEdges&) = default;
};

/// Contracts the induced subgraph on `vertices` to `new_vertex` (which may
/// reuse the id of a contracted vertex). Edges inside the set disappear.
struct ShrinkVertices {
    std::vector<VertexId> vertices;
    VertexId new_vertex;

    friend bool operator==(const ShrinkVertices&, const ShrinkVertices&) = default;
};

using ElementaryMove = std::variant<Iso, AddVertex, AddEdge, Subdivide, MergeEdges, ShrinkVertices>;

/// "iso", "add_vertex", "add_edge", "subdivide", "merge_edges", "shrink_vertices".
std::string_view move_name(const ElementaryMove& m);

struct MoveResult {
    CausalNetwork network;
    PathFunctor functor;  // F(input) -> F(network)
};

/// Rewrites `n` and returns the induced functor.
/// Throws Error(UnknownId | IdCollision | NotParallel | NotABijection | CycleCreated).
MoveResult apply_move(const CausalNetwork& n, const ElementaryMove& m);

struct MoveTrace {
    /// networks[0] is the start, networks[k] the result of the k-th move.
    std::vector<CausalNetwork> networks;
    PathFunctor composite;
};

/// Applies `moves` in order from `start` and composes their functors.
MoveTrace trace_moves(const CausalNetwork& start, std::span<const ElementaryMove> moves);

/// Factors f into elementary moves: subdivide long edge images, shrink the
/// fibers of the vertex map (in topological order of their images), merge
/// edges with equal images, add what the image misses, then one relabeling
/// Iso landing exactly on f.target(). The list always ends with that Iso.
/// Throws Error(NotDecomposable) if any stage fails.
std::vector<ElementaryMove> decompose(const PathFunctor& f);

/// True iff composing the functors induced by `moves`, starting from
/// f.source(), reproduces f exactly. Never throws.
bool verify_decomposition(const PathFunctor& f, std::span<const ElementaryMove> moves);

}  // namespace causalnet
