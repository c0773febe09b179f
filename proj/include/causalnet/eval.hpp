#pragma once

// Value of a valuation: contracts the sub-diagram induced by a vertex
// subset S to a single morphism from the tensor of its incoming boundary
// edges to the tensor of its outgoing boundary edges.

#include <span>
#include <vector>

#include "causalnet/diagram.hpp"

namespace causalnet {

struct InducedBoundary {
    std::vector<EdgeId> dom;       // source outside S, target in S
    std::vector<EdgeId> cod;       // source in S, target outside S
    std::vector<EdgeId> internal;  // both endpoints in S
};

struct BoundaryOrder {
    std::vector<EdgeId> dom;
    std::vector<EdgeId> cod;

    friend bool operator==(const BoundaryOrder&, const BoundaryOrder&) = default;
};

/// Each list sorted by edge id. Throws Error(UnknownVertex).
InducedBoundary induced_boundary(const CausalNetwork& n, std::span<const VertexId> subset);

/// Boundary edges ordered by the topological index of their endpoint in S,
/// then by position in that vertex's polarization.
BoundaryOrder canonical_boundary_order(const CausalDiagram& d, std::span<const VertexId> subset);

/// Contracts S one vertex at a time along the default topological order.
/// The frontier of open edges starts as q.dom; for each vertex its in-edges
/// are permuted to the front in polarization order, the vertex morphism is
/// applied there (tensored with the identity on the rest) and its out-edges
/// take their place. A last symmetry puts the frontier into q.cod order.
/// Throws Error(UnknownVertex | InvalidBoundaryOrder).
Morphism value(const CausalDiagram& d, std::span<const VertexId> subset, const BoundaryOrder& q);

/// Same, along an explicit linearization of S (any topological order of
/// the induced subgraph). Throws Error(InvalidBoundaryOrder) if it is not one.
Morphism value(const CausalDiagram& d, std::span<const VertexId> subset, const BoundaryOrder& q,
               std::span<const VertexId> linearization);

/// Value over all vertices: a morphism I -> I (a 1x1 scalar in MatQ).
Morphism total_value(const CausalDiagram& d);

}  // namespace causalnet
