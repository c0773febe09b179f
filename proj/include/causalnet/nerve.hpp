#pragma once

// Transport of causal diagrams along graph deformations: each elementary
// move induces a map on diagrams, and an arbitrary path functor acts through
// its decomposition into moves.

#include <span>

#include "causalnet/diagram.hpp"
#include "causalnet/moves.hpp"

namespace causalnet {

/// Rewrites the diagram along one move:
///   Iso              relabel polarization and valuation;
///   AddVertex        new vertex carries id_I;
///   AddEdge          new edge carries I, first in out(src) and in(tgt);
///   Subdivide        both halves carry the old label, the new vertex its identity;
///   MergeEdges       the merged edge carries the tensor of the old labels in
///                    the source's out-order, endpoints absorb the symmetries
///                    that make the block contiguous;
///   ShrinkVertices   the new vertex carries the value of the subset under
///                    canonical_boundary_order, which also becomes its polarization.
/// Throws Error(MoveInapplicable | CycleCreated).
CausalDiagram nerve_move(const CausalDiagram& d, const ElementaryMove& m);

CausalDiagram nerve_moves(const CausalDiagram& d, std::span<const ElementaryMove> moves);

/// Folds nerve_move over decompose(f).
/// Throws Error(NetworkMismatch | NotDecomposable).
CausalDiagram nerve_apply(const CausalDiagram& d, const PathFunctor& f);

/// Given w witnessing d ~ d2, the witness relating nerve_move(d, m) and
/// nerve_move(d2, m): relabelled / restricted components, id_I on an added
/// edge, f_e on both halves of a subdivided edge, and on a merged edge the
/// tensor of the old components followed by the symmetry between the two
/// diagrams' block orders.
GaugeWitness nerve_witness(const CausalDiagram& d, const CausalDiagram& d2, const GaugeWitness& w,
                           const ElementaryMove& m);

}  // namespace causalnet
