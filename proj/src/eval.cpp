#include "causalnet/eval.hpp"

#include <algorithm>
#include <set>

namespace causalnet {

namespace {

std::set<VertexId> as_set(const CausalNetwork& n, std::span<const VertexId> subset) {
    std::set<VertexId> s;
    for (const auto& v : subset) {
        if (!n.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "no vertex '" + v + "'", {v});
        s.insert(v);
    }
    return s;
}

void require_permutation_of(const std::vector<EdgeId>& order, const std::vector<EdgeId>& sorted, const char* what) {
    std::vector<EdgeId> copy = order;
    std::sort(copy.begin(), copy.end());
    if (copy != sorted) {
        throw Error(ErrorCode::InvalidBoundaryOrder, std::string(what) + " order must list exactly the boundary edges once");
    }
}

}  // namespace

InducedBoundary induced_boundary(const CausalNetwork& n, std::span<const VertexId> subset) {
    const auto s = as_set(n, subset);
    InducedBoundary b;
    for (const auto& e : n.edges()) {
        const bool from = s.count(e.src) != 0;
        const bool to = s.count(e.tgt) != 0;
        if (from && to) b.internal.push_back(e.id);
        else if (to) b.dom.push_back(e.id);
        else if (from) b.cod.push_back(e.id);
    }
    return b;
}

BoundaryOrder canonical_boundary_order(const CausalDiagram& d, std::span<const VertexId> subset) {
    const auto& n = d.network();
    const auto s = as_set(n, subset);
    BoundaryOrder q;
    for (const auto& v : n.topological_order()) {
        if (!s.count(v)) continue;
        for (const auto& e : d.in_order(v))
            if (!s.count(n.edge(e).src)) q.dom.push_back(e);
        for (const auto& e : d.out_order(v))
            if (!s.count(n.edge(e).tgt)) q.cod.push_back(e);
    }
    return q;
}

Morphism value(const CausalDiagram& d, std::span<const VertexId> subset, const BoundaryOrder& q) {
    const auto s = as_set(d.network(), subset);
    std::vector<VertexId> order;
    for (const auto& v : d.network().topological_order())
        if (s.count(v)) order.push_back(v);
    return value(d, subset, q, order);
}

Morphism value(const CausalDiagram& d, std::span<const VertexId> subset, const BoundaryOrder& q,
               std::span<const VertexId> linearization) {
    const auto& n = d.network();
    const auto s = as_set(n, subset);
    const auto boundary = induced_boundary(n, subset);
    require_permutation_of(q.dom, boundary.dom, "dom");
    require_permutation_of(q.cod, boundary.cod, "cod");

    std::set<VertexId> done;
    for (const auto& v : linearization) {
        if (!s.count(v) || !done.insert(v).second) {
            throw Error(ErrorCode::InvalidBoundaryOrder, "linearization must list every vertex of the subset once");
        }
    }
    if (done.size() != s.size()) {
        throw Error(ErrorCode::InvalidBoundaryOrder, "linearization must list every vertex of the subset once");
    }

    const Instance inst = d.instance();
    std::vector<EdgeId> frontier = q.dom;
    Morphism acc = identity(d.boundary_object(frontier));
    for (const auto& x : linearization) {
        const auto& ins = d.in_order(x);
        // Layout after the permutation: x's in-edges first, then the rest in place.
        std::vector<EdgeId> arranged = ins;
        std::vector<EdgeId> rest;
        for (const auto& e : frontier) {
            if (std::find(ins.begin(), ins.end(), e) == ins.end()) rest.push_back(e);
        }
        if (rest.size() + ins.size() != frontier.size()) {
            throw Error(ErrorCode::InvalidBoundaryOrder,
                        "vertex '" + x + "' is placed before one of its predecessors", {x});
        }
        arranged.insert(arranged.end(), rest.begin(), rest.end());
        const auto perm = reorder_permutation(frontier, arranged);
        acc = compose_mor(perm_to_symmetry(inst, perm, d.edge_objects(frontier)), acc);
        const Morphism layer = tensor_mor(d.vertex_morphism(x), identity(d.boundary_object(rest)));
        acc = compose_mor(layer, acc);

        frontier = d.out_order(x);
        frontier.insert(frontier.end(), rest.begin(), rest.end());
    }
    const auto perm = reorder_permutation(frontier, q.cod);
    return compose_mor(perm_to_symmetry(inst, perm, d.edge_objects(frontier)), acc);
}

Morphism total_value(const CausalDiagram& d) {
    return value(d, d.network().vertices(), BoundaryOrder{});
}

}  // namespace causalnet
