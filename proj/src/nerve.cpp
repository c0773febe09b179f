#include "causalnet/nerve.hpp"

#include <algorithm>
#include <set>

#include "causalnet/eval.hpp"

namespace causalnet {

namespace {

CausalNetwork rewrite_network(const CausalNetwork& n, const ElementaryMove& m) {
    try {
        return apply_move(n, m).network;
    } catch (const Error& err) {
        if (err.code() == ErrorCode::CycleCreated) throw;
        throw Error(ErrorCode::MoveInapplicable, std::string(move_name(m)) + ": " + err.what(), err.ids());
    }
}

void replace_in(std::vector<EdgeId>& order, const EdgeId& from, const EdgeId& to) {
    std::replace(order.begin(), order.end(), from, to);
}

// `order` with the members of `block` gathered, in block order, at the
// position of the first member. With `merged` set, the block collapses to it.
std::vector<EdgeId> gather(const std::vector<EdgeId>& order, const std::vector<EdgeId>& block,
                           const EdgeId* merged = nullptr) {
    const std::set<EdgeId> members(block.begin(), block.end());
    std::vector<EdgeId> out;
    bool emitted = false;
    for (const auto& e : order) {
        if (!members.count(e)) {
            out.push_back(e);
        } else if (!emitted) {
            if (merged) out.push_back(*merged);
            else out.insert(out.end(), block.begin(), block.end());
            emitted = true;
        }
    }
    return out;
}

// The merged edges listed in the order they leave their common source.
std::vector<EdgeId> block_order(const CausalDiagram& d, const MergeEdges& m) {
    const EdgeId& any = m.edges.front();
    const std::set<EdgeId> members(m.edges.begin(), m.edges.end());
    std::vector<EdgeId> block;
    for (const auto& e : d.out_order(d.network().edge(any).src))
        if (members.count(e)) block.push_back(e);
    return block;
}

struct Transport {
    const CausalDiagram& d;
    CausalNetwork out;

    CausalDiagram operator()(const Iso& m) const {
        Polarization pol;
        for (const auto& [v, p] : d.polarization()) {
            VertexPolarity q;
            for (const auto& e : p.in) q.in.push_back(m.edges.at(e));
            for (const auto& e : p.out) q.out.push_back(m.edges.at(e));
            pol.emplace(m.vertices.at(v), std::move(q));
        }
        Valuation val;
        for (const auto& [e, o] : d.valuation().edges) val.edges.emplace(m.edges.at(e), o);
        for (const auto& [v, f] : d.valuation().vertices) val.vertices.emplace(m.vertices.at(v), f);
        return CausalDiagram(d.instance(), out, std::move(pol), std::move(val));
    }

    CausalDiagram operator()(const AddVertex& m) const {
        Polarization pol = d.polarization();
        Valuation val = d.valuation();
        pol.emplace(m.vertex, VertexPolarity{});
        val.vertices.emplace(m.vertex, identity(Object::unit(d.instance())));
        return CausalDiagram(d.instance(), out, std::move(pol), std::move(val));
    }

    CausalDiagram operator()(const AddEdge& m) const {
        Polarization pol = d.polarization();
        Valuation val = d.valuation();
        auto& outs = pol.at(m.src).out;
        outs.insert(outs.begin(), m.edge);
        auto& ins = pol.at(m.tgt).in;
        ins.insert(ins.begin(), m.edge);
        val.edges.emplace(m.edge, Object::unit(d.instance()));
        return CausalDiagram(d.instance(), out, std::move(pol), std::move(val));
    }

    CausalDiagram operator()(const Subdivide& m) const {
        const Edge& old = d.network().edge(m.edge);
        const auto& [e1, e2] = m.new_edges;
        Polarization pol = d.polarization();
        Valuation val = d.valuation();
        replace_in(pol.at(old.src).out, m.edge, e1);
        replace_in(pol.at(old.tgt).in, m.edge, e2);
        pol.emplace(m.new_vertex, VertexPolarity{{e1}, {e2}});
        const Object label = d.edge_object(m.edge);
        val.edges.erase(m.edge);
        val.edges.insert_or_assign(e1, label);
        val.edges.insert_or_assign(e2, label);
        val.vertices.emplace(m.new_vertex, identity(label));
        return CausalDiagram(d.instance(), out, std::move(pol), std::move(val));
    }

    CausalDiagram operator()(const MergeEdges& m) const {
        const Instance inst = d.instance();
        const Edge& any = d.network().edge(m.edges.front());
        const auto block = block_order(d, m);
        Polarization pol = d.polarization();
        Valuation val = d.valuation();

        // Source: make the block contiguous on the codomain side.
        const auto& out_old = d.out_order(any.src);
        const auto out_arranged = gather(out_old, block);
        Morphism p_out = perm_to_symmetry(inst, reorder_permutation(out_old, out_arranged), d.edge_objects(out_old));
        val.vertices.insert_or_assign(any.src, compose_mor(p_out, d.vertex_morphism(any.src)));
        pol.at(any.src).out = gather(out_old, block, &m.merged);

        // Target: same block order on the domain side.
        const auto& in_old = d.in_order(any.tgt);
        const auto in_arranged = gather(in_old, block);
        Morphism q_inv = perm_to_symmetry(inst, reorder_permutation(in_arranged, in_old), d.edge_objects(in_arranged));
        val.vertices.insert_or_assign(any.tgt, compose_mor(d.vertex_morphism(any.tgt), q_inv));
        pol.at(any.tgt).in = gather(in_old, block, &m.merged);

        const Object label = d.boundary_object(block);
        for (const auto& e : m.edges) val.edges.erase(e);
        val.edges.insert_or_assign(m.merged, label);
        return CausalDiagram(inst, out, std::move(pol), std::move(val));
    }

    CausalDiagram operator()(const ShrinkVertices& m) const {
        const BoundaryOrder q = canonical_boundary_order(d, m.vertices);
        Morphism contracted = value(d, m.vertices, q);
        const auto internal = induced_boundary(d.network(), m.vertices).internal;
        Polarization pol = d.polarization();
        Valuation val = d.valuation();
        for (const auto& v : m.vertices) {
            pol.erase(v);
            val.vertices.erase(v);
        }
        for (const auto& e : internal) val.edges.erase(e);
        pol.insert_or_assign(m.new_vertex, VertexPolarity{q.dom, q.cod});
        val.vertices.insert_or_assign(m.new_vertex, std::move(contracted));
        return CausalDiagram(d.instance(), out, std::move(pol), std::move(val));
    }
};

}  // namespace

CausalDiagram nerve_move(const CausalDiagram& d, const ElementaryMove& m) {
    Transport t{d, rewrite_network(d.network(), m)};
    return std::visit(t, m);
}

CausalDiagram nerve_moves(const CausalDiagram& d, std::span<const ElementaryMove> moves) {
    CausalDiagram acc = d;
    for (const auto& m : moves) acc = nerve_move(acc, m);
    return acc;
}

CausalDiagram nerve_apply(const CausalDiagram& d, const PathFunctor& f) {
    if (!(f.source() == d.network())) {
        throw Error(ErrorCode::NetworkMismatch, "functor source is not the diagram's network");
    }
    const auto moves = decompose(f);
    return nerve_moves(d, moves);
}

GaugeWitness nerve_witness(const CausalDiagram& d, const CausalDiagram& d2, const GaugeWitness& w,
                           const ElementaryMove& m) {
    if (!(d.network() == d2.network())) throw Error(ErrorCode::NetworkMismatch, "diagrams live on different networks");
    rewrite_network(d.network(), m);
    using Component = GaugeWitness::Component;
    std::map<EdgeId, Component> comps = w.components();

    struct Visitor {
        const CausalDiagram& d;
        const CausalDiagram& d2;
        std::map<EdgeId, Component>& comps;

        void operator()(const Iso& m) const {
            std::map<EdgeId, Component> out;
            for (auto& [e, c] : comps) out.emplace(m.edges.at(e), c);
            comps = std::move(out);
        }
        void operator()(const AddVertex&) const {}
        void operator()(const AddEdge& m) const {
            Morphism id = identity(Object::unit(d.instance()));
            comps.insert_or_assign(m.edge, Component{id, id});
        }
        void operator()(const Subdivide& m) const {
            Component c = comps.at(m.edge);
            comps.erase(m.edge);
            comps.insert_or_assign(m.new_edges[0], c);
            comps.insert_or_assign(m.new_edges[1], c);
        }
        void operator()(const MergeEdges& m) const {
            const Instance inst = d.instance();
            const auto block = block_order(d, m);
            const auto block2 = block_order(d2, m);
            std::vector<Morphism> fwd, inv;
            for (const auto& e : block) {
                fwd.push_back(comps.at(e).forward);
                inv.push_back(comps.at(e).inverse);
            }
            Morphism p = perm_to_symmetry(inst, reorder_permutation(block, block2), d2.edge_objects(block));
            Morphism p_inv = perm_to_symmetry(inst, reorder_permutation(block2, block), d2.edge_objects(block2));
            Component merged{compose_mor(p, tensor_mors(inst, fwd)), compose_mor(tensor_mors(inst, inv), p_inv)};
            for (const auto& e : m.edges) comps.erase(e);
            comps.insert_or_assign(m.merged, std::move(merged));
        }
        void operator()(const ShrinkVertices& m) const {
            for (const auto& e : induced_boundary(d.network(), m.vertices).internal) comps.erase(e);
        }
    };
    std::visit(Visitor{d, d2, comps}, m);
    return GaugeWitness(std::move(comps));
}

}  // namespace causalnet
