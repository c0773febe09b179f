#include "causalnet/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace causalnet {

Polarization default_polarization(const CausalNetwork& n) {
    Polarization pol;
    for (const auto& v : n.vertices()) pol[v] = VertexPolarity{n.in_edges(v), n.out_edges(v)};
    return pol;
}

void validate_polarization(const CausalNetwork& n, const Polarization& pol) {
    for (const auto& [v, _] : pol) {
        if (!n.has_vertex(v)) throw Error(ErrorCode::PolarizationMismatch, "polarization names unknown vertex '" + v + "'", {v});
    }
    auto same_set = [](std::vector<EdgeId> order, const std::vector<EdgeId>& sorted) {
        std::sort(order.begin(), order.end());
        return order == sorted;  // also rejects repeats
    };
    for (const auto& v : n.vertices()) {
        auto it = pol.find(v);
        if (it == pol.end()) throw Error(ErrorCode::PolarizationMismatch, "vertex '" + v + "' has no polarization", {v});
        if (!same_set(it->second.in, n.in_edges(v))) {
            throw Error(ErrorCode::PolarizationMismatch, "in-order of '" + v + "' must list its in-edges exactly once", {v});
        }
        if (!same_set(it->second.out, n.out_edges(v))) {
            throw Error(ErrorCode::PolarizationMismatch, "out-order of '" + v + "' must list its out-edges exactly once", {v});
        }
    }
}

void validate_diagram(Instance instance, const CausalNetwork& n, const Polarization& pol, const Valuation& val) {
    validate_polarization(n, pol);
    for (const auto& [e, o] : val.edges) {
        if (!n.has_edge(e)) throw Error(ErrorCode::UnknownId, "valuation labels unknown edge '" + e + "'", {e});
        if (o.instance() != instance) throw Error(ErrorCode::InstanceMismatch, "edge '" + e + "' is labelled in another instance", {e});
    }
    for (const auto& [v, m] : val.vertices) {
        if (!n.has_vertex(v)) throw Error(ErrorCode::UnknownId, "valuation labels unknown vertex '" + v + "'", {v});
        if (m.instance() != instance) throw Error(ErrorCode::InstanceMismatch, "vertex '" + v + "' is labelled in another instance", {v});
    }
    for (const auto& e : n.edges()) {
        if (!val.edges.count(e.id)) throw Error(ErrorCode::UnknownId, "edge '" + e.id + "' has no label", {e.id});
    }
    auto tensor_of = [&](const std::vector<EdgeId>& order) {
        Object acc = Object::unit(instance);
        for (const auto& e : order) acc = tensor_obj(acc, val.edges.at(e));
        return acc;
    };
    for (const auto& v : n.vertices()) {
        auto it = val.vertices.find(v);
        if (it == val.vertices.end()) throw Error(ErrorCode::UnknownId, "vertex '" + v + "' has no morphism", {v});
        const auto& p = pol.at(v);
        Object dom = tensor_of(p.in);
        Object cod = tensor_of(p.out);
        if (!(it->second.dom() == dom)) {
            throw Error(ErrorCode::BoundaryMismatch,
                        "vertex '" + v + "': expected domain " + describe(dom) + ", found " + describe(it->second.dom()), {v});
        }
        if (!(it->second.cod() == cod)) {
            throw Error(ErrorCode::BoundaryMismatch,
                        "vertex '" + v + "': expected codomain " + describe(cod) + ", found " + describe(it->second.cod()), {v});
        }
    }
}

CausalDiagram::CausalDiagram(Instance instance, CausalNetwork network, Polarization pol, Valuation val)
    : instance_(instance), network_(std::move(network)), pol_(std::move(pol)), val_(std::move(val)) {
    validate_diagram(instance_, network_, pol_, val_);
}

const std::vector<EdgeId>& CausalDiagram::in_order(const VertexId& v) const {
    auto it = pol_.find(v);
    if (it == pol_.end()) throw Error(ErrorCode::UnknownVertex, "no vertex '" + v + "'", {v});
    return it->second.in;
}

const std::vector<EdgeId>& CausalDiagram::out_order(const VertexId& v) const {
    auto it = pol_.find(v);
    if (it == pol_.end()) throw Error(ErrorCode::UnknownVertex, "no vertex '" + v + "'", {v});
    return it->second.out;
}

const Object& CausalDiagram::edge_object(const EdgeId& e) const {
    auto it = val_.edges.find(e);
    if (it == val_.edges.end()) throw Error(ErrorCode::UnknownId, "no edge '" + e + "'", {e});
    return it->second;
}

const Morphism& CausalDiagram::vertex_morphism(const VertexId& v) const {
    auto it = val_.vertices.find(v);
    if (it == val_.vertices.end()) throw Error(ErrorCode::UnknownVertex, "no vertex '" + v + "'", {v});
    return it->second;
}

std::vector<Object> CausalDiagram::edge_objects(std::span<const EdgeId> edges) const {
    std::vector<Object> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(edge_object(e));
    return out;
}

Object CausalDiagram::boundary_object(std::span<const EdgeId> edges) const {
    return tensor_objs(instance_, edge_objects(edges));
}

bool diagram_equal(const CausalDiagram& a, const CausalDiagram& b) {
    if (a.instance() != b.instance() || !(a.network() == b.network()) || a.polarization() != b.polarization()) {
        return false;
    }
    if (a.valuation().edges != b.valuation().edges) return false;
    for (const auto& [v, m] : a.valuation().vertices) {
        if (!mor_equal(m, b.vertex_morphism(v))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Witnesses

GaugeWitness::GaugeWitness(std::map<EdgeId, Component> components) : components_(std::move(components)) {
    for (const auto& [e, c] : components_) {
        bool ok = c.forward.instance() == c.inverse.instance() && c.forward.dom() == c.inverse.cod() &&
                  c.forward.cod() == c.inverse.dom() &&
                  mor_equal(compose_mor(c.inverse, c.forward), causalnet::identity(c.forward.dom())) &&
                  mor_equal(compose_mor(c.forward, c.inverse), causalnet::identity(c.forward.cod()));
        if (!ok) throw Error(ErrorCode::InvalidWitness, "component on edge '" + e + "' is not a two-sided inverse pair", {e});
    }
}

GaugeWitness GaugeWitness::from_forward(const std::map<EdgeId, Morphism>& forward) {
    std::map<EdgeId, Component> components;
    for (const auto& [e, f] : forward) {
        auto inv = invert_mor(f);
        if (!inv) throw Error(ErrorCode::NotInvertible, "component on edge '" + e + "' is not invertible", {e});
        components.emplace(e, Component{f, std::move(*inv)});
    }
    return GaugeWitness(std::move(components));
}

GaugeWitness GaugeWitness::identity(const CausalDiagram& d) {
    std::map<EdgeId, Component> components;
    for (const auto& [e, o] : d.valuation().edges) {
        Morphism id = causalnet::identity(o);
        components.emplace(e, Component{id, id});
    }
    GaugeWitness w;
    w.components_ = std::move(components);
    return w;
}

const GaugeWitness::Component& GaugeWitness::at(const EdgeId& e) const {
    auto it = components_.find(e);
    if (it == components_.end()) throw Error(ErrorCode::WitnessIncomplete, "witness has no component on edge '" + e + "'", {e});
    return it->second;
}

bool witness_equal(const GaugeWitness& a, const GaugeWitness& b) {
    if (a.components().size() != b.components().size()) return false;
    for (const auto& [e, c] : a.components()) {
        auto it = b.components().find(e);
        if (it == b.components().end()) return false;
        if (c.forward.instance() != it->second.forward.instance()) return false;
        if (!mor_equal(c.forward, it->second.forward) || !mor_equal(c.inverse, it->second.inverse)) return false;
    }
    return true;
}

GaugeWitness witness_invert(const GaugeWitness& w) {
    std::map<EdgeId, GaugeWitness::Component> out;
    for (const auto& [e, c] : w.components()) out.emplace(e, GaugeWitness::Component{c.inverse, c.forward});
    return GaugeWitness(std::move(out));
}

GaugeWitness witness_compose(const GaugeWitness& w2, const GaugeWitness& w1) {
    if (w1.components().size() != w2.components().size()) {
        throw Error(ErrorCode::EdgeSetMismatch, "witnesses cover different edge sets");
    }
    std::map<EdgeId, GaugeWitness::Component> out;
    for (const auto& [e, c1] : w1.components()) {
        auto it = w2.components().find(e);
        if (it == w2.components().end()) throw Error(ErrorCode::EdgeSetMismatch, "edge '" + e + "' missing from second witness", {e});
        const auto& c2 = it->second;
        out.emplace(e, GaugeWitness::Component{compose_mor(c2.forward, c1.forward), compose_mor(c1.inverse, c2.inverse)});
    }
    return GaugeWitness(std::move(out));
}

// ---------------------------------------------------------------------------
// The gauge square

namespace {

using ComponentLookup = std::function<const GaugeWitness::Component&(const EdgeId&)>;

// <p'^-1 ∘ p> ∘ (⊗ f_e over old_order): tensor of labels in old order -> new order.
Morphism horizontal(Instance inst, const std::vector<EdgeId>& old_order, const std::vector<EdgeId>& new_order,
                    const ComponentLookup& component) {
    std::vector<Morphism> fs;
    std::vector<Object> targets;
    for (const auto& e : old_order) {
        const auto& c = component(e);
        fs.push_back(c.forward);
        targets.push_back(c.forward.cod());
    }
    Morphism perm = perm_to_symmetry(inst, reorder_permutation(old_order, new_order), targets);
    return compose_mor(perm, tensor_mors(inst, fs));
}

// Inverse of `horizontal`.
Morphism horizontal_inverse(Instance inst, const std::vector<EdgeId>& old_order, const std::vector<EdgeId>& new_order,
                            const ComponentLookup& component) {
    std::vector<Morphism> invs;
    for (const auto& e : old_order) invs.push_back(component(e).inverse);
    std::vector<Object> new_objs;
    for (const auto& e : new_order) new_objs.push_back(component(e).forward.cod());
    Morphism perm = perm_to_symmetry(inst, reorder_permutation(new_order, old_order), new_objs);
    return compose_mor(tensor_mors(inst, invs), perm);
}

bool components_typed(const CausalDiagram& d, const CausalDiagram& d2, const std::vector<EdgeId>& edges,
                      const ComponentLookup& component) {
    for (const auto& e : edges) {
        const auto& c = component(e);
        if (c.forward.instance() != d.instance()) return false;
        if (!(c.forward.dom() == d.edge_object(e)) || !(c.forward.cod() == d2.edge_object(e))) return false;
    }
    return true;
}

bool square_commutes(const CausalDiagram& d, const CausalDiagram& d2, const VertexId& x,
                     const ComponentLookup& component) {
    const auto& in_old = d.in_order(x);
    const auto& out_old = d.out_order(x);
    if (!components_typed(d, d2, in_old, component) || !components_typed(d, d2, out_old, component)) return false;
    const Instance inst = d.instance();
    try {
        Morphism top = horizontal(inst, in_old, d2.in_order(x), component);
        Morphism bottom = horizontal(inst, out_old, d2.out_order(x), component);
        Morphism lhs = compose_mor(bottom, d.vertex_morphism(x));
        Morphism rhs = compose_mor(d2.vertex_morphism(x), top);
        return mor_equal(lhs, rhs);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::BoundaryMismatch) return false;
        throw;
    }
}

void require_same_network(const CausalDiagram& d, const CausalDiagram& d2) {
    if (!(d.network() == d2.network())) throw Error(ErrorCode::NetworkMismatch, "diagrams live on different networks");
    if (d.instance() != d2.instance()) throw Error(ErrorCode::InstanceMismatch, "diagrams use different instances");
}

}  // namespace

bool gauge_check(const CausalDiagram& d, const CausalDiagram& d2, const GaugeWitness& w) {
    require_same_network(d, d2);
    for (const auto& e : d.network().edges()) w.at(e.id);
    for (const auto& [e, _] : w.components()) {
        if (!d.network().has_edge(e)) throw Error(ErrorCode::WitnessIncomplete, "witness names unknown edge '" + e + "'", {e});
    }
    ComponentLookup lookup = [&w](const EdgeId& e) -> const GaugeWitness::Component& { return w.at(e); };
    for (const auto& x : d.network().vertices()) {
        if (!square_commutes(d, d2, x, lookup)) return false;
    }
    return true;
}

CausalDiagram apply_gauge(const CausalDiagram& d, const GaugeWitness& w, const Polarization& pol) {
    validate_polarization(d.network(), pol);
    ComponentLookup lookup = [&w](const EdgeId& e) -> const GaugeWitness::Component& { return w.at(e); };
    Valuation val;
    for (const auto& e : d.network().edges()) {
        const auto& c = w.at(e.id);
        if (!(c.forward.dom() == d.edge_object(e.id))) {
            throw Error(ErrorCode::BoundaryMismatch, "witness on edge '" + e.id + "' does not start at its label", {e.id});
        }
        val.edges.emplace(e.id, c.forward.cod());
    }
    const Instance inst = d.instance();
    for (const auto& x : d.network().vertices()) {
        const auto& p = pol.at(x);
        Morphism out = horizontal(inst, d.out_order(x), p.out, lookup);
        Morphism in_inv = horizontal_inverse(inst, d.in_order(x), p.in, lookup);
        val.vertices.emplace(x, compose_mor(out, compose_mor(d.vertex_morphism(x), in_inv)));
    }
    return CausalDiagram(inst, d.network(), pol, std::move(val));
}

CausalDiagram repolarize(const CausalDiagram& d, const Polarization& pol) {
    return apply_gauge(d, GaugeWitness::identity(d), pol);
}

// ---------------------------------------------------------------------------
// Bounded witness search

namespace {

std::vector<Morphism> matq_candidates(std::uint64_t dim) {
    std::vector<Morphism> out;
    if (dim == 1) {
        for (const char* s : {"1", "-1", "2", "-2", "1/2", "-1/2"}) {
            out.push_back(Morphism::matrix(Matrix({{parse_rational(s)}})));
        }
    } else if (dim == 2) {
        const int values[] = {0, 1, -1};
        for (int a : values)
            for (int b : values)
                for (int c : values)
                    for (int e : values) {
                        if (a * e - b * c == 0) continue;
                        out.push_back(Morphism::matrix(Matrix({{Rational(a), Rational(b)}, {Rational(c), Rational(e)}})));
                    }
    }
    return out;
}

std::vector<Morphism> wiring_candidates(Instance inst, const Word& from, const Word& to, std::size_t max_len) {
    std::vector<Morphism> out;
    if (from.size() != to.size() || from.size() > max_len) return out;
    std::vector<std::size_t> image(from.size());
    std::iota(image.begin(), image.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; ok && i < from.size(); ++i) ok = to[image[i]] == from[i];
        if (!ok) continue;
        if (inst == Instance::PermCat) out.push_back(Morphism::permutation(from, image));
        else out.push_back(Morphism::diagram(StringDiagram::permutation(from, image)));
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

}  // namespace

std::optional<GaugeWitness> find_gauge_witness(const CausalDiagram& d, const CausalDiagram& d2,
                                               const WitnessSearchLimits& limits) {
    require_same_network(d, d2);
    const auto& net = d.network();
    const auto& edges = net.edges();

    std::vector<std::vector<Morphism>> candidates;
    for (const auto& e : edges) {
        const Object& a = d.edge_object(e.id);
        const Object& b = d2.edge_object(e.id);
        if (d.instance() == Instance::MatQ) {
            if (a.dim() != b.dim()) return std::nullopt;
            candidates.push_back(matq_candidates(a.dim()));
        } else {
            candidates.push_back(wiring_candidates(d.instance(), a.word(), b.word(), limits.max_word_length));
        }
        if (candidates.back().empty()) return std::nullopt;
    }

    // A vertex's square is checked once its last incident edge is assigned.
    std::map<EdgeId, std::size_t> position;
    for (std::size_t i = 0; i < edges.size(); ++i) position[edges[i].id] = i;
    std::vector<std::vector<VertexId>> ready_after(edges.size());
    std::map<EdgeId, GaugeWitness::Component> assigned;
    ComponentLookup lookup = [&assigned](const EdgeId& e) -> const GaugeWitness::Component& {
        auto it = assigned.find(e);
        if (it == assigned.end()) throw Error(ErrorCode::WitnessIncomplete, "unassigned edge '" + e + "'", {e});
        return it->second;
    };
    for (const auto& x : net.vertices()) {
        std::size_t last = 0;
        bool any = false;
        for (const auto* list : {&net.in_edges(x), &net.out_edges(x)})
            for (const auto& e : *list) {
                last = std::max(last, position[e]);
                any = true;
            }
        if (any) {
            ready_after[last].push_back(x);
        } else if (!square_commutes(d, d2, x, lookup)) {
            return std::nullopt;
        }
    }

    std::size_t steps = 0;
    std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
        if (k == edges.size()) return true;
        for (const auto& f : candidates[k]) {
            if (++steps > limits.max_steps) return false;
            auto inv = invert_mor(f);
            assigned.insert_or_assign(edges[k].id, GaugeWitness::Component{f, *inv});
            bool ok = true;
            for (const auto& x : ready_after[k]) {
                if (!square_commutes(d, d2, x, lookup)) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(k + 1)) return true;
        }
        assigned.erase(edges[k].id);
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return GaugeWitness(std::move(assigned));
}

}  // namespace causalnet
