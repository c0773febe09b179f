#include "causalnet/string_diagram.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "causalnet/error.hpp"

namespace causalnet {

Signature::Signature(std::vector<std::string> objects, std::vector<GeneratorSpec> generators)
    : objects_(std::move(objects)) {
    std::set<std::string> seen;
    for (const auto& o : objects_) {
        if (!seen.insert(o).second) throw Error(ErrorCode::ValidationError, "object '" + o + "' declared twice", {o});
    }
    for (auto& g : generators) {
        for (const Word* w : {&g.dom, &g.cod})
            for (const auto& o : *w)
                if (!seen.count(o)) {
                    throw Error(ErrorCode::ValidationError,
                                "generator '" + g.name + "' uses undeclared object '" + o + "'", {g.name});
                }
        std::string name = g.name;
        if (!generators_.emplace(name, std::move(g)).second) {
            throw Error(ErrorCode::ValidationError, "generator '" + name + "' declared twice", {name});
        }
    }
}

const GeneratorSpec& Signature::generator(const std::string& name) const {
    auto it = generators_.find(name);
    if (it == generators_.end()) throw Error(ErrorCode::UnknownId, "no generator '" + name + "'", {name});
    return it->second;
}

bool Signature::has_object(const std::string& name) const {
    return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

StringDiagram::StringDiagram(Word dom, Word cod, std::vector<DiagramNode> nodes, std::vector<Port> outputs)
    : dom_(std::move(dom)), cod_(std::move(cod)), nodes_(std::move(nodes)), outputs_(std::move(outputs)) {
    std::set<Port> consumed;
    // Returns the wire type at `p`, checking it is a legal source for a sink
    // belonging to node `limit` (or to the diagram outputs when limit == size).
    auto source_type = [&](const Port& p, std::size_t limit) -> const std::string& {
        if (!consumed.insert(p).second) throw Error(ErrorCode::InvalidMorphism, "a wire source is used twice");
        if (p.node == Port::kInput) {
            if (p.index >= dom_.size()) throw Error(ErrorCode::InvalidMorphism, "input port out of range");
            return dom_[p.index];
        }
        if (p.node >= limit) throw Error(ErrorCode::InvalidMorphism, "node consumes a wire from a later node");
        const auto& src = nodes_[p.node];
        if (p.index >= src.cod.size()) throw Error(ErrorCode::InvalidMorphism, "output port out of range");
        return src.cod[p.index];
    };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (node.inputs.size() != node.dom.size()) {
            throw Error(ErrorCode::InvalidMorphism, "node " + std::to_string(i) + " has wrong input count");
        }
        for (std::size_t k = 0; k < node.inputs.size(); ++k) {
            if (source_type(node.inputs[k], i) != node.dom[k]) {
                throw Error(ErrorCode::InvalidMorphism, "wire type mismatch at node " + std::to_string(i));
            }
        }
    }
    if (outputs_.size() != cod_.size()) throw Error(ErrorCode::InvalidMorphism, "output count differs from codomain");
    for (std::size_t k = 0; k < outputs_.size(); ++k) {
        if (source_type(outputs_[k], nodes_.size()) != cod_[k]) {
            throw Error(ErrorCode::InvalidMorphism, "wire type mismatch at output " + std::to_string(k));
        }
    }
    std::size_t sources = dom_.size();
    for (const auto& node : nodes_) sources += node.cod.size();
    if (consumed.size() != sources) throw Error(ErrorCode::InvalidMorphism, "some wire is left dangling");
}

StringDiagram StringDiagram::identity(Word w) {
    StringDiagram d;
    d.cod_ = w;
    d.dom_ = std::move(w);
    for (std::size_t i = 0; i < d.dom_.size(); ++i) d.outputs_.push_back(Port{Port::kInput, i});
    return d;
}

StringDiagram StringDiagram::generator(const GeneratorSpec& g) {
    StringDiagram d;
    d.dom_ = g.dom;
    d.cod_ = g.cod;
    DiagramNode node{g.name, g.dom, g.cod, {}};
    for (std::size_t i = 0; i < g.dom.size(); ++i) node.inputs.push_back(Port{Port::kInput, i});
    for (std::size_t i = 0; i < g.cod.size(); ++i) d.outputs_.push_back(Port{0, i});
    d.nodes_.push_back(std::move(node));
    return d;
}

StringDiagram StringDiagram::permutation(const Word& dom, std::span<const std::size_t> image) {
    StringDiagram d;
    d.dom_ = dom;
    d.cod_.resize(dom.size());
    d.outputs_.resize(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
        d.cod_[image[i]] = dom[i];
        d.outputs_[image[i]] = Port{Port::kInput, i};
    }
    return d;
}

StringDiagram compose(const StringDiagram& g, const StringDiagram& f) {
    if (g.dom_ != f.cod_) throw Error(ErrorCode::BoundaryMismatch, "diagram boundaries do not match");
    const std::size_t offset = f.nodes_.size();
    auto remap = [&](const Port& p) {
        return p.node == Port::kInput ? f.outputs_[p.index] : Port{p.node + offset, p.index};
    };
    StringDiagram out;
    out.dom_ = f.dom_;
    out.cod_ = g.cod_;
    out.nodes_ = f.nodes_;
    for (auto node : g.nodes_) {
        for (auto& p : node.inputs) p = remap(p);
        out.nodes_.push_back(std::move(node));
    }
    for (const auto& p : g.outputs_) out.outputs_.push_back(remap(p));
    return out;
}

StringDiagram tensor(const StringDiagram& a, const StringDiagram& b) {
    const std::size_t node_offset = a.nodes_.size();
    const std::size_t input_offset = a.dom_.size();
    auto remap = [&](const Port& p) {
        return p.node == Port::kInput ? Port{Port::kInput, p.index + input_offset}
                                      : Port{p.node + node_offset, p.index};
    };
    StringDiagram out;
    out.dom_ = a.dom_;
    out.dom_.insert(out.dom_.end(), b.dom_.begin(), b.dom_.end());
    out.cod_ = a.cod_;
    out.cod_.insert(out.cod_.end(), b.cod_.begin(), b.cod_.end());
    out.nodes_ = a.nodes_;
    for (auto node : b.nodes_) {
        for (auto& p : node.inputs) p = remap(p);
        out.nodes_.push_back(std::move(node));
    }
    out.outputs_ = a.outputs_;
    for (const auto& p : b.outputs_) out.outputs_.push_back(remap(p));
    return out;
}

namespace {

constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

struct Matching {
    std::vector<std::size_t> forward;
    std::vector<std::size_t> backward;
};

bool same_label(const DiagramNode& x, const DiagramNode& y) {
    return x.generator == y.generator && x.dom == y.dom && x.cod == y.cod;
}

// Propagates the consequences of matching node pairs in `pending`.
bool propagate(const StringDiagram& a, const StringDiagram& b, Matching& m,
               std::vector<std::pair<std::size_t, std::size_t>> pending) {
    auto link = [&](const Port& pa, const Port& pb) {
        if (pa.node == Port::kInput || pb.node == Port::kInput) return pa == pb;
        if (pa.index != pb.index) return false;
        pending.emplace_back(pa.node, pb.node);
        return true;
    };
    while (!pending.empty()) {
        auto [x, y] = pending.back();
        pending.pop_back();
        if (m.forward[x] == y) continue;
        if (m.forward[x] != kUnmatched || m.backward[y] != kUnmatched) return false;
        const auto& nx = a.nodes()[x];
        const auto& ny = b.nodes()[y];
        if (!same_label(nx, ny)) return false;
        m.forward[x] = y;
        m.backward[y] = x;
        for (std::size_t k = 0; k < nx.inputs.size(); ++k)
            if (!link(nx.inputs[k], ny.inputs[k])) return false;
    }
    return true;
}

}  // namespace

bool isomorphic(const StringDiagram& a, const StringDiagram& b) {
    if (a.dom() != b.dom() || a.cod() != b.cod() || a.nodes().size() != b.nodes().size()) return false;
    const std::size_t n = a.nodes().size();
    Matching start{std::vector<std::size_t>(n, kUnmatched), std::vector<std::size_t>(n, kUnmatched)};

    std::vector<std::pair<std::size_t, std::size_t>> seeds;
    for (std::size_t k = 0; k < a.outputs().size(); ++k) {
        const Port& pa = a.outputs()[k];
        const Port& pb = b.outputs()[k];
        if (pa.node == Port::kInput || pb.node == Port::kInput) {
            if (pa != pb) return false;
            continue;
        }
        if (pa.index != pb.index) return false;
        seeds.emplace_back(pa.node, pb.node);
    }
    if (!propagate(a, b, start, std::move(seeds))) return false;

    std::function<bool(const Matching&)> search = [&](const Matching& m) {
        auto it = std::find(m.forward.begin(), m.forward.end(), kUnmatched);
        if (it == m.forward.end()) return true;
        const std::size_t x = static_cast<std::size_t>(it - m.forward.begin());
        for (std::size_t y = 0; y < n; ++y) {
            if (m.backward[y] != kUnmatched || !same_label(a.nodes()[x], b.nodes()[y])) continue;
            Matching next = m;
            if (propagate(a, b, next, {{x, y}}) && search(next)) return true;
        }
        return false;
    };
    return search(start);
}

}  // namespace causalnet
