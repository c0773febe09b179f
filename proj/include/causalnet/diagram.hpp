#pragma once

// Causal diagrams: a network with a polarization (a total order on the
// in-edges and on the out-edges of every vertex) and a valuation (objects on
// edges, morphisms on vertices) into a strict symmetric monoidal category.
// Gauge equivalence is certified by explicit per-edge isomorphisms.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "causalnet/network.hpp"
#include "causalnet/smc.hpp"

namespace causalnet {

struct VertexPolarity {
    std::vector<EdgeId> in;
    std::vector<EdgeId> out;

    friend bool operator==(const VertexPolarity&, const VertexPolarity&) = default;
};

using Polarization = std::map<VertexId, VertexPolarity>;

struct Valuation {
    std::map<EdgeId, Object> edges;
    std::map<VertexId, Morphism> vertices;
};

/// Both orders sorted by edge id.
Polarization default_polarization(const CausalNetwork& n);

/// Throws Error(PolarizationMismatch) unless every vertex's in/out order
/// lists exactly its incident edges once.
void validate_polarization(const CausalNetwork& n, const Polarization& pol);

/// Throws Error(PolarizationMismatch | BoundaryMismatch | InstanceMismatch |
/// UnknownId): every edge and vertex must be labelled, and each vertex
/// morphism must run from the tensor of its polarized in-labels to the
/// tensor of its polarized out-labels (the unit when the list is empty).
void validate_diagram(Instance instance, const CausalNetwork& n, const Polarization& pol, const Valuation& val);

class CausalDiagram {
public:
    /// Validates; see validate_diagram.
    CausalDiagram(Instance instance, CausalNetwork network, Polarization pol, Valuation val);

    Instance instance() const noexcept { return instance_; }
    const CausalNetwork& network() const noexcept { return network_; }
    const Polarization& polarization() const noexcept { return pol_; }
    const Valuation& valuation() const noexcept { return val_; }

    const std::vector<EdgeId>& in_order(const VertexId& v) const;
    const std::vector<EdgeId>& out_order(const VertexId& v) const;
    const Object& edge_object(const EdgeId& e) const;
    const Morphism& vertex_morphism(const VertexId& v) const;

    /// Labels of `edges`, in that order.
    std::vector<Object> edge_objects(std::span<const EdgeId> edges) const;
    /// Tensor of the labels of `edges`, in that order.
    Object boundary_object(std::span<const EdgeId> edges) const;

private:
    Instance instance_;
    CausalNetwork network_;
    Polarization pol_;
    Valuation val_;
};

/// Exact equality of two representatives: same network, polarization and
/// labels, vertex morphisms compared with mor_equal.
bool diagram_equal(const CausalDiagram& a, const CausalDiagram& b);

/// Per-edge isomorphisms f_e: v0(e) -> v0'(e) with stored inverses.
class GaugeWitness {
public:
    struct Component {
        Morphism forward;
        Morphism inverse;
    };

    GaugeWitness() = default;
    /// Checks both composites are identities; throws Error(InvalidWitness).
    explicit GaugeWitness(std::map<EdgeId, Component> components);
    /// Computes the inverses; throws Error(NotInvertible).
    static GaugeWitness from_forward(const std::map<EdgeId, Morphism>& forward);
    /// id_{v0(e)} on every edge of d.
    static GaugeWitness identity(const CausalDiagram& d);

    const std::map<EdgeId, Component>& components() const noexcept { return components_; }
    /// Throws Error(WitnessIncomplete).
    const Component& at(const EdgeId& e) const;

private:
    std::map<EdgeId, Component> components_;
};

bool witness_equal(const GaugeWitness& a, const GaugeWitness& b);

/// True iff at every vertex the square
///   (<p'_out^-1 ∘ p_out> ∘ ⊗f_out) ∘ v1(x) = v1'(x) ∘ (<p'_in^-1 ∘ p_in> ∘ ⊗f_in)
/// commutes exactly, the ⊗f taken in d's polarization order.
/// Throws Error(NetworkMismatch | InstanceMismatch | WitnessIncomplete).
/// A component whose boundary does not match the edge labels makes the check false.
bool gauge_check(const CausalDiagram& d, const CausalDiagram& d2, const GaugeWitness& w);

GaugeWitness witness_invert(const GaugeWitness& w);
/// Edgewise w2 ∘ w1. Throws Error(EdgeSetMismatch).
GaugeWitness witness_compose(const GaugeWitness& w2, const GaugeWitness& w1);

/// The unique diagram d' with polarization `pol` and edge labels
/// cod(f_e) that is gauge equivalent to d through w: each vertex morphism
/// becomes H_out ∘ v1(x) ∘ H_in^-1, H being the horizontal maps of the square.
/// Throws Error(PolarizationMismatch | WitnessIncomplete | BoundaryMismatch).
CausalDiagram apply_gauge(const CausalDiagram& d, const GaugeWitness& w, const Polarization& pol);

/// apply_gauge with the identity witness.
CausalDiagram repolarize(const CausalDiagram& d, const Polarization& pol);

struct WitnessSearchLimits {
    /// PermCat: longest edge word considered (all bijections are tried).
    std::size_t max_word_length = 5;
    /// Upper bound on visited partial assignments.
    std::size_t max_steps = 200000;
};

/// Bounded brute-force witness search. PermCat: every label-preserving
/// bijection per edge. MatQ: only dimensions <= 2, candidates drawn from a
/// small generating set (scalars ±1, ±2, ±1/2; invertible 2x2 matrices
/// with entries in {-1, 0, 1}). FreeSmc: pure wirings of each edge word.
/// Returns nullopt when no witness is found within the limits.
std::optional<GaugeWitness> find_gauge_witness(const CausalDiagram& d, const CausalDiagram& d2,
                                               const WitnessSearchLimits& limits = {});

}  // namespace causalnet
