#pragma once

// Morphisms of the free strict symmetric monoidal category on a signature,
// represented as anchored string diagrams. Two diagrams denote the same
// morphism iff they are isomorphic as boundary-anchored labelled graphs.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace causalnet {

using Word = std::vector<std::string>;

struct GeneratorSpec {
    std::string name;
    Word dom;
    Word cod;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Generating objects and morphisms. Throws Error(ValidationError) on
/// duplicate names or generator boundaries using undeclared objects.
class Signature {
public:
    Signature() = default;
    Signature(std::vector<std::string> objects, std::vector<GeneratorSpec> generators);

    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::map<std::string, GeneratorSpec>& generators() const noexcept { return generators_; }
    /// Throws Error(UnknownId).
    const GeneratorSpec& generator(const std::string& name) const;
    bool has_object(const std::string& name) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<std::string> objects_;
    std::map<std::string, GeneratorSpec> generators_;
};

/// Source of a wire: a diagram input (node == kInput) or an output port of
/// an inner node.
struct Port {
    static constexpr std::size_t kInput = static_cast<std::size_t>(-1);

    std::size_t node = kInput;
    std::size_t index = 0;

    friend bool operator==(const Port&, const Port&) = default;
    friend auto operator<=>(const Port&, const Port&) = default;
};

struct DiagramNode {
    std::string generator;
    Word dom;
    Word cod;
    /// One source per input port; sources must precede the node.
    std::vector<Port> inputs;

    friend bool operator==(const DiagramNode&, const DiagramNode&) = default;
};

class StringDiagram {
public:
    /// Checks typing, ordering and linearity (every source consumed exactly
    /// once); throws Error(InvalidMorphism).
    StringDiagram(Word dom, Word cod, std::vector<DiagramNode> nodes, std::vector<Port> outputs);

    static StringDiagram identity(Word w);
    static StringDiagram generator(const GeneratorSpec& g);
    /// Pure wiring: input i is routed to output image[i].
    static StringDiagram permutation(const Word& dom, std::span<const std::size_t> image);

    const Word& dom() const noexcept { return dom_; }
    const Word& cod() const noexcept { return cod_; }
    const std::vector<DiagramNode>& nodes() const noexcept { return nodes_; }
    const std::vector<Port>& outputs() const noexcept { return outputs_; }

    /// g ∘ f: grafts g's inputs onto f's outputs.
    friend StringDiagram compose(const StringDiagram& g, const StringDiagram& f);
    /// Side-by-side juxtaposition.
    friend StringDiagram tensor(const StringDiagram& a, const StringDiagram& b);

private:
    StringDiagram() = default;

    Word dom_;
    Word cod_;
    std::vector<DiagramNode> nodes_;
    std::vector<Port> outputs_;
};

/// Boundary-anchored isomorphism test by backtracking with constraint
/// propagation. Exponential in the worst case; meant for diagrams of a
/// dozen or so inner nodes.
bool isomorphic(const StringDiagram& a, const StringDiagram& b);

}  // namespace causalnet
