#pragma once

// Strict symmetric monoidal categories used to label causal diagrams.
//
// Three instances are provided behind one value interface:
//   MatQ     objects are dimensions n >= 1 (unit 1), morphisms are exact
//            rational matrices, tensor is the Kronecker product.
//   PermCat  objects are words, morphisms are position bijections.
//   FreeSmc  objects are words over a signature, morphisms are string
//            diagrams compared up to isomorphism.
// Strictness means associators and unitors are identities and are never
// materialised; tensor of objects is concatenation / multiplication.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "causalnet/error.hpp"
#include "causalnet/matrix.hpp"
#include "causalnet/string_diagram.hpp"

namespace causalnet {

enum class Instance { MatQ, PermCat, FreeSmc };

std::string_view to_string(Instance i) noexcept;
/// "matq" | "perm" | "free". Throws Error(ParseError).
Instance parse_instance(std::string_view text);

class Object {
public:
    /// MatQ object; throws Error(InvalidMorphism) for dimension 0.
    static Object dimension(std::uint64_t dim);
    /// PermCat / FreeSmc object.
    static Object word(Instance instance, Word w);
    static Object unit(Instance instance);

    Instance instance() const noexcept { return instance_; }
    std::uint64_t dim() const;
    const Word& word() const;
    bool is_unit() const noexcept;

    friend bool operator==(const Object&, const Object&) = default;

private:
    Object(Instance instance, std::uint64_t dim, Word w) : instance_(instance), dim_(dim), word_(std::move(w)) {}

    Instance instance_;
    std::uint64_t dim_ = 1;
    Word word_;
};

std::string describe(const Object& o);

/// PermCat morphism: source position i lands on target position image[i].
struct Permutation {
    Word dom;
    std::vector<std::size_t> image;

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

class Morphism {
public:
    static Morphism matrix(Matrix m);
    /// Throws Error(NotABijection).
    static Morphism permutation(Word dom, std::vector<std::size_t> image);
    static Morphism diagram(StringDiagram d);
    /// A single generator of a FreeSmc signature.
    static Morphism generator(const Signature& sig, const std::string& name);

    Instance instance() const noexcept { return dom_.instance(); }
    const Object& dom() const noexcept { return dom_; }
    const Object& cod() const noexcept { return cod_; }

    /// Payload accessors; throw Error(InstanceMismatch) for the wrong instance.
    const Matrix& as_matrix() const;
    const Permutation& as_permutation() const;
    const StringDiagram& as_diagram() const;

private:
    using Payload = std::variant<Matrix, Permutation, StringDiagram>;
    Morphism(Object dom, Object cod, Payload payload)
        : dom_(std::move(dom)), cod_(std::move(cod)), payload_(std::move(payload)) {}

    Object dom_;
    Object cod_;
    Payload payload_;
};

/// Throws Error(InstanceMismatch).
Object tensor_obj(const Object& a, const Object& b);
/// Tensor of a list; the unit when the list is empty.
Object tensor_objs(Instance instance, std::span<const Object> objs);

Morphism identity(const Object& a);

/// g ∘ f. Throws Error(InstanceMismatch | BoundaryMismatch).
Morphism compose_mor(const Morphism& g, const Morphism& f);
Morphism tensor_mor(const Morphism& f, const Morphism& g);
/// Tensor of a list; id_I when the list is empty.
Morphism tensor_mors(Instance instance, std::span<const Morphism> mors);

/// Braiding a ⊗ b -> b ⊗ a. In MatQ this is the commutation matrix sending
/// e_i ⊗ e_j to e_j ⊗ e_i.
Morphism symmetry(const Object& a, const Object& b);

/// The symmetry ⊗objs -> ⊗(objs permuted) moving factor i to position
/// perm[i], built directly from the permutation.
/// Throws Error(NotABijection | InstanceMismatch).
Morphism perm_to_symmetry(Instance instance, std::span<const std::size_t> perm, std::span<const Object> objs);

/// The same symmetry built the long way: each entry k of `swaps` is the
/// adjacent transposition of positions k and k+1, applied in order, and
/// realised as id ⊗ B ⊗ id.
Morphism symmetry_by_transpositions(Instance instance, std::span<const std::size_t> swaps,
                                    std::span<const Object> objs);

/// Bubble-sort factorisation of `perm` into adjacent transpositions, in
/// application order. Throws Error(NotABijection).
std::vector<std::size_t> adjacent_transpositions(std::span<const std::size_t> perm);

/// Throws Error(NotABijection) unless perm is a bijection of {0..n-1}.
void check_bijection(std::span<const std::size_t> perm, std::size_t n);
std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm);
/// Where each element of `from` sits in `to`; both must list the same ids.
/// Throws Error(NotABijection).
std::vector<std::size_t> reorder_permutation(std::span<const std::string> from, std::span<const std::string> to);

/// Exact equality; FreeSmc compares string diagrams up to isomorphism.
/// Throws Error(InstanceMismatch).
bool mor_equal(const Morphism& f, const Morphism& g);

/// Two-sided inverse when one exists: MatQ by elimination, PermCat always,
/// FreeSmc only for pure wirings.
std::optional<Morphism> invert_mor(const Morphism& f);

std::string describe(const Morphism& m);

}  // namespace causalnet
