#pragma once

// JSON and DOT serialization. Emission is canonical: object keys sorted,
// vertices and edges in id order, rationals as "p/q" strings, so that
// serialize(parse(serialize(x))) == serialize(x).
//
// Parse errors carry the JSON pointer of the offending value, e.g.
// "ParseError: /edges/2/src: expected a string".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "causalnet/diagram.hpp"
#include "causalnet/moves.hpp"
#include "causalnet/network.hpp"
#include "causalnet/smc.hpp"

namespace causalnet::io {

using Json = nlohmann::ordered_json;

/// Throws Error(ParseError) on malformed JSON text.
Json parse_json(std::string_view text);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

// Networks -------------------------------------------------------------------
Json network_to_json(const CausalNetwork& n);
/// Throws Error(ParseError) on schema violations, Error(ValidationError)
/// if the graph is not a valid causal network (the cause is kept in the message).
CausalNetwork parse_network(const Json& j);

Json path_to_json(const Path& p);
Path parse_path(const Json& j, const std::string& where = "");

/// {"source": network, "target": network, "vmap": {...}, "emap": {...}}
Json functor_to_json(const PathFunctor& f);
PathFunctor parse_functor(const Json& j);

Json poset_to_json(const Poset& p);
Poset parse_poset(const Json& j);

// Moves ----------------------------------------------------------------------
Json move_to_json(const ElementaryMove& m);
ElementaryMove parse_move(const Json& j, const std::string& where = "");
/// {"moves": [...]} or a bare array.
Json moves_to_json(const std::vector<ElementaryMove>& moves);
std::vector<ElementaryMove> parse_moves(const Json& j);

// SMC values -----------------------------------------------------------------
Json signature_to_json(const Signature& s);
Signature parse_signature(const Json& j);

Json object_to_json(const Object& o);
Object parse_object(const Json& j, Instance instance, const std::string& where = "");

/// MatQ: array of rows of "p/q" strings. PermCat: {"dom": word, "perm": [..]}.
/// FreeSmc: {"dom", "cod", "nodes": [{"gen", "inputs"}], "outputs"} with
/// wire sources written {"input": i} or {"node": k, "port": p}.
Json morphism_to_json(const Morphism& m);
/// FreeSmc node labels are checked against `signature` when given.
Morphism parse_morphism(const Json& j, Instance instance, const Signature* signature = nullptr,
                        const std::string& where = "");

// Diagrams -------------------------------------------------------------------

/// A diagram file: the diagram plus, for FreeSmc, its signature.
struct DiagramDocument {
    CausalDiagram diagram;
    std::optional<Signature> signature;
};

/// {"instance", "vertices", "edges", "pol": {v: {"in", "out"}},
///  "val": {"edges": {...}, "vertices": {...}}, ["signature"]}
Json diagram_to_json(const CausalDiagram& d, const Signature* signature = nullptr);
DiagramDocument parse_diagram(const Json& j);

/// {"edges": {e: {"forward": mor, "inverse": mor}}}; "inverse" may be
/// omitted on input and is then computed.
Json witness_to_json(const GaugeWitness& w);
GaugeWitness parse_witness(const Json& j, Instance instance, const Signature* signature = nullptr);

// DOT ------------------------------------------------------------------------
std::string network_to_dot(const CausalNetwork& n);
/// Edge labels show objects, vertex labels summarise morphisms.
std::string diagram_to_dot(const CausalDiagram& d);

}  // namespace causalnet::io
