#include "causalnet/io.hpp"

#include <sstream>

namespace causalnet::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, (where.empty() ? "/" : where) + ": " + what);
}

std::string at(const std::string& where, const std::string& key) {
    return where + "/" + key;
}

std::string at(const std::string& where, std::size_t index) {
    return where + "/" + std::to_string(index);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

const Json* optional_field(const Json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::size_t as_index(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

const Json& as_object(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
}

std::vector<std::string> as_strings(const Json& j, const std::string& where) {
    std::vector<std::string> out;
    const auto& arr = as_array(j, where);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_string(arr[i], at(where, i)));
    return out;
}

std::map<std::string, std::string> as_string_map(const Json& j, const std::string& where) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : as_object(j, where).items()) out.emplace(k, as_string(v, at(where, k)));
    return out;
}

Json strings(const std::vector<std::string>& v) {
    Json arr = Json::array();
    for (const auto& s : v) arr.push_back(s);
    return arr;
}

// Domain failures while building values from well-formed JSON.
template <typename F>
auto validated(const std::string& where, F&& build) {
    try {
        return build();
    } catch (const Error& err) {
        if (err.code() == ErrorCode::ParseError || err.code() == ErrorCode::ValidationError) throw;
        throw Error(ErrorCode::ValidationError, (where.empty() ? "/" : where) + ": " + err.what(), err.ids());
    }
}

}  // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Networks

Json network_to_json(const CausalNetwork& n) {
    Json j;
    j["vertices"] = strings(n.vertices());
    Json edges = Json::array();
    for (const auto& e : n.edges()) edges.push_back(Json{{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
    j["edges"] = std::move(edges);
    return j;
}

namespace {

CausalNetwork parse_network_at(const Json& j, const std::string& where) {
    auto vertices = as_strings(field(j, "vertices", where), at(where, "vertices"));
    std::vector<Edge> edges;
    const auto& arr = as_array(field(j, "edges", where), at(where, "edges"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = at(at(where, "edges"), i);
        edges.push_back(Edge{as_string(field(arr[i], "id", w), at(w, "id")),
                             as_string(field(arr[i], "src", w), at(w, "src")),
                             as_string(field(arr[i], "tgt", w), at(w, "tgt"))});
    }
    return validated(where, [&] { return CausalNetwork(std::move(vertices), std::move(edges)); });
}

}  // namespace

CausalNetwork parse_network(const Json& j) {
    return parse_network_at(j, "");
}

Json path_to_json(const Path& p) {
    return Json{{"anchor", p.anchor}, {"edges", strings(p.edges)}};
}

Path parse_path(const Json& j, const std::string& where) {
    return Path{as_string(field(j, "anchor", where), at(where, "anchor")),
                as_strings(field(j, "edges", where), at(where, "edges"))};
}

Json functor_to_json(const PathFunctor& f) {
    Json j;
    j["source"] = network_to_json(f.source());
    j["target"] = network_to_json(f.target());
    Json vmap = Json::object();
    for (const auto& [v, w] : f.vertex_map()) vmap[v] = w;
    j["vmap"] = std::move(vmap);
    Json emap = Json::object();
    for (const auto& [e, p] : f.edge_map()) emap[e] = path_to_json(p);
    j["emap"] = std::move(emap);
    return j;
}

PathFunctor parse_functor(const Json& j) {
    CausalNetwork source = parse_network_at(field(j, "source", ""), "/source");
    CausalNetwork target = parse_network_at(field(j, "target", ""), "/target");
    auto vmap = as_string_map(field(j, "vmap", ""), "/vmap");
    std::map<EdgeId, Path> emap;
    for (const auto& [e, p] : as_object(field(j, "emap", ""), "/emap").items()) {
        emap.emplace(e, parse_path(p, "/emap/" + e));
    }
    return validated("", [&] { return PathFunctor(std::move(source), std::move(target), std::move(vmap), std::move(emap)); });
}

Json poset_to_json(const Poset& p) {
    Json j;
    j["elements"] = strings({p.elements.begin(), p.elements.end()});
    Json rel = Json::array();
    for (const auto& [x, y] : p.relation) rel.push_back(Json::array({x, y}));
    j["relation"] = std::move(rel);
    return j;
}

Poset parse_poset(const Json& j) {
    Poset p;
    for (const auto& e : as_strings(field(j, "elements", ""), "/elements")) p.elements.insert(e);
    const auto& rel = as_array(field(j, "relation", ""), "/relation");
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto pair = as_strings(rel[i], at("/relation", i));
        if (pair.size() != 2) fail(at("/relation", i), "expected a pair");
        p.relation.emplace(pair[0], pair[1]);
    }
    validated("", [&] {
        validate_poset(p);
        return 0;
    });
    return p;
}

// ---------------------------------------------------------------------------
// Moves

Json move_to_json(const ElementaryMove& m) {
    struct Emit {
        Json operator()(const Iso& m) const {
            Json vs = Json::object(), es = Json::object();
            for (const auto& [a, b] : m.vertices) vs[a] = b;
            for (const auto& [a, b] : m.edges) es[a] = b;
            return Json{{"op", "iso"}, {"vertices", vs}, {"edges", es}};
        }
        Json operator()(const AddVertex& m) const { return Json{{"op", "add_vertex"}, {"vertex", m.vertex}}; }
        Json operator()(const AddEdge& m) const {
            return Json{{"op", "add_edge"}, {"edge", m.edge}, {"src", m.src}, {"tgt", m.tgt}};
        }
        Json operator()(const Subdivide& m) const {
            return Json{{"op", "subdivide"},
                        {"edge", m.edge},
                        {"new_vertex", m.new_vertex},
                        {"new_edges", Json::array({m.new_edges[0], m.new_edges[1]})}};
        }
        Json operator()(const MergeEdges& m) const {
            return Json{{"op", "merge_edges"}, {"edges", strings(m.edges)}, {"merged", m.merged}};
        }
        Json operator()(const ShrinkVertices& m) const {
            return Json{{"op", "shrink_vertices"}, {"vertices", strings(m.vertices)}, {"new_vertex", m.new_vertex}};
        }
    };
    return std::visit(Emit{}, m);
}

ElementaryMove parse_move(const Json& j, const std::string& where) {
    const std::string op = as_string(field(j, "op", where), at(where, "op"));
    auto str = [&](const char* key) { return as_string(field(j, key, where), at(where, key)); };
    if (op == "iso") {
        return Iso{as_string_map(field(j, "vertices", where), at(where, "vertices")),
                   as_string_map(field(j, "edges", where), at(where, "edges"))};
    }
    if (op == "add_vertex") return AddVertex{str("vertex")};
    if (op == "add_edge") return AddEdge{str("edge"), str("src"), str("tgt")};
    if (op == "subdivide") {
        auto halves = as_strings(field(j, "new_edges", where), at(where, "new_edges"));
        if (halves.size() != 2) fail(at(where, "new_edges"), "expected exactly two edge ids");
        return Subdivide{str("edge"), str("new_vertex"), {halves[0], halves[1]}};
    }
    if (op == "merge_edges") {
        return MergeEdges{as_strings(field(j, "edges", where), at(where, "edges")), str("merged")};
    }
    if (op == "shrink_vertices") {
        return ShrinkVertices{as_strings(field(j, "vertices", where), at(where, "vertices")), str("new_vertex")};
    }
    fail(at(where, "op"), "unknown move '" + op + "'");
}

Json moves_to_json(const std::vector<ElementaryMove>& moves) {
    Json arr = Json::array();
    for (const auto& m : moves) arr.push_back(move_to_json(m));
    return Json{{"moves", std::move(arr)}};
}

std::vector<ElementaryMove> parse_moves(const Json& j) {
    const bool bare = j.is_array();
    const Json& arr = bare ? j : as_array(field(j, "moves", ""), "/moves");
    const std::string base = bare ? "" : "/moves";
    std::vector<ElementaryMove> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_move(arr[i], at(base, i)));
    return out;
}

// ---------------------------------------------------------------------------
// SMC values

Json signature_to_json(const Signature& s) {
    Json gens = Json::array();
    for (const auto& [name, g] : s.generators()) {
        gens.push_back(Json{{"name", name}, {"dom", strings(g.dom)}, {"cod", strings(g.cod)}});
    }
    return Json{{"objects", strings(s.objects())}, {"generators", std::move(gens)}};
}

Signature parse_signature(const Json& j) {
    const std::string where = "/signature";
    auto objects = as_strings(field(j, "objects", where), at(where, "objects"));
    std::vector<GeneratorSpec> gens;
    const auto& arr = as_array(field(j, "generators", where), at(where, "generators"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = at(at(where, "generators"), i);
        gens.push_back(GeneratorSpec{as_string(field(arr[i], "name", w), at(w, "name")),
                                     as_strings(field(arr[i], "dom", w), at(w, "dom")),
                                     as_strings(field(arr[i], "cod", w), at(w, "cod"))});
    }
    return validated(where, [&] { return Signature(std::move(objects), std::move(gens)); });
}

Json object_to_json(const Object& o) {
    if (o.instance() == Instance::MatQ) return Json(o.dim());
    return strings(o.word());
}

Object parse_object(const Json& j, Instance instance, const std::string& where) {
    if (instance == Instance::MatQ) {
        const std::size_t dim = as_index(j, where);
        if (dim == 0) fail(where, "MatQ dimensions are >= 1");
        return Object::dimension(dim);
    }
    return Object::word(instance, as_strings(j, where));
}

namespace {

Json port_to_json(const Port& p) {
    if (p.node == Port::kInput) return Json{{"input", p.index}};
    return Json{{"node", p.node}, {"port", p.index}};
}

Port parse_port(const Json& j, const std::string& where) {
    as_object(j, where);
    if (const Json* in = optional_field(j, "input")) return Port{Port::kInput, as_index(*in, at(where, "input"))};
    return Port{as_index(field(j, "node", where), at(where, "node")), as_index(field(j, "port", where), at(where, "port"))};
}

}  // namespace

Json morphism_to_json(const Morphism& m) {
    switch (m.instance()) {
        case Instance::MatQ: {
            const Matrix& a = m.as_matrix();
            Json rows = Json::array();
            for (std::size_t r = 0; r < a.rows(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(to_string(a(r, c)));
                rows.push_back(std::move(row));
            }
            return rows;
        }
        case Instance::PermCat: {
            const auto& p = m.as_permutation();
            return Json{{"dom", strings(p.dom)}, {"perm", p.image}};
        }
        case Instance::FreeSmc: {
            const auto& d = m.as_diagram();
            Json nodes = Json::array();
            for (const auto& n : d.nodes()) {
                Json inputs = Json::array();
                for (const auto& p : n.inputs) inputs.push_back(port_to_json(p));
                nodes.push_back(Json{{"gen", n.generator}, {"dom", strings(n.dom)}, {"cod", strings(n.cod)}, {"inputs", inputs}});
            }
            Json outputs = Json::array();
            for (const auto& p : d.outputs()) outputs.push_back(port_to_json(p));
            return Json{{"dom", strings(d.dom())}, {"cod", strings(d.cod())}, {"nodes", nodes}, {"outputs", outputs}};
        }
    }
    return nullptr;
}

Morphism parse_morphism(const Json& j, Instance instance, const Signature* signature, const std::string& where) {
    switch (instance) {
        case Instance::MatQ: {
            const auto& rows = as_array(j, where);
            std::vector<std::vector<Rational>> data;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto& row = as_array(rows[r], at(where, r));
                data.emplace_back();
                for (std::size_t c = 0; c < row.size(); ++c) {
                    const std::string w = at(at(where, r), c);
                    if (row[c].is_number_integer()) {
                        data.back().emplace_back(row[c].get<long>());
                        continue;
                    }
                    try {
                        data.back().push_back(parse_rational(as_string(row[c], w)));
                    } catch (const Error& err) {
                        fail(w, err.detail());
                    }
                }
            }
            return validated(where, [&] { return Morphism::matrix(Matrix(data)); });
        }
        case Instance::PermCat: {
            auto dom = as_strings(field(j, "dom", where), at(where, "dom"));
            std::vector<std::size_t> image;
            const auto& arr = as_array(field(j, "perm", where), at(where, "perm"));
            for (std::size_t i = 0; i < arr.size(); ++i) image.push_back(as_index(arr[i], at(at(where, "perm"), i)));
            return validated(where, [&] { return Morphism::permutation(std::move(dom), std::move(image)); });
        }
        case Instance::FreeSmc: {
            auto dom = as_strings(field(j, "dom", where), at(where, "dom"));
            auto cod = as_strings(field(j, "cod", where), at(where, "cod"));
            std::vector<DiagramNode> nodes;
            const auto& arr = as_array(field(j, "nodes", where), at(where, "nodes"));
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string w = at(at(where, "nodes"), i);
                DiagramNode node;
                node.generator = as_string(field(arr[i], "gen", w), at(w, "gen"));
                if (signature) {
                    const auto& spec = validated(w, [&]() -> const GeneratorSpec& { return signature->generator(node.generator); });
                    node.dom = spec.dom;
                    node.cod = spec.cod;
                    if (const Json* d = optional_field(arr[i], "dom"); d && as_strings(*d, at(w, "dom")) != node.dom) {
                        fail(at(w, "dom"), "disagrees with the signature");
                    }
                    if (const Json* c = optional_field(arr[i], "cod"); c && as_strings(*c, at(w, "cod")) != node.cod) {
                        fail(at(w, "cod"), "disagrees with the signature");
                    }
                } else {
                    node.dom = as_strings(field(arr[i], "dom", w), at(w, "dom"));
                    node.cod = as_strings(field(arr[i], "cod", w), at(w, "cod"));
                }
                const auto& inputs = as_array(field(arr[i], "inputs", w), at(w, "inputs"));
                for (std::size_t k = 0; k < inputs.size(); ++k) node.inputs.push_back(parse_port(inputs[k], at(at(w, "inputs"), k)));
                nodes.push_back(std::move(node));
            }
            std::vector<Port> outputs;
            const auto& outs = as_array(field(j, "outputs", where), at(where, "outputs"));
            for (std::size_t k = 0; k < outs.size(); ++k) outputs.push_back(parse_port(outs[k], at(at(where, "outputs"), k)));
            return validated(where, [&] {
                return Morphism::diagram(StringDiagram(std::move(dom), std::move(cod), std::move(nodes), std::move(outputs)));
            });
        }
    }
    fail(where, "unknown instance");
}

// ---------------------------------------------------------------------------
// Diagrams

Json diagram_to_json(const CausalDiagram& d, const Signature* signature) {
    Json j;
    j["instance"] = std::string(to_string(d.instance()));
    if (signature) j["signature"] = signature_to_json(*signature);
    Json net = network_to_json(d.network());
    j["vertices"] = std::move(net["vertices"]);
    j["edges"] = std::move(net["edges"]);
    Json pol = Json::object();
    for (const auto& [v, p] : d.polarization()) pol[v] = Json{{"in", strings(p.in)}, {"out", strings(p.out)}};
    j["pol"] = std::move(pol);
    Json edges = Json::object(), vertices = Json::object();
    for (const auto& [e, o] : d.valuation().edges) edges[e] = object_to_json(o);
    for (const auto& [v, m] : d.valuation().vertices) vertices[v] = morphism_to_json(m);
    j["val"] = Json{{"edges", std::move(edges)}, {"vertices", std::move(vertices)}};
    return j;
}

DiagramDocument parse_diagram(const Json& j) {
    as_object(j, "");
    const Instance instance = [&] {
        const std::string text = as_string(field(j, "instance", ""), "/instance");
        try {
            return parse_instance(text);
        } catch (const Error& err) {
            fail("/instance", err.detail());
        }
    }();
    std::optional<Signature> signature;
    if (const Json* s = optional_field(j, "signature")) signature = parse_signature(*s);
    CausalNetwork network = parse_network_at(j, "");

    Polarization pol;
    for (const auto& [v, p] : as_object(field(j, "pol", ""), "/pol").items()) {
        const std::string w = "/pol/" + v;
        pol.emplace(v, VertexPolarity{as_strings(field(p, "in", w), w + "/in"), as_strings(field(p, "out", w), w + "/out")});
    }
    const Json& val_json = field(j, "val", "");
    Valuation val;
    for (const auto& [e, o] : as_object(field(val_json, "edges", "/val"), "/val/edges").items()) {
        val.edges.emplace(e, parse_object(o, instance, "/val/edges/" + e));
    }
    const Signature* sig = signature ? &*signature : nullptr;
    for (const auto& [v, m] : as_object(field(val_json, "vertices", "/val"), "/val/vertices").items()) {
        val.vertices.emplace(v, parse_morphism(m, instance, sig, "/val/vertices/" + v));
    }
    CausalDiagram diagram =
        validated("", [&] { return CausalDiagram(instance, std::move(network), std::move(pol), std::move(val)); });
    return DiagramDocument{std::move(diagram), std::move(signature)};
}

Json witness_to_json(const GaugeWitness& w) {
    Json edges = Json::object();
    for (const auto& [e, c] : w.components()) {
        edges[e] = Json{{"forward", morphism_to_json(c.forward)}, {"inverse", morphism_to_json(c.inverse)}};
    }
    return Json{{"edges", std::move(edges)}};
}

GaugeWitness parse_witness(const Json& j, Instance instance, const Signature* signature) {
    std::map<EdgeId, GaugeWitness::Component> comps;
    std::map<EdgeId, Morphism> forward_only;
    for (const auto& [e, c] : as_object(field(j, "edges", ""), "/edges").items()) {
        const std::string w = "/edges/" + e;
        Morphism fwd = parse_morphism(field(c, "forward", w), instance, signature, w + "/forward");
        if (const Json* inv = optional_field(c, "inverse")) {
            comps.emplace(e, GaugeWitness::Component{std::move(fwd), parse_morphism(*inv, instance, signature, w + "/inverse")});
        } else {
            forward_only.emplace(e, std::move(fwd));
        }
    }
    return validated("", [&] {
        const GaugeWitness computed = GaugeWitness::from_forward(forward_only);
        for (const auto& [e, c] : computed.components()) comps.emplace(e, c);
        return GaugeWitness(std::move(comps));
    });
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string network_to_dot(const CausalNetwork& n) {
    std::ostringstream os;
    os << "digraph causal_network {\n";
    for (const auto& v : n.vertices()) os << "  " << quote(v) << ";\n";
    for (const auto& e : n.edges()) {
        os << "  " << quote(e.src) << " -> " << quote(e.tgt) << " [label=" << quote(e.id) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string diagram_to_dot(const CausalDiagram& d) {
    std::ostringstream os;
    os << "digraph causal_diagram {\n";
    for (const auto& v : d.network().vertices()) {
        os << "  " << quote(v) << " [label=" << quote(v + ": " + describe(d.vertex_morphism(v))) << "];\n";
    }
    for (const auto& e : d.network().edges()) {
        os << "  " << quote(e.src) << " -> " << quote(e.tgt) << " [label=" << quote(e.id + ": " + describe(d.edge_object(e.id)))
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace causalnet::io
