// Command-line front end. Exit codes: 0 ok, 1 domain error, 2 parse or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "causalnet/eval.hpp"
#include "causalnet/io.hpp"
#include "causalnet/nerve.hpp"

using namespace causalnet;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return io::parse_json(ss.str());
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.detail());
    }
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

enum class Kind { Network, Diagram, Functor, Moves, Poset, Witness };

Kind detect(const Json& j) {
    if (j.is_array()) return Kind::Moves;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "/: expected an object or an array");
    if (j.contains("instance")) return Kind::Diagram;
    if (j.contains("source")) return Kind::Functor;
    if (j.contains("moves")) return Kind::Moves;
    if (j.contains("elements")) return Kind::Poset;
    if (j.contains("edges") && j["edges"].is_object()) return Kind::Witness;
    return Kind::Network;
}

std::string_view kind_name(Kind k) {
    switch (k) {
        case Kind::Network: return "network";
        case Kind::Diagram: return "diagram";
        case Kind::Functor: return "functor";
        case Kind::Moves: return "moves";
        case Kind::Poset: return "poset";
        case Kind::Witness: return "witness";
    }
    return "";
}

const Signature* sig(const io::DiagramDocument& doc) {
    return doc.signature ? &*doc.signature : nullptr;
}

void emit(const Json& j) {
    std::cout << io::dump(j);
}

// A 1x1 MatQ value prints as its scalar, anything else as morphism JSON.
void emit_value(const Morphism& m) {
    if (m.instance() == Instance::MatQ && m.as_matrix().rows() == 1 && m.as_matrix().cols() == 1) {
        std::cout << to_string(m.as_matrix()(0, 0)) << "\n";
        return;
    }
    emit(io::morphism_to_json(m));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal networks, causal diagrams and their evaluation"};
    app.require_subcommand(1);

    std::string file, from, diagram_path, functor_path, moves_path, network_path, left, right, witness_path;
    std::string subset_text, qdom_text, qcod_text, instance_name = "matq";

    auto* validate = app.add_subcommand("validate", "check a network, diagram, functor, move list, poset or witness file");
    validate->add_option("file", file, "JSON file")->required();
    validate->add_option("--instance", instance_name, "instance of a witness file: matq, perm or free")
        ->capture_default_str();

    auto* decompose_cmd = app.add_subcommand("decompose", "factor a path functor into elementary moves");
    decompose_cmd->add_option("--from", from, "functor JSON")->required();

    auto* apply_cmd = app.add_subcommand("apply-move", "apply moves to a network; prints the network and functor");
    apply_cmd->add_option("--network", network_path, "network JSON")->required();
    apply_cmd->add_option("--moves", moves_path, "move list or single move JSON")->required();

    auto* evaluate = app.add_subcommand("evaluate", "value of a vertex subset");
    evaluate->add_option("--diagram", diagram_path, "diagram JSON")->required();
    auto* subset_opt = evaluate->add_option("--subset", subset_text, "comma separated vertices (default: all)");
    auto* qdom_opt = evaluate->add_option("--qdom", qdom_text, "comma separated incoming boundary edges");
    auto* qcod_opt = evaluate->add_option("--qcod", qcod_text, "comma separated outgoing boundary edges");

    auto* total = app.add_subcommand("total-value", "value of the whole diagram");
    total->add_option("--diagram,file", diagram_path, "diagram JSON")->required();

    auto* gauge = app.add_subcommand("gauge-check", "check or search a gauge witness; prints true or false");
    gauge->add_option("--left", left, "diagram JSON")->required();
    gauge->add_option("--right", right, "diagram JSON")->required();
    gauge->add_option("--witness", witness_path, "witness JSON (searched for if omitted)");

    auto* nerve = app.add_subcommand("nerve", "transport a diagram along a functor or move list");
    nerve->add_option("--diagram", diagram_path, "diagram JSON")->required();
    auto* functor_opt = nerve->add_option("--functor", functor_path, "functor JSON");
    auto* moves_opt = nerve->add_option("--moves", moves_path, "move list JSON");
    functor_opt->excludes(moves_opt);

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a network or diagram");
    dot->add_option("file", file, "JSON file")->required();

    auto* p2d = app.add_subcommand("poset2dag", "network of a poset: one edge per strict pair x < y");
    p2d->add_option("file", file, "poset JSON")->required();
    auto* d2p = app.add_subcommand("dag2poset", "reachability order of a network");
    d2p->add_option("file", file, "network JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) {
            const Json j = read_json(file);
            const Kind k = detect(j);
            switch (k) {
                case Kind::Network: io::parse_network(j); break;
                case Kind::Diagram: io::parse_diagram(j); break;
                case Kind::Functor: io::parse_functor(j); break;
                case Kind::Moves: io::parse_moves(j); break;
                case Kind::Poset: io::parse_poset(j); break;
                case Kind::Witness: io::parse_witness(j, parse_instance(instance_name)); break;
            }
            std::cout << "ok " << kind_name(k) << "\n";
        } else if (*decompose_cmd) {
            const auto f = io::parse_functor(read_json(from));
            const auto moves = decompose(f);
            Json out = io::moves_to_json(moves);
            out["verified"] = verify_decomposition(f, moves);
            emit(out);
        } else if (*apply_cmd) {
            const auto n = io::parse_network(read_json(network_path));
            const Json mj = read_json(moves_path);
            const auto moves = mj.is_object() && mj.contains("op") ? std::vector<ElementaryMove>{io::parse_move(mj)}
                                                                  : io::parse_moves(mj);
            const auto trace = trace_moves(n, moves);
            emit(Json{{"network", io::network_to_json(trace.networks.back())},
                      {"functor", io::functor_to_json(trace.composite)}});
        } else if (*evaluate) {
            const auto doc = io::parse_diagram(read_json(diagram_path));
            const auto& d = doc.diagram;
            const auto subset = subset_opt->count() ? split(subset_text) : d.network().vertices();
            BoundaryOrder q;
            if (qdom_opt->count() || qcod_opt->count()) {
                q = BoundaryOrder{split(qdom_text), split(qcod_text)};
            } else {
                q = canonical_boundary_order(d, subset);
            }
            emit_value(value(d, subset, q));
        } else if (*total) {
            emit_value(total_value(io::parse_diagram(read_json(diagram_path)).diagram));
        } else if (*gauge) {
            const auto l = io::parse_diagram(read_json(left));
            const auto r = io::parse_diagram(read_json(right));
            bool ok;
            if (witness_path.empty()) {
                ok = find_gauge_witness(l.diagram, r.diagram).has_value();
            } else {
                const auto w = io::parse_witness(read_json(witness_path), l.diagram.instance(), sig(l));
                ok = gauge_check(l.diagram, r.diagram, w);
            }
            std::cout << (ok ? "true" : "false") << "\n";
        } else if (*nerve) {
            if (!functor_opt->count() && !moves_opt->count()) throw UsageError("nerve needs --functor or --moves");
            const auto doc = io::parse_diagram(read_json(diagram_path));
            const auto out = functor_opt->count() ? nerve_apply(doc.diagram, io::parse_functor(read_json(functor_path)))
                                                  : nerve_moves(doc.diagram, io::parse_moves(read_json(moves_path)));
            emit(io::diagram_to_json(out, sig(doc)));
        } else if (*dot) {
            const Json j = read_json(file);
            if (detect(j) == Kind::Diagram) {
                std::cout << io::diagram_to_dot(io::parse_diagram(j).diagram);
            } else {
                std::cout << io::network_to_dot(io::parse_network(j));
            }
        } else if (*p2d) {
            emit(io::network_to_json(poset_to_network(io::parse_poset(read_json(file)))));
        } else if (*d2p) {
            emit(io::poset_to_json(network_to_poset(io::parse_network(read_json(file)))));
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::ParseError ? 2 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
