#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support/generators.hpp"
#include "causalnet/eval.hpp"
#include "causalnet/io.hpp"
#include "causalnet/nerve.hpp"
#include "helpers.hpp"

using namespace causalnet;
using namespace causalnet::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fixture(const std::string& name) {
    return fs::path(CAUSALNET_FIXTURE_DIR) / name;
}

std::string message_of(const std::string& text, io::Json (*roundtrip)(const io::Json&)) {
    try {
        roundtrip(io::parse_json(text));
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

io::Json network_roundtrip(const io::Json& j) {
    return io::network_to_json(io::parse_network(j));
}

io::Json diagram_roundtrip(const io::Json& j) {
    const auto doc = io::parse_diagram(j);
    return io::diagram_to_json(doc.diagram, doc.signature ? &*doc.signature : nullptr);
}

// Canonical text of a fixture, picked by its file name.
std::string canonical_text(const fs::path& p) {
    const auto j = io::parse_json(slurp(p));
    const std::string name = p.filename().string();
    if (name.find("diagram") != std::string::npos) return io::dump(diagram_roundtrip(j));
    if (name.find("functor") != std::string::npos) return io::dump(io::functor_to_json(io::parse_functor(j)));
    if (name.find("moves") != std::string::npos) return io::dump(io::moves_to_json(io::parse_moves(j)));
    if (name.find("poset") != std::string::npos) return io::dump(io::poset_to_json(io::parse_poset(j)));
    if (name.find("witness") != std::string::npos)
        return io::dump(io::witness_to_json(io::parse_witness(j, Instance::MatQ)));
    return io::dump(network_roundtrip(j));
}

}  // namespace

TEST_CASE("parse_network: empty and unknown vertex") {
    const auto empty = io::parse_network(io::parse_json(R"({"vertices": [], "edges": []})"));
    CHECK(empty.vertices().empty());
    CHECK(empty.edges().empty());

    const std::string bad = R"({"vertices": ["a"], "edges": [{"id": "e", "src": "a", "tgt": "zz"}]})";
    CHECK(code_of([&] { io::parse_network(io::parse_json(bad)); }) == "ValidationError");

    const std::string cyclic = slurp(fixture("cyclic.network.json"));
    const auto msg = message_of(cyclic, network_roundtrip);
    CHECK(msg.rfind("ValidationError", 0) == 0);
    CHECK(msg.find("CycleFound") != std::string::npos);
}

TEST_CASE("parse errors carry a JSON pointer") {
    CHECK(message_of(R"({"vertices": ["a"], "edges": [{"id": "e", "src": 3, "tgt": "a"}]})", network_roundtrip) ==
          "ParseError: /edges/0/src: expected a string");
    CHECK(message_of(R"({"vertices": ["a"]})", network_roundtrip) == "ParseError: /: missing field \"edges\"");
    CHECK(code_of([] { io::parse_json("{not json"); }) == "ParseError");

    auto d = io::parse_json(slurp(fixture("pair.diagram.json")));
    d["val"]["vertices"]["y"][0][1] = "5/0";
    CHECK(message_of(d.dump(), diagram_roundtrip).rfind("ParseError: /val/vertices/y/0/1", 0) == 0);
    d["val"]["vertices"]["y"][0][1] = "x";
    CHECK(message_of(d.dump(), diagram_roundtrip).rfind("ParseError: /val/vertices/y/0/1", 0) == 0);
    d["val"]["vertices"]["y"] = io::Json::array({io::Json::array({"1", "2", "3"})});
    CHECK(message_of(d.dump(), diagram_roundtrip).rfind("ValidationError", 0) == 0);
    d["instance"] = "reals";
    CHECK(message_of(d.dump(), diagram_roundtrip).rfind("ParseError: /instance", 0) == 0);

    CHECK(message_of(R"({"moves": [{"op": "twist"}]})", [](const io::Json& j) {
              return io::moves_to_json(io::parse_moves(j));
          }).rfind("ParseError: /moves/0/op", 0) == 0);
}

TEST_CASE("fixtures are stored canonically and round-trip") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(CAUSALNET_FIXTURE_DIR)) {
        const auto& p = entry.path();
        if (p.extension() != ".json" || p.filename() == "cyclic.network.json") continue;
        CAPTURE(p.filename().string());
        const std::string text = slurp(p);
        const std::string once = canonical_text(p);
        CHECK(once == text);
        ++seen;
    }
    CHECK(seen >= 10);
}

TEST_CASE("worked pair fixture evaluates to 13 and matches its sheared copy") {
    const auto pair = io::parse_diagram(io::parse_json(slurp(fixture("pair.diagram.json")))).diagram;
    const auto sheared = io::parse_diagram(io::parse_json(slurp(fixture("pair.sheared.diagram.json")))).diagram;
    const auto w = io::parse_witness(io::parse_json(slurp(fixture("pair.shear.witness.json"))), Instance::MatQ);
    CHECK(io::morphism_to_json(total_value(pair)) == io::parse_json(R"([["13"]])"));
    CHECK(gauge_check(pair, sheared, w));
    CHECK_FALSE(gauge_check(pair, sheared, GaugeWitness::identity(pair)));
}

TEST_CASE("witness inverse is optional on input") {
    const auto full = io::parse_witness(io::parse_json(slurp(fixture("pair.shear.witness.json"))), Instance::MatQ);
    const auto partial = io::parse_witness(io::parse_json(R"({"edges": {"e": {"forward": [[1, 1], [0, 1]]}}})"),
                                           Instance::MatQ);
    CHECK(witness_equal(full, partial));
    CHECK(code_of([] {
              io::parse_witness(io::parse_json(R"({"edges": {"e": {"forward": [[1, 1], [1, 1]]}}})"), Instance::MatQ);
          }) == "ValidationError");
}

TEST_CASE("FreeSmc diagram with signature") {
    const auto doc = io::parse_diagram(io::parse_json(slurp(fixture("swap.freesmc.diagram.json"))));
    REQUIRE(doc.signature);
    CHECK(doc.diagram.instance() == Instance::FreeSmc);
    const auto v = total_value(doc.diagram);
    CHECK(v.dom().word().empty());
    CHECK(v.cod().word().empty());

    auto j = io::parse_json(slurp(fixture("swap.freesmc.diagram.json")));
    j["val"]["vertices"]["s"]["nodes"][0]["gen"] = "nope";
    CHECK(code_of([&] { io::parse_diagram(j); }) == "ValidationError");
}

TEST_CASE("random MatQ diagrams, functors and moves round-trip") {
    Rng rng(71);
    for (int t = 0; t < 50; ++t) {
        const auto n = random_dag(rng);
        const auto d = random_matq_diagram(rng, n);
        const auto text = io::dump(io::diagram_to_json(d));
        const auto back = io::parse_diagram(io::parse_json(text)).diagram;
        CHECK(diagram_equal(back, d));
        CHECK(io::dump(io::diagram_to_json(back)) == text);

        IdSource ids;
        const auto moves = random_moves(rng, n, uniform(rng, 1, 5), ids);
        const auto mtext = io::dump(io::moves_to_json(moves));
        CHECK(io::parse_moves(io::parse_json(mtext)) == moves);
        const auto f = trace_moves(n, moves).composite;
        const auto ftext = io::dump(io::functor_to_json(f));
        CHECK(io::dump(io::functor_to_json(io::parse_functor(io::parse_json(ftext)))) == ftext);
    }
}

TEST_CASE("DOT export") {
    const auto pair = io::parse_diagram(io::parse_json(slurp(fixture("pair.diagram.json")))).diagram;
    CHECK(io::network_to_dot(pair.network()) ==
          "digraph causal_network {\n  \"x\";\n  \"y\";\n  \"x\" -> \"y\" [label=\"e\"];\n}\n");
    const auto dot = io::diagram_to_dot(pair);
    CHECK(dot.rfind("digraph causal_diagram {\n", 0) == 0);
    CHECK(dot.find("\"x\" -> \"y\" [label=\"e: 2\"];") != std::string::npos);
}
