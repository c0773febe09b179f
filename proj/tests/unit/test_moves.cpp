#include <doctest.h>

#include <map>

#include "../support/generators.hpp"
#include "helpers.hpp"

using namespace causalnet;
using namespace causalnet::testing;

namespace {

// Every directed path from `from` to `to`, by exhaustive DFS.
void all_paths(const CausalNetwork& n, const VertexId& from, const VertexId& to, std::vector<EdgeId>& prefix,
               std::vector<Path>& out, const VertexId& anchor) {
    if (from == to && !prefix.empty()) out.push_back(Path{anchor, prefix});
    for (const auto& e : n.out_edges(from)) {
        prefix.push_back(e);
        all_paths(n, n.edge(e).tgt, to, prefix, out, anchor);
        prefix.pop_back();
    }
}

// A functor that does not come from a move sequence: vertices land
// anywhere, edges on random target paths. Retries until compatible.
PathFunctor random_abstract_functor(Rng& rng) {
    for (;;) {
        const auto src = random_dag(rng, {1, 6, 0.35, 0.15, 10});
        const auto tgt = random_dag(rng, {1, 6, 0.5, 0.2, 12});
        std::map<VertexId, VertexId> vmap;
        for (const auto& v : src.vertices()) vmap[v] = pick(rng, tgt.vertices());
        std::map<EdgeId, Path> emap;
        bool ok = true;
        for (const auto& e : src.edges()) {
            const auto &a = vmap[e.src], &b = vmap[e.tgt];
            if (a == b) {
                emap.emplace(e.id, Path::identity(a));
                continue;
            }
            std::vector<Path> paths;
            std::vector<EdgeId> prefix;
            all_paths(tgt, a, b, prefix, paths, a);
            if (paths.empty()) {
                ok = false;
                break;
            }
            emap.emplace(e.id, pick(rng, paths));
        }
        if (ok) return PathFunctor(src, tgt, vmap, emap);
    }
}

}  // namespace

TEST_CASE("apply_move: subdivide a single edge") {
    const auto n = net({"a", "b"}, {{"e", "a", "b"}});
    const auto r = apply_move(n, Subdivide{"e", "v", {"e1", "e2"}});
    CHECK(r.network == net({"a", "b", "v"}, {{"e1", "a", "v"}, {"e2", "v", "b"}}));
    CHECK(r.functor.map_edge("e") == Path{"a", {"e1", "e2"}});
    CHECK(r.functor.map_vertex("a") == "a");
}

TEST_CASE("apply_move: shrinking a non-convex set creates a cycle") {
    const auto chain = net({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}});
    CHECK(code_of([&] { apply_move(chain, ShrinkVertices{{"a", "c"}, "s"}); }) == "CycleCreated");
    const auto r = apply_move(chain, ShrinkVertices{{"a", "b"}, "s"});
    CHECK(r.network == net({"c", "s"}, {{"bc", "s", "c"}}));
    CHECK(r.functor.map_edge("ab") == Path::identity("s"));
    CHECK(r.functor.map_vertex("a") == "s");
}

TEST_CASE("apply_move: merge a parallel pair") {
    const auto n = net({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
    const auto r = apply_move(n, MergeEdges{{"e1", "e2"}, "e"});
    CHECK(r.network == net({"a", "b"}, {{"e", "a", "b"}}));
    CHECK(r.functor.map_edge("e1") == Path{"a", {"e"}});
    CHECK(r.functor.map_edge("e2") == Path{"a", {"e"}});
    CHECK(apply_move(n, MergeEdges{{"e1", "e2"}, "e2"}).network == net({"a", "b"}, {{"e2", "a", "b"}}));
}

TEST_CASE("apply_move: error reporting") {
    const auto n = net({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
    CHECK(code_of([&] { apply_move(n, Subdivide{"zz", "v", {"x", "y"}}); }) == "UnknownId");
    CHECK(code_of([&] { apply_move(n, Subdivide{"e1", "a", {"x", "y"}}); }) == "IdCollision");
    CHECK(code_of([&] { apply_move(n, AddVertex{"b"}); }) == "IdCollision");
    CHECK(code_of([&] { apply_move(n, AddEdge{"e2", "a", "c"}); }) == "IdCollision");
    CHECK(code_of([&] { apply_move(n, AddEdge{"back", "c", "a"}); }) == "CycleCreated");
    CHECK(code_of([&] { apply_move(n, AddEdge{"x", "a", "q"}); }) == "UnknownId");
    CHECK(code_of([&] { apply_move(n, MergeEdges{{"e1", "e2"}, "m"}); }) == "NotParallel");
    CHECK(code_of([&] { apply_move(n, ShrinkVertices{{}, "s"}); }) == "UnknownId");
    CHECK(code_of([&] { apply_move(n, ShrinkVertices{{"a"}, "c"}); }) == "IdCollision");
    Iso collapse{{{"a", "x"}, {"b", "x"}, {"c", "y"}}, {{"e1", "f1"}, {"e2", "f2"}}};
    CHECK(code_of([&] { apply_move(n, collapse); }) == "NotABijection");
    Iso partial{{{"a", "x"}, {"b", "z"}}, {{"e1", "f1"}, {"e2", "f2"}}};
    CHECK(code_of([&] { apply_move(n, partial); }) == "NotABijection");
}

TEST_CASE("merging then subdividing does not undo the merge") {
    const auto n = net({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
    const auto merged = apply_move(n, MergeEdges{{"e1", "e2"}, "e"}).network;
    const auto back = apply_move(merged, Subdivide{"e", "v", {"e1", "e2"}}).network;
    CHECK_FALSE(back == n);
    CHECK_FALSE(find_isomorphism(back, n).has_value());
}

TEST_CASE("decompose: identity functor") {
    const auto n = net({"a", "b"}, {{"e", "a", "b"}});
    const auto id = identity_functor(n);
    const auto moves = decompose(id);
    REQUIRE(moves.size() == 1);
    CHECK(std::holds_alternative<Iso>(moves[0]));
    CHECK(verify_decomposition(id, moves));
    Iso trivial{{{"a", "a"}, {"b", "b"}}, {{"e", "e"}}};
    CHECK(verify_decomposition(id, std::vector<ElementaryMove>{trivial}));
    CHECK(verify_decomposition(id, std::vector<ElementaryMove>{}));
}

TEST_CASE("decompose: functor built from subdivide then shrink") {
    const auto chain = net({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}});
    const std::vector<ElementaryMove> gen{Subdivide{"bc", "m", {"bm", "mc"}}, ShrinkVertices{{"a", "b"}, "s"}};
    const auto f = trace_moves(chain, gen).composite;
    const auto moves = decompose(f);
    CHECK(verify_decomposition(f, moves));
    CHECK(verify_decomposition(f, gen));
    CHECK_FALSE(verify_decomposition(f, std::vector<ElementaryMove>{}));
}

TEST_CASE("decompose: one edge onto a path of length two") {
    const auto one = net({"a", "b"}, {{"e", "a", "b"}});
    const auto chain = net({"x", "y", "z"}, {{"d1", "x", "y"}, {"d2", "y", "z"}, {"d3", "x", "z"}});
    PathFunctor f(one, chain, {{"a", "x"}, {"b", "z"}}, {{"e", Path{"x", {"d1", "d2"}}}});
    const auto moves = decompose(f);
    CHECK(verify_decomposition(f, moves));
    CHECK(std::holds_alternative<Subdivide>(moves.front()));
    CHECK(std::holds_alternative<Iso>(moves.back()));
    bool adds_edge = false;
    for (const auto& m : moves) adds_edge = adds_edge || std::holds_alternative<AddEdge>(m);
    CHECK(adds_edge);
}

TEST_CASE("decompose: stage order is subdivide, shrink, merge, add, iso") {
    Rng rng(21);
    auto stage = [](const ElementaryMove& m) -> int {
        if (std::holds_alternative<Subdivide>(m)) return 0;
        if (std::holds_alternative<ShrinkVertices>(m)) return 1;
        if (std::holds_alternative<MergeEdges>(m)) return 2;
        if (std::holds_alternative<AddVertex>(m)) return 3;
        if (std::holds_alternative<AddEdge>(m)) return 4;
        return 5;
    };
    for (int trial = 0; trial < 100; ++trial) {
        IdSource ids;
        const auto n = random_dag(rng);
        const auto f = trace_moves(n, random_moves(rng, n, uniform(rng, 1, 6), ids)).composite;
        const auto moves = decompose(f);
        for (std::size_t i = 1; i < moves.size(); ++i) CHECK(stage(moves[i - 1]) <= stage(moves[i]));
        CHECK(stage(moves.back()) == 5);
    }
}

TEST_CASE("decompose round-trips on move-generated functors") {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        IdSource ids;
        const auto n = random_dag(rng);
        const auto gen = random_moves(rng, n, uniform(rng, 1, 6), ids);
        const auto f = trace_moves(n, gen).composite;
        const auto moves = decompose(f);
        CHECK(verify_decomposition(f, moves));
        const auto trace = trace_moves(f.source(), moves);
        CHECK(trace.networks.back() == f.target());
        for (const auto& step : trace.networks) CHECK(step.topological_order().size() == step.vertices().size());
    }
}

TEST_CASE("decompose round-trips on functors not built from moves") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = random_abstract_functor(rng);
        std::vector<ElementaryMove> moves;
        REQUIRE_NOTHROW(moves = decompose(f));
        CHECK(verify_decomposition(f, moves));
    }
}

TEST_CASE("verify_decomposition never throws on junk") {
    const auto n = net({"a", "b"}, {{"e", "a", "b"}});
    const auto id = identity_functor(n);
    CHECK_FALSE(verify_decomposition(id, std::vector<ElementaryMove>{Subdivide{"nope", "v", {"x", "y"}}}));
    CHECK_FALSE(verify_decomposition(id, std::vector<ElementaryMove>{AddVertex{"c"}}));
}
