#include <doctest.h>

#include "../support/generators.hpp"
#include "causalnet/nerve.hpp"
#include "helpers.hpp"

using namespace causalnet;
using namespace causalnet::testing;

namespace {

Morphism mat(std::vector<std::vector<Rational>> rows) {
    return Morphism::matrix(Matrix(rows));
}

Object dim(std::uint64_t d) {
    return Object::dimension(d);
}

// x --e--> y with x: I -> 2 the column (1,2) and y: 2 -> I the row (3,5).
CausalDiagram worked_pair() {
    Valuation val;
    val.edges.emplace("e", dim(2));
    val.vertices.emplace("x", mat({{1}, {2}}));
    val.vertices.emplace("y", mat({{3, 5}}));
    const auto n = net({"x", "y"}, {{"e", "x", "y"}});
    return CausalDiagram(Instance::MatQ, n, default_polarization(n), std::move(val));
}

// a --e--> b --f--> c with single-edge boundaries, so no symmetries appear.
struct Chain {
    CausalNetwork n = net({"a", "b", "c"}, {{"e", "a", "b"}, {"f", "b", "c"}});
    Morphism va = mat({{1}, {-1}});
    Morphism vb = mat({{2, 1}, {0, 1}, {1, 1}});
    Morphism vc = mat({{1, 2, Rational(1, 3)}});

    CausalDiagram make(const Morphism& a, const Morphism& b, const Morphism& c) const {
        Valuation val;
        val.edges.emplace("e", dim(2));
        val.edges.emplace("f", dim(3));
        val.vertices.emplace("a", a);
        val.vertices.emplace("b", b);
        val.vertices.emplace("c", c);
        return CausalDiagram(Instance::MatQ, n, default_polarization(n), std::move(val));
    }
};

Morphism inverse_of(const Morphism& m) {
    return *invert_mor(m);
}

}  // namespace

TEST_CASE("validate_diagram: shapes") {
    const auto single = net({"x"}, {});
    Valuation ok;
    ok.vertices.emplace("x", identity(Object::unit(Instance::MatQ)));
    CHECK_NOTHROW(CausalDiagram(Instance::MatQ, single, default_polarization(single), ok));

    const auto n = net({"w", "x"}, {{"e", "w", "x"}});
    Valuation bad;
    bad.edges.emplace("e", dim(2));
    bad.vertices.emplace("w", mat({{1}, {1}}));
    bad.vertices.emplace("x", mat({{1, 2, 3}}));
    CHECK(code_of([&] { CausalDiagram(Instance::MatQ, n, default_polarization(n), bad); }) == "BoundaryMismatch");

    CHECK_NOTHROW(worked_pair());

    Polarization wrong = default_polarization(n);
    wrong.at("x").in.clear();
    Valuation fine;
    fine.edges.emplace("e", dim(2));
    fine.vertices.emplace("w", mat({{1}, {1}}));
    fine.vertices.emplace("x", mat({{1, 2}}));
    CHECK(code_of([&] { CausalDiagram(Instance::MatQ, n, wrong, fine); }) == "PolarizationMismatch");
    Polarization doubled = default_polarization(n);
    doubled.at("w").out.push_back("e");
    CHECK(code_of([&] { validate_polarization(n, doubled); }) == "PolarizationMismatch");

    Valuation missing = fine;
    missing.vertices.erase("x");
    CHECK(code_of([&] { CausalDiagram(Instance::MatQ, n, default_polarization(n), missing); }) != "none");
    Valuation mixed = fine;
    mixed.edges.insert_or_assign("e", Object::word(Instance::PermCat, {"A"}));
    CHECK(code_of([&] { CausalDiagram(Instance::MatQ, n, default_polarization(n), mixed); }) != "none");
}

TEST_CASE("gauge_check: identity, explicit rescaling, perturbation") {
    const Chain ch;
    const auto d = ch.make(ch.va, ch.vb, ch.vc);
    CHECK(gauge_check(d, d, GaugeWitness::identity(d)));

    const auto g = mat({{1, 1}, {0, 2}});
    const auto h = mat({{0, 1, 0}, {1, 0, 0}, {1, 1, 1}});
    const auto d2 = ch.make(compose_mor(g, ch.va), compose_mor(h, compose_mor(ch.vb, inverse_of(g))),
                            compose_mor(ch.vc, inverse_of(h)));
    const auto w = GaugeWitness::from_forward({{"e", g}, {"f", h}});
    CHECK(gauge_check(d, d2, w));
    CHECK(diagram_equal(apply_gauge(d, w, d.polarization()), d2));

    Matrix perturbed = d2.vertex_morphism("b").as_matrix();
    perturbed(0, 0) += 1;
    const auto d3 = ch.make(d2.vertex_morphism("a"), Morphism::matrix(perturbed), d2.vertex_morphism("c"));
    CHECK_FALSE(gauge_check(d, d3, w));

    // A component with the wrong boundary makes the check false.
    const auto w_bad = GaugeWitness::from_forward({{"e", mat({{2}})}, {"f", h}});
    CHECK_FALSE(gauge_check(d, d2, w_bad));

    CHECK(code_of([&] { gauge_check(d, d2, GaugeWitness::from_forward({{"e", g}})); }) == "WitnessIncomplete");
    CHECK(code_of([&] { gauge_check(d, worked_pair(), w); }) == "NetworkMismatch");
    CHECK(code_of([&] { GaugeWitness({{"e", {g, g}}}); }) == "InvalidWitness");
    CHECK(code_of([&] { GaugeWitness::from_forward({{"e", mat({{1, 1}, {1, 1}})}}); }) == "NotInvertible");
}

TEST_CASE("witness_invert and witness_compose") {
    const Chain ch;
    const auto d = ch.make(ch.va, ch.vb, ch.vc);
    const auto id = GaugeWitness::identity(d);
    CHECK(witness_equal(witness_invert(id), id));

    Rng rng(41);
    const auto w1 = random_matq_witness(rng, d);
    const auto w2 = random_matq_witness(rng, d);
    CHECK(witness_equal(witness_invert(witness_invert(w1)), w1));
    CHECK(witness_equal(witness_compose(w1, id), w1));
    CHECK(witness_equal(witness_compose(id, w1), w1));
    CHECK(witness_equal(witness_compose(witness_invert(w1), w1), id));

    const auto d2 = apply_gauge(d, w1, d.polarization());
    const auto d3 = apply_gauge(d2, w2, d2.polarization());
    CHECK(gauge_check(d, d2, w1));
    CHECK(gauge_check(d2, d, witness_invert(w1)));
    CHECK(gauge_check(d2, d3, w2));
    CHECK(gauge_check(d, d3, witness_compose(w2, w1)));
    // Composition order matters for non-commuting components.
    const auto composed = witness_compose(w2, w1);
    CHECK(mor_equal(composed.at("e").forward, compose_mor(w2.at("e").forward, w1.at("e").forward)));

    const auto partial = GaugeWitness::from_forward({{"e", mat({{1, 0}, {0, 1}})}});
    CHECK(code_of([&] { witness_compose(partial, w1); }) == "EdgeSetMismatch");
}

TEST_CASE("repolarize") {
    const auto n = net({"x", "y", "z"}, {{"e1", "x", "z"}, {"e2", "y", "z"}});
    Valuation val;
    val.edges.emplace("e1", dim(2));
    val.edges.emplace("e2", dim(3));
    val.vertices.emplace("x", mat({{1}, {2}}));
    val.vertices.emplace("y", mat({{1}, {0}, {-1}}));
    val.vertices.emplace("z", mat({{1, 2, 3, 4, 5, 6}}));
    const CausalDiagram d(Instance::MatQ, n, default_polarization(n), val);

    CHECK(diagram_equal(repolarize(d, d.polarization()), d));

    Polarization swapped = d.polarization();
    swapped.at("z").in = {"e2", "e1"};
    const auto d2 = repolarize(d, swapped);
    // Commutation matrix 3 (x) 2 -> 2 (x) 3 from its basis action.
    Matrix k(6, 6);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 2; ++i) k(i * 3 + j, j * 2 + i) = 1;
    CHECK(d2.vertex_morphism("z").as_matrix() == d.vertex_morphism("z").as_matrix() * k);
    CHECK(gauge_check(d, d2, GaugeWitness::identity(d)));
    CHECK(diagram_equal(repolarize(d2, d.polarization()), d));

    Polarization invalid = d.polarization();
    invalid.at("z").in = {"e1"};
    CHECK(code_of([&] { repolarize(d, invalid); }) == "PolarizationMismatch");
}

TEST_CASE("gauge_check is stable under relabeling edges of everything at once") {
    Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        const auto d = random_matq_diagram(rng, random_dag(rng, {1, 6, 0.4, 0.2, 8}));
        GaugeWitness w;
        const auto d2 = random_gauge_transform(rng, d, &w);
        IdSource ids;
        const auto iso = random_move(rng, d.network(), ids, MoveKind::Iso);
        const auto e = nerve_move(d, iso), e2 = nerve_move(d2, iso);
        CHECK(gauge_check(e, e2, nerve_witness(d, d2, w, iso)));
    }
}

TEST_CASE("find_gauge_witness") {
    // FreeSmc: a swap of the two A wires on e1, combined with a repolarization.
    Signature sig({"A", "B"}, {{"p", {}, {"A", "A", "B"}}, {"q", {"A", "A", "B"}, {}}});
    const auto n = net({"s", "t"}, {{"e1", "s", "t"}, {"e2", "s", "t"}});
    Valuation val;
    val.edges.emplace("e1", Object::word(Instance::FreeSmc, {"A", "A"}));
    val.edges.emplace("e2", Object::word(Instance::FreeSmc, {"B"}));
    val.vertices.emplace("s", Morphism::generator(sig, "p"));
    val.vertices.emplace("t", Morphism::generator(sig, "q"));
    const CausalDiagram d(Instance::FreeSmc, n, default_polarization(n), val);
    const std::size_t swap[] = {1, 0};
    const auto w_swap = GaugeWitness::from_forward(
        {{"e1", Morphism::diagram(StringDiagram::permutation({"A", "A"}, swap))},
         {"e2", identity(Object::word(Instance::FreeSmc, {"B"}))}});
    Polarization pol = d.polarization();
    pol.at("s").out = {"e2", "e1"};
    const auto d2 = apply_gauge(d, w_swap, pol);
    CHECK_FALSE(gauge_check(d, d2, GaugeWitness::identity(d)));
    auto w = find_gauge_witness(d, d2);
    REQUIRE(w);
    CHECK(gauge_check(d, d2, *w));

    // MatQ: a shear on the single edge is inside the candidate set.
    const auto p = worked_pair();
    const auto scaled = apply_gauge(p, GaugeWitness::from_forward({{"e", mat({{1, 1}, {0, 1}})}}), p.polarization());
    auto ws = find_gauge_witness(p, scaled);
    REQUIRE(ws);
    CHECK(gauge_check(p, scaled, *ws));

    // Different closed values: no witness can exist.
    Valuation other;
    other.edges.emplace("e", dim(2));
    other.vertices.emplace("x", mat({{1}, {2}}));
    other.vertices.emplace("y", mat({{3, 6}}));
    const CausalDiagram q(Instance::MatQ, p.network(), p.polarization(), other);
    CHECK_FALSE(find_gauge_witness(p, q));
}
