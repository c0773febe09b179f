// Python module: JSON text in, JSON text out. The causalnet package wraps
// these with dict conversion.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causalnet/eval.hpp"
#include "causalnet/io.hpp"
#include "causalnet/nerve.hpp"

namespace py = pybind11;
using namespace causalnet;
using io::Json;

namespace {

const Signature* sig(const io::DiagramDocument& doc) {
    return doc.signature ? &*doc.signature : nullptr;
}

std::string dumps(const Json& j) {
    return io::dump(j);
}

std::string decompose_json(const std::string& functor) {
    const auto f = io::parse_functor(io::parse_json(functor));
    const auto moves = decompose(f);
    Json out = io::moves_to_json(moves);
    out["verified"] = verify_decomposition(f, moves);
    return dumps(out);
}

bool verify_json(const std::string& functor, const std::string& moves) {
    const auto f = io::parse_functor(io::parse_json(functor));
    return verify_decomposition(f, io::parse_moves(io::parse_json(moves)));
}

std::string apply_moves_json(const std::string& network, const std::string& moves) {
    const auto n = io::parse_network(io::parse_json(network));
    const auto trace = trace_moves(n, io::parse_moves(io::parse_json(moves)));
    return dumps(Json{{"network", io::network_to_json(trace.networks.back())},
                      {"functor", io::functor_to_json(trace.composite)}});
}

std::string evaluate_json(const std::string& diagram, const std::optional<std::vector<std::string>>& subset,
                          const std::optional<std::vector<std::string>>& qdom,
                          const std::optional<std::vector<std::string>>& qcod) {
    const auto doc = io::parse_diagram(io::parse_json(diagram));
    const auto vs = subset ? *subset : doc.diagram.network().vertices();
    const BoundaryOrder q = (qdom || qcod) ? BoundaryOrder{qdom.value_or(std::vector<std::string>{}),
                                                           qcod.value_or(std::vector<std::string>{})}
                                           : canonical_boundary_order(doc.diagram, vs);
    return dumps(io::morphism_to_json(value(doc.diagram, vs, q)));
}

std::string total_value_json(const std::string& diagram) {
    return dumps(io::morphism_to_json(total_value(io::parse_diagram(io::parse_json(diagram)).diagram)));
}

bool gauge_check_json(const std::string& left, const std::string& right, const std::optional<std::string>& witness) {
    const auto l = io::parse_diagram(io::parse_json(left));
    const auto r = io::parse_diagram(io::parse_json(right));
    if (!witness) return find_gauge_witness(l.diagram, r.diagram).has_value();
    return gauge_check(l.diagram, r.diagram, io::parse_witness(io::parse_json(*witness), l.diagram.instance(), sig(l)));
}

std::string nerve_json(const std::string& diagram, const std::optional<std::string>& functor,
                       const std::optional<std::string>& moves) {
    if (functor.has_value() == moves.has_value()) throw py::value_error("pass exactly one of functor, moves");
    const auto doc = io::parse_diagram(io::parse_json(diagram));
    const auto out = functor ? nerve_apply(doc.diagram, io::parse_functor(io::parse_json(*functor)))
                             : nerve_moves(doc.diagram, io::parse_moves(io::parse_json(*moves)));
    return dumps(io::diagram_to_json(out, sig(doc)));
}

std::string validate_json(const std::string& text, const std::string& kind) {
    const Json j = io::parse_json(text);
    if (kind == "network") return dumps(io::network_to_json(io::parse_network(j)));
    if (kind == "diagram") {
        const auto doc = io::parse_diagram(j);
        return dumps(io::diagram_to_json(doc.diagram, sig(doc)));
    }
    if (kind == "functor") return dumps(io::functor_to_json(io::parse_functor(j)));
    if (kind == "moves") return dumps(io::moves_to_json(io::parse_moves(j)));
    if (kind == "poset") return dumps(io::poset_to_json(io::parse_poset(j)));
    throw py::value_error("unknown kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "causal networks, causal diagrams and their evaluation (JSON text interface)";

    static py::exception<Error> error(m, "CausalNetError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("ids") = e.ids();
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    m.def("canonicalize", &validate_json, py::arg("text"), py::arg("kind"),
          "Parse, validate and re-emit canonically. kind: network, diagram, functor, moves or poset.");
    m.def("decompose", &decompose_json, py::arg("functor"), "Move list plus a \"verified\" flag.");
    m.def("verify_decomposition", &verify_json, py::arg("functor"), py::arg("moves"));
    m.def("apply_moves", &apply_moves_json, py::arg("network"), py::arg("moves"),
          "{\"network\": result, \"functor\": composite}");
    m.def("evaluate", &evaluate_json, py::arg("diagram"), py::arg("subset") = py::none(), py::arg("qdom") = py::none(),
          py::arg("qcod") = py::none(), "Value of a vertex subset; canonical boundary order unless qdom/qcod given.");
    m.def("total_value", &total_value_json, py::arg("diagram"));
    m.def("gauge_check", &gauge_check_json, py::arg("left"), py::arg("right"), py::arg("witness") = py::none(),
          "Checks the witness, or searches small candidates when none is given.");
    m.def("nerve", &nerve_json, py::arg("diagram"), py::arg("functor") = py::none(), py::arg("moves") = py::none());
    m.def("poset_to_network", [](const std::string& p) {
        return dumps(io::network_to_json(poset_to_network(io::parse_poset(io::parse_json(p)))));
    });
    m.def("network_to_poset", [](const std::string& n) {
        return dumps(io::poset_to_json(network_to_poset(io::parse_network(io::parse_json(n)))));
    });
    m.def("diagram_to_dot", [](const std::string& d) {
        return io::diagram_to_dot(io::parse_diagram(io::parse_json(d)).diagram);
    });
    m.def("network_to_dot", [](const std::string& n) { return io::network_to_dot(io::parse_network(io::parse_json(n))); });
}
