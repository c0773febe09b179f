#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "causalnet/error.hpp"
#include "causalnet/network.hpp"

namespace causalnet::testing {

inline CausalNetwork net(std::vector<VertexId> vs, std::vector<Edge> es) {
    return CausalNetwork(std::move(vs), std::move(es));
}

/// Name of the error code thrown by `f`, or "none".
template <typename F>
std::string code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return std::string(to_string(e.code()));
    }
    return "none";
}

}  // namespace causalnet::testing
