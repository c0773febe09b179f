#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace causalnet {

enum class ErrorCode {
    // graph-core
    CycleFound,
    DanglingEndpoint,
    DuplicateId,
    InvalidPath,
    InvalidFunctor,
    SourceTargetMismatch,
    NotAPoset,
    // moves
    UnknownId,
    NotParallel,
    CycleCreated,
    IdCollision,
    NotDecomposable,
    // smc
    InstanceMismatch,
    BoundaryMismatch,
    NotABijection,
    NotInvertible,
    InvalidMorphism,
    // diagram
    PolarizationMismatch,
    NetworkMismatch,
    WitnessIncomplete,
    InvalidWitness,
    EdgeSetMismatch,
    // eval
    UnknownVertex,
    InvalidDiagram,
    InvalidBoundaryOrder,
    // nerve
    MoveInapplicable,
    // io
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `ids()` carries the offending
/// vertex/edge ids where that is meaningful (e.g. the edges of a cycle).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::string> ids = {});

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    /// Message without the leading "<Code>: " prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
    std::vector<std::string> ids_;
};

}  // namespace causalnet
