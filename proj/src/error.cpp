#include "causalnet/error.hpp"

namespace causalnet {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::CycleFound: return "CycleFound";
        case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::InvalidPath: return "InvalidPath";
        case ErrorCode::InvalidFunctor: return "InvalidFunctor";
        case ErrorCode::SourceTargetMismatch: return "SourceTargetMismatch";
        case ErrorCode::NotAPoset: return "NotAPoset";
        case ErrorCode::UnknownId: return "UnknownId";
        case ErrorCode::NotParallel: return "NotParallel";
        case ErrorCode::CycleCreated: return "CycleCreated";
        case ErrorCode::IdCollision: return "IdCollision";
        case ErrorCode::NotDecomposable: return "NotDecomposable";
        case ErrorCode::InstanceMismatch: return "InstanceMismatch";
        case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
        case ErrorCode::NotABijection: return "NotABijection";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::InvalidMorphism: return "InvalidMorphism";
        case ErrorCode::PolarizationMismatch: return "PolarizationMismatch";
        case ErrorCode::NetworkMismatch: return "NetworkMismatch";
        case ErrorCode::WitnessIncomplete: return "WitnessIncomplete";
        case ErrorCode::InvalidWitness: return "InvalidWitness";
        case ErrorCode::EdgeSetMismatch: return "EdgeSetMismatch";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::InvalidDiagram: return "InvalidDiagram";
        case ErrorCode::InvalidBoundaryOrder: return "InvalidBoundaryOrder";
        case ErrorCode::MoveInapplicable: return "MoveInapplicable";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::string> ids)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message),
      ids_(std::move(ids)) {}

}  // namespace causalnet
