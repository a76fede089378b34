// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"

namespace kgsynth {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::UnknownPrimitive: return "UnknownPrimitive";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
        case ErrorCode::NoMatch: return "NoMatch";
        case ErrorCode::KgResolution: return "KgResolution";
        case ErrorCode::EmptyGrammar: return "EmptyGrammar";
        case ErrorCode::NotDerivable: return "NotDerivable";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NoPath: return "NoPath";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::InconsistentSplit: return "InconsistentSplit";
        case ErrorCode::GenerationExhausted: return "GenerationExhausted";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace kgsynth
