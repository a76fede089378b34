// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_ERROR_HPP
#define KGSYNTH_ERROR_HPP

#include <string>
#include <utility>
#include <variant>

namespace kgsynth {

// Error codes shared by the core and the C API. Keep the numeric values
// stable; they are exported through the public header.
enum class ErrorCode {
    Ok = 0,
    UnknownPrimitive,
    ArityMismatch,
    TypeMismatch,
    VariableOutOfRange,
    NoMatch,
    KgResolution,
    EmptyGrammar,
    NotDerivable,
    TooLarge,
    NoPath,
    ParseError,
    EmptyGraph,
    InconsistentSplit,
    GenerationExhausted,
    InvalidArgument,
    IoError,
};

const char* error_code_name(ErrorCode code);

struct Error {
    ErrorCode code = ErrorCode::Ok;
    std::string message;

    Error() = default;
    Error(ErrorCode c, std::string msg) : code(c), message(std::move(msg)) {}
};

// Minimal result wrapper: a value or an Error.
template <typename T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error err) : v_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    const T& value() const& { return std::get<T>(v_); }
    T& value() & { return std::get<T>(v_); }
    T&& take() { return std::move(std::get<T>(v_)); }

    const Error& error() const { return std::get<Error>(v_); }
    ErrorCode code() const { return ok() ? ErrorCode::Ok : error().code; }

private:
    std::variant<T, Error> v_;
};

}  // namespace kgsynth

#endif
