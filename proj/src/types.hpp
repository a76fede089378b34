// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_TYPES_HPP
#define KGSYNTH_TYPES_HPP

#include <memory>
#include <string>

namespace kgsynth {

// Semantic types of the DSL. STRING and REGEXP are the working types;
// CONSTANT_IN / CONSTANT_OUT tag literal constants by where they may appear
// and evaluate as plain strings.
enum class Atom {
    String,
    Regexp,
    ConstantIn,
    ConstantOut,
};

// Immutable type tree: an atom or a right-nested (curried) arrow.
class SemType {
public:
    static SemType string() { return SemType(Atom::String); }
    static SemType regexp() { return SemType(Atom::Regexp); }
    static SemType constant_in() { return SemType(Atom::ConstantIn); }
    static SemType constant_out() { return SemType(Atom::ConstantOut); }
    static SemType arrow(SemType argument, SemType result);

    bool is_arrow() const { return node_->arrow; }
    Atom atom() const { return node_->atom; }
    const SemType& argument() const { return *node_->argument; }
    const SemType& result() const { return *node_->result; }

    // Number of arguments until an atom result.
    int arity() const;
    // Atom at the end of the arrow chain.
    Atom final_atom() const;

    bool operator==(const SemType& other) const;
    bool operator!=(const SemType& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    struct Node {
        bool arrow = false;
        Atom atom = Atom::String;
        std::shared_ptr<const SemType> argument;
        std::shared_ptr<const SemType> result;
    };

    explicit SemType(Atom a);
    explicit SemType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

const char* atom_name(Atom a);

// Whether a value of type `actual` may be supplied where `expected` is
// required. Constant-flavored atoms are usable as plain strings; the reverse
// does not hold.
bool assignable(const SemType& actual, const SemType& expected);

}  // namespace kgsynth

#endif
