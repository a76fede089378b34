// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "types.hpp"

namespace kgsynth {

SemType::SemType(Atom a) {
    auto node = std::make_shared<Node>();
    node->arrow = false;
    node->atom = a;
    node_ = std::move(node);
}

SemType SemType::arrow(SemType argument, SemType result) {
    auto node = std::make_shared<Node>();
    node->arrow = true;
    node->argument = std::make_shared<const SemType>(std::move(argument));
    node->result = std::make_shared<const SemType>(std::move(result));
    return SemType(std::move(node));
}

int SemType::arity() const {
    int n = 0;
    const SemType* t = this;
    while (t->is_arrow()) {
        ++n;
        t = &t->result();
    }
    return n;
}

Atom SemType::final_atom() const {
    const SemType* t = this;
    while (t->is_arrow()) {
        t = &t->result();
    }
    return t->atom();
}

bool SemType::operator==(const SemType& other) const {
    if (node_ == other.node_) {
        return true;
    }
    if (node_->arrow != other.node_->arrow) {
        return false;
    }
    if (!node_->arrow) {
        return node_->atom == other.node_->atom;
    }
    return argument() == other.argument() && result() == other.result();
}

std::string SemType::to_string() const {
    if (!is_arrow()) {
        return atom_name(atom());
    }
    return "Arrow(" + argument().to_string() + ", " + result().to_string() + ")";
}

const char* atom_name(Atom a) {
    switch (a) {
        case Atom::String: return "STRING";
        case Atom::Regexp: return "REGEXP";
        case Atom::ConstantIn: return "CONSTANT_IN";
        case Atom::ConstantOut: return "CONSTANT_OUT";
    }
    return "?";
}

bool assignable(const SemType& actual, const SemType& expected) {
    if (actual == expected) {
        return true;
    }
    if (actual.is_arrow() || expected.is_arrow()) {
        return false;
    }
    return expected.atom() == Atom::String &&
           (actual.atom() == Atom::ConstantIn || actual.atom() == Atom::ConstantOut);
}

}  // namespace kgsynth
