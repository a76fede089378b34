// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_PRETTY_HPP
#define KGSYNTH_PRETTY_HPP

#include <string>

#include "program.hpp"

namespace kgsynth {

// Renders a STRING-typed program as a small Python-like function: one
// binding per top-level concatenation operand and a final return of their
// concatenation. Knowledge paths print as
// label(follow_edges_from(x, "Rel1", "Rel2")).
std::string pretty_print(const Program& program, int arity);

}  // namespace kgsynth

#endif
