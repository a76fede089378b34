// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_DSL_HPP
#define KGSYNTH_DSL_HPP

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "program.hpp"
#include "types.hpp"

namespace kgsynth {

struct Primitive {
    std::string name;
    SemType type;
};

// Ordered registry of DSL primitives; the declaration order is the canonical
// rule order in compiled grammars.
class DslRegistry {
public:
    void add(std::string name, SemType type);
    const Primitive* find(const std::string& name) const;
    const std::vector<Primitive>& primitives() const { return prims_; }

private:
    std::vector<Primitive> prims_;
};

// A DSL bundle: primitives plus the base literal constants that serve as
// character-set and separator arguments during search.
struct DslDefinition {
    std::string name;
    DslRegistry registry;
    std::vector<std::string> base_constants_in;
};

// String-manipulation DSL with regex primitives, concatenation variants and
// their constant-typed duplicates.
const DslDefinition& flashfill_dsl();

// Infers the semantic type of a program. `arity` is the number of task
// inputs available as variables.
Result<SemType> type_of(const Program& program, int arity, const DslRegistry& registry);

}  // namespace kgsynth

#endif
