// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_EVAL_HPP
#define KGSYNTH_EVAL_HPP

#include <string>
#include <vector>

#include "dsl.hpp"
#include "error.hpp"
#include "program.hpp"

namespace kgsynth {

// Runtime semantics of knowledge-path primitives: a path id maps an entity
// label to the set of labels it reaches.
class KgEnv {
public:
    virtual ~KgEnv() = default;
    virtual std::vector<std::string> resolve(const std::string& path_id,
                                             const std::string& entity) const = 0;
};

class EmptyKgEnv : public KgEnv {
public:
    std::vector<std::string> resolve(const std::string&, const std::string&) const override {
        return {};
    }
};

// Evaluates a STRING-typed program on the given inputs. Fails with NoMatch
// when a regex operation finds no occurrence, KgResolution when a path does
// not yield exactly one target, and type errors for malformed programs.
Result<std::string> evaluate(const Program& program, const std::vector<std::string>& inputs,
                             const KgEnv& env);

}  // namespace kgsynth

#endif
