// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_GRAMMAR_HPP
#define KGSYNTH_GRAMMAR_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dsl.hpp"
#include "error.hpp"
#include "program.hpp"
#include "types.hpp"

namespace kgsynth {

// Deterministic random generator. Derivations from the raw engine output
// keep sampling reproducible across platforms, unlike the standard
// distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return n == 0 ? 0 : engine_() % n; }

private:
    std::mt19937_64 engine_;
};

// Grammar rule: a leaf head plus one non-terminal per argument position.
// Rules at depth-1 non-terminals have no children.
struct Rule {
    ProgramPtr head;
    std::vector<int> children;  // non-terminal ids
};

// Context-free grammar over (type, remaining_depth) non-terminals whose
// derivations are exactly the well-typed programs of bounded syntactic
// depth. Immutable once compiled.
class TypedGrammar {
public:
    struct NonTerminal {
        Atom type = Atom::String;
        int depth = 1;
        std::vector<Rule> rules;
    };

    static Result<TypedGrammar> compile(const DslRegistry& registry, int arity,
                                        const std::vector<std::string>& constants_in,
                                        const std::vector<std::string>& constants_out,
                                        const std::vector<std::string>& kg_paths, int max_depth);

    int start() const { return start_; }
    int arity() const { return arity_; }
    int max_depth() const { return max_depth_; }
    const std::vector<NonTerminal>& non_terminals() const { return nts_; }
    const NonTerminal& nt(int id) const { return nts_[static_cast<size_t>(id)]; }
    size_t size() const { return nts_.size(); }
    bool empty() const { return nts_.empty(); }

    // Number of derivable programs per non-terminal, computed as doubles so
    // very large grammars saturate gracefully.
    std::vector<double> derivation_counts() const;

    // Deterministic text form, one line per rule:
    //   NT(STRING,3): concat -> NT(STRING,1) NT(STRING,2)
    std::string dump() const;

    bool structurally_equal(const TypedGrammar& other) const;

private:
    int start_ = 0;
    int arity_ = 0;
    int max_depth_ = 0;
    std::vector<NonTerminal> nts_;
};

std::string nt_label(const TypedGrammar& grammar, int id);

// Canonical name of a rule head for counting models: primitives keep their
// name, variables become "var<i>", constants collapse to their flavor and
// knowledge paths to "kg_path".
std::string head_key(const Program& head);

// Grammar with per-rule probabilities; probabilities at each non-terminal
// sum to one.
class WeightedGrammar {
public:
    static Result<WeightedGrammar> with_probabilities(TypedGrammar grammar,
                                                      std::vector<std::vector<double>> probs);
    static WeightedGrammar uniform(TypedGrammar grammar);
    // Positive raw weights per rule head, normalized within each
    // non-terminal.
    static Result<WeightedGrammar> from_head_weights(
        TypedGrammar grammar, const std::function<double(Atom, const Program&)>& weight);

    const TypedGrammar& grammar() const { return grammar_; }
    double probability(int nt, size_t rule) const {
        return probs_[static_cast<size_t>(nt)][rule];
    }
    double log_probability(int nt, size_t rule) const {
        return log_probs_[static_cast<size_t>(nt)][rule];
    }

    ProgramPtr sample(Rng& rng) const;

    // Log-probability of a derivable program (sum of used rule log-probs).
    Result<double> program_log_probability(const Program& program) const;

private:
    TypedGrammar grammar_;
    std::vector<std::vector<double>> probs_;
    std::vector<std::vector<double>> log_probs_;
};

}  // namespace kgsynth

#endif
