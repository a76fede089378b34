// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_HEAP_SEARCH_HPP
#define KGSYNTH_HEAP_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "eval.hpp"
#include "grammar.hpp"
#include "task.hpp"

namespace kgsynth {

struct EnumeratedProgram {
    ProgramPtr program;
    double log_prob = 0.0;
    std::string sexpr;
};

// Comparison used everywhere programs are ordered by likelihood: higher
// probability first; log-probabilities are quantized to a 1e-12 grid so
// floating-point noise cannot flip an order, and exact ties fall back to the
// canonical S-expression.
int64_t order_key(double log_prob);
bool enumeration_less(int64_t key_a, const std::string& sexpr_a, int64_t key_b,
                      const std::string& sexpr_b);

// Lazy best-first enumeration of a weighted grammar: programs come out in
// non-increasing probability order, each derivable program exactly once.
// Each non-terminal keeps a heap of pending derivations; emitting one pushes
// the successors formed by advancing a single child to its next-best
// derivation.
class ProgramStream {
public:
    explicit ProgramStream(const WeightedGrammar& weighted);

    std::optional<EnumeratedProgram> next();

private:
    struct Candidate {
        size_t rule = 0;
        std::vector<size_t> ranks;
        double log_prob = 0.0;
        int64_t key = 0;
        ProgramPtr program;
        std::string sexpr;
    };
    struct CandidateWorse {
        bool operator()(const Candidate& a, const Candidate& b) const {
            return enumeration_less(b.key, b.sexpr, a.key, a.sexpr);
        }
    };
    struct NtState {
        bool initialized = false;
        std::vector<Candidate> emitted;
        std::priority_queue<Candidate, std::vector<Candidate>, CandidateWorse> heap;
        std::set<std::pair<size_t, std::vector<size_t>>> seen;
    };

    void initialize(int nt_id);
    // Ensures at least k+1 derivations are emitted from nt_id; returns the
    // k-th or nullptr when the stream is exhausted.
    const Candidate* query(int nt_id, size_t k);
    std::optional<Candidate> build_candidate(int nt_id, size_t rule, std::vector<size_t> ranks);

    const WeightedGrammar* weighted_;
    std::vector<NtState> states_;
    size_t start_cursor_ = 0;
};

// Exhaustive enumeration sorted with the same comparator; testing oracle for
// the stream order. Guarded against combinatorial blowups.
Result<std::vector<EnumeratedProgram>> brute_force_enumerate(const WeightedGrammar& weighted,
                                                             size_t limit = 100000);

// True iff the program evaluates without error to the expected output on
// every example of the task.
bool verify(const Program& program, const Task& task, const KgEnv& env);

}  // namespace kgsynth

#endif
