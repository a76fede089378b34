// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_SKETCH_HPP
#define KGSYNTH_SKETCH_HPP

#include <string>
#include <vector>

#include "task.hpp"

namespace kgsynth {

// Task decomposition: the output is an alternating sequence of literal
// constant segments and holes; each hole carries the per-example fragment it
// must produce. Input candidates list, per example and input position, the
// fragments left after removing that position's shared constants, the whole
// input last.
struct Sketch {
    struct Segment {
        bool is_constant = false;
        std::string constant;  // when is_constant
        int hole = -1;         // when !is_constant
    };

    std::vector<Segment> output_segments;
    std::vector<std::string> output_constants;
    // holes[h][example] = fragment the hole must produce for that example.
    std::vector<std::vector<std::string>> holes;
    // input_candidates[example][input position] = candidate entity fragments.
    std::vector<std::vector<std::vector<std::string>>> input_candidates;
    // Constants shared by each input position (used as search constants).
    std::vector<std::vector<std::string>> input_constants;

    size_t hole_count() const { return holes.size(); }

    // Debug rendering: const("...") · hole#0 · const("...")
    std::string dump() const;
};

// Longest string occurring as a contiguous substring of every input; ties
// broken by earliest occurrence in the first string. Empty when the strings
// share nothing. Operates on Unicode scalars.
std::string longest_common_factor(const std::vector<std::string>& strings);

// Recursive constant extraction: reject factors of length <= 2, otherwise
// split every string around its leftmost factor occurrence and recurse on
// the prefixes and suffixes. Constants come out in left-to-right order.
std::vector<std::string> get_constants(const std::vector<std::string>& strings);

Sketch decompose(const Task& task);

}  // namespace kgsynth

#endif
