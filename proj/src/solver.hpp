// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_SOLVER_HPP
#define KGSYNTH_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "kgraph.hpp"
#include "predict.hpp"
#include "sketch.hpp"
#include "task.hpp"

namespace kgsynth {

struct SolveConfig {
    double timeout_seconds = 60.0;
    int max_path_len = 2;
    int max_depth = 6;
    int extractor_budget = 500;
    int extractor_depth = 4;
    uint64_t seed = 0;  // reserved: solving itself is deterministic
};

enum class Outcome {
    Solved = 0,
    Timeout = 1,
    NoProgram = 2,
};

const char* outcome_name(Outcome outcome);

struct SolveStats {
    uint64_t programs_enumerated = 0;
    uint64_t paths_queried = 0;
    double wall_time = 0.0;
    // One entry per hole: kg-path | kg-path-with-extractor | syntactic.
    std::vector<std::string> hole_resolutions;
};

struct SolveResult {
    Outcome outcome = Outcome::NoProgram;
    ProgramPtr program;  // set when Solved
    SolveStats stats;
};

// Full pipeline for one task: decompose into constants and holes, resolve
// each hole through knowledge-path discovery (directly from the inputs,
// then through enumerated syntactic extractors), fall back to pure
// syntactic search, and assemble the verified program.
Result<SolveResult> solve(const Task& task, const KnowledgeGraph& graph,
                          const PredictionModel& model, const SolveConfig& config);

// Interleaves the sketch's constant segments with the hole programs as a
// right-nested concatenation chain.
Result<ProgramPtr> assemble(const Sketch& sketch, const std::vector<ProgramPtr>& hole_programs);

std::string solve_result_to_json(const SolveResult& result, const Task& task);

}  // namespace kgsynth

#endif
