// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_TASK_HPP
#define KGSYNTH_TASK_HPP

#include <string>
#include <vector>

#include "error.hpp"

namespace kgsynth {

struct Example {
    std::vector<std::string> inputs;
    std::string output;
};

// Difficulty metadata; see the benchmark format notes in the README.
struct TaskMetadata {
    int entity_extraction = 0;   // 0..2
    int relation_complexity = 0; // 0..2
    int postprocessing = 0;      // 0..1
};

struct Task {
    std::string name;
    std::vector<Example> examples;
    TaskMetadata metadata;

    int arity() const { return examples.empty() ? 0 : static_cast<int>(examples[0].inputs.size()); }
};

// Validates the structural invariants: at least two examples, uniform
// arity of at least one, metadata within range.
Result<Task> validate_task(Task task);

Result<Task> parse_task_json(const std::string& json_text);
Result<Task> load_task_file(const std::string& path);
std::string task_to_json(const Task& task);

}  // namespace kgsynth

#endif
