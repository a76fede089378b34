// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "solver.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include <json.hpp>

#include "heap_search.hpp"
#include "pretty.hpp"
#include "text.hpp"

namespace kgsynth {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kGraphBudgetShare = 0.2;

struct HoleOutcome {
    bool resolved = false;
    ProgramPtr program;
    std::string resolution;
    bool impossible = false;  // no syntactic program can exist
};

struct Pipeline {
    const Task& task;
    const KnowledgeGraph& graph;
    const PredictionModel& model;
    const SolveConfig& config;
    const Sketch& sketch;
    GraphPathEnv env;
    SolveStats stats;
    Clock::time_point start;
    Clock::time_point deadline;
    Clock::time_point graph_deadline;

    Pipeline(const Task& t, const KnowledgeGraph& g, const PredictionModel& m,
             const SolveConfig& c, const Sketch& s)
        : task(t), graph(g), model(m), config(c), sketch(s), env(g) {
        start = Clock::now();
        deadline = start + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(c.timeout_seconds));
        graph_deadline =
            start + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(c.timeout_seconds * kGraphBudgetShare));
    }

    bool timed_out() const { return Clock::now() >= deadline; }
    bool graph_time_left() const { return Clock::now() < graph_deadline; }

    bool hole_verifies(const Program& program, size_t hole) {
        const auto& fragments = sketch.holes[hole];
        for (size_t i = 0; i < task.examples.size(); ++i) {
            auto out = evaluate(program, task.examples[i].inputs, env);
            if (!out.ok() || out.value() != fragments[i]) {
                return false;
            }
        }
        return true;
    }

    // Synthesizes a syntactic program mapping the task inputs to the given
    // per-example targets, within the extractor budget.
    ProgramPtr synthesize_extractor(const std::vector<std::string>& targets) {
        auto grammar = TypedGrammar::compile(flashfill_dsl().registry, task.arity(),
                                             extraction_constants(), {}, {},
                                             config.extractor_depth);
        if (!grammar.ok()) {
            return nullptr;
        }
        auto weighted = predict_weights(model, grammar.take(), task);
        if (!weighted.ok()) {
            return nullptr;
        }
        ProgramStream stream(weighted.value());
        for (int used = 0; used < config.extractor_budget && graph_time_left(); ++used) {
            auto item = stream.next();
            if (!item) {
                break;
            }
            stats.programs_enumerated += 1;
            bool all = true;
            for (size_t i = 0; i < task.examples.size(); ++i) {
                auto value = evaluate(*item->program, task.examples[i].inputs, env);
                if (!value.ok() || value.value() != targets[i]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                return item->program;
            }
        }
        return nullptr;
    }

    // (a) A knowledge path from the sketch's input-entity candidates: per
    // input position, the shared-constant fragments and finally the whole
    // input. Whole inputs become plain variable sources; fragment sources
    // additionally need a synthesized extractor.
    HoleOutcome try_direct_paths(size_t hole) {
        HoleOutcome out;
        const auto& fragments = sketch.holes[hole];
        for (int j = 0; j < task.arity() && graph_time_left(); ++j) {
            size_t slots = SIZE_MAX;
            for (const auto& per_example : sketch.input_candidates) {
                slots = std::min(slots, per_example[static_cast<size_t>(j)].size());
            }
            for (size_t s = 0; s < slots && graph_time_left(); ++s) {
                std::vector<std::pair<std::string, std::string>> pairs;
                std::vector<std::string> sources;
                bool whole_input = true;
                for (size_t i = 0; i < task.examples.size(); ++i) {
                    const auto& candidates = sketch.input_candidates[i][static_cast<size_t>(j)];
                    // Candidate lists end with the whole input; align the
                    // trailing slot across examples of unequal length.
                    const size_t idx = s + 1 == slots ? candidates.size() - 1 : s;
                    const std::string& source = candidates[idx];
                    whole_input =
                        whole_input && source == task.examples[i].inputs[static_cast<size_t>(j)];
                    pairs.emplace_back(source, fragments[i]);
                    sources.push_back(source);
                }
                stats.paths_queried += 1;
                auto paths = graph.find_paths(pairs, config.max_path_len);
                if (!paths.ok()) {
                    continue;
                }
                auto best = graph.least_ambiguous(paths.value(), sources);
                if (!best.ok()) {
                    continue;
                }
                ProgramPtr source_program;
                const char* resolution = "kg-path";
                if (whole_input) {
                    source_program = Program::variable(j);
                } else {
                    source_program = synthesize_extractor(sources);
                    resolution = "kg-path-with-extractor";
                }
                if (!source_program) {
                    continue;
                }
                ProgramPtr candidate = Program::apply(
                    Program::kg_path(path_to_id(best.value())), std::move(source_program));
                if (hole_verifies(*candidate, hole)) {
                    out.resolved = true;
                    out.program = std::move(candidate);
                    out.resolution = resolution;
                    return out;
                }
            }
        }
        return out;
    }

    std::vector<std::string> extraction_constants() const {
        std::vector<std::string> constants = flashfill_dsl().base_constants_in;
        for (const auto& per_position : sketch.input_constants) {
            constants.insert(constants.end(), per_position.begin(), per_position.end());
        }
        return constants;
    }

    // (b) Enumerate syntactic extractors and look for paths from their
    // outputs.
    HoleOutcome try_extractor_paths(size_t hole) {
        HoleOutcome out;
        const auto& fragments = sketch.holes[hole];
        auto grammar = TypedGrammar::compile(flashfill_dsl().registry, task.arity(),
                                             extraction_constants(), {}, {},
                                             config.extractor_depth);
        if (!grammar.ok()) {
            return out;
        }
        auto weighted = predict_weights(model, grammar.take(), task);
        if (!weighted.ok()) {
            return out;
        }
        ProgramStream stream(weighted.value());
        std::set<std::vector<std::string>> seen_signatures;
        for (int used = 0; used < config.extractor_budget && graph_time_left(); ++used) {
            auto item = stream.next();
            if (!item) {
                break;
            }
            stats.programs_enumerated += 1;
            std::vector<std::string> outputs;
            bool ok = true;
            for (const auto& example : task.examples) {
                auto value = evaluate(*item->program, example.inputs, env);
                if (!value.ok() || value.value().empty()) {
                    ok = false;
                    break;
                }
                outputs.push_back(value.take());
            }
            if (!ok || !seen_signatures.insert(outputs).second) {
                continue;
            }
            std::vector<std::pair<std::string, std::string>> pairs;
            for (size_t i = 0; i < outputs.size(); ++i) {
                pairs.emplace_back(outputs[i], fragments[i]);
            }
            stats.paths_queried += 1;
            auto paths = graph.find_paths(pairs, config.max_path_len);
            if (!paths.ok()) {
                continue;
            }
            auto best = graph.least_ambiguous(paths.value(), outputs);
            if (!best.ok()) {
                continue;
            }
            ProgramPtr candidate =
                Program::apply(Program::kg_path(path_to_id(best.value())), item->program);
            if (hole_verifies(*candidate, hole)) {
                out.resolved = true;
                out.program = std::move(candidate);
                out.resolution = "kg-path-with-extractor";
                return out;
            }
        }
        return out;
    }

    // Character provenance: evaluation can only rearrange characters of the
    // inputs and grammar constants, so a fragment using any other character
    // has no syntactic program.
    bool fragment_reachable(size_t hole, const std::vector<std::string>& constants) const {
        std::set<char32_t> constant_chars;
        for (const auto& c : constants) {
            const auto scalars = utf8_decode(c);
            constant_chars.insert(scalars.begin(), scalars.end());
        }
        const auto& fragments = sketch.holes[hole];
        for (size_t i = 0; i < task.examples.size(); ++i) {
            std::set<char32_t> available = constant_chars;
            for (const auto& input : task.examples[i].inputs) {
                const auto scalars = utf8_decode(input);
                available.insert(scalars.begin(), scalars.end());
            }
            for (char32_t c : utf8_decode(fragments[i])) {
                if (available.count(c) == 0) {
                    return false;
                }
            }
        }
        return true;
    }

    // (c) Pure syntactic search over the task grammar.
    HoleOutcome try_syntactic(size_t hole) {
        HoleOutcome out;
        const auto& fragments = sketch.holes[hole];
        std::vector<std::string> constants_in = extraction_constants();
        std::vector<std::string> constants_out = sketch.output_constants;
        for (const auto& c : get_constants(fragments)) {
            constants_out.push_back(c);
        }
        std::vector<std::string> all_constants = constants_in;
        all_constants.insert(all_constants.end(), constants_out.begin(), constants_out.end());
        if (!fragment_reachable(hole, all_constants)) {
            out.impossible = true;
            return out;
        }
        auto grammar = TypedGrammar::compile(flashfill_dsl().registry, task.arity(), constants_in,
                                             constants_out, {}, config.max_depth);
        if (!grammar.ok()) {
            out.impossible = true;
            return out;
        }
        auto weighted = predict_weights(model, grammar.take(), task);
        if (!weighted.ok()) {
            out.impossible = true;
            return out;
        }
        ProgramStream stream(weighted.value());
        while (!timed_out()) {
            auto item = stream.next();
            if (!item) {
                out.impossible = true;  // grammar exhausted
                return out;
            }
            stats.programs_enumerated += 1;
            bool all = true;
            for (size_t i = 0; i < task.examples.size(); ++i) {
                auto value = evaluate(*item->program, task.examples[i].inputs, env);
                if (!value.ok() || value.value() != fragments[i]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                out.resolved = true;
                out.program = item->program;
                out.resolution = "syntactic";
                return out;
            }
        }
        return out;  // timed out
    }
};

}  // namespace

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::Solved: return "Solved";
        case Outcome::Timeout: return "Timeout";
        case Outcome::NoProgram: return "NoProgram";
    }
    return "?";
}

Result<ProgramPtr> assemble(const Sketch& sketch, const std::vector<ProgramPtr>& hole_programs) {
    if (hole_programs.size() != sketch.hole_count()) {
        return Error(ErrorCode::ArityMismatch,
                     "expected " + std::to_string(sketch.hole_count()) + " hole programs, got " +
                         std::to_string(hole_programs.size()));
    }
    std::vector<ProgramPtr> elements;
    for (const auto& seg : sketch.output_segments) {
        if (seg.is_constant) {
            elements.push_back(Program::constant(seg.constant, ConstantFlavor::Output));
        } else {
            elements.push_back(hole_programs[static_cast<size_t>(seg.hole)]);
        }
    }
    if (elements.empty()) {
        return Error(ErrorCode::InvalidArgument, "sketch has no segments");
    }
    ProgramPtr chain = elements.back();
    for (size_t i = elements.size() - 1; i-- > 0;) {
        chain = Program::apply(Program::apply(Program::primitive("concat"), elements[i]), chain);
    }
    return chain;
}

Result<SolveResult> solve(const Task& task, const KnowledgeGraph& graph,
                          const PredictionModel& model, const SolveConfig& config) {
    if (config.timeout_seconds <= 0 || config.max_path_len < 1 || config.max_depth < 2 ||
        config.extractor_budget < 0) {
        return Error(ErrorCode::InvalidArgument, "solve config out of range");
    }
    const Sketch sketch = decompose(task);
    Pipeline pipe(task, graph, model, config, sketch);

    SolveResult result;
    std::vector<ProgramPtr> hole_programs;
    bool timed_out = false;
    bool impossible = false;

    for (size_t h = 0; h < sketch.hole_count(); ++h) {
        HoleOutcome outcome = pipe.try_direct_paths(h);
        if (!outcome.resolved) {
            outcome = pipe.try_extractor_paths(h);
        }
        if (!outcome.resolved) {
            outcome = pipe.try_syntactic(h);
        }
        if (!outcome.resolved) {
            if (outcome.impossible) {
                impossible = true;
            } else {
                timed_out = true;
            }
            break;
        }
        hole_programs.push_back(outcome.program);
        pipe.stats.hole_resolutions.push_back(outcome.resolution);
    }

    result.stats = pipe.stats;
    if (hole_programs.size() == sketch.hole_count() && !timed_out && !impossible) {
        auto program = assemble(sketch, hole_programs);
        if (program.ok() && verify(*program.value(), task, pipe.env)) {
            result.outcome = Outcome::Solved;
            result.program = program.take();
        } else {
            result.outcome = Outcome::NoProgram;
        }
    } else if (timed_out || pipe.timed_out()) {
        result.outcome = Outcome::Timeout;
    } else {
        result.outcome = Outcome::NoProgram;
    }
    result.stats.wall_time =
        std::chrono::duration<double>(Clock::now() - pipe.start).count();
    return result;
}

std::string solve_result_to_json(const SolveResult& result, const Task& task) {
    nlohmann::json doc;
    doc["outcome"] = outcome_name(result.outcome);
    if (result.program) {
        doc["program"] = {{"sexpr", result.program->to_sexpr()},
                          {"pretty", pretty_print(*result.program, task.arity())}};
    } else {
        doc["program"] = nullptr;
    }
    doc["stats"] = {{"programs_enumerated", result.stats.programs_enumerated},
                    {"paths_queried", result.stats.paths_queried},
                    {"wall_time", result.stats.wall_time},
                    {"hole_resolutions", result.stats.hole_resolutions}};
    return doc.dump(2);
}

}  // namespace kgsynth
