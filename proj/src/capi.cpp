// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "kgsynth.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "error.hpp"
#include "kgraph.hpp"
#include "predict.hpp"
#include "pretty.hpp"
#include "sketch.hpp"
#include "solver.hpp"
#include "task.hpp"

using namespace kgsynth;

struct kgs_graph {
    KnowledgeGraph graph;
};

struct kgs_task {
    Task task;
};

struct kgs_model {
    PredictionModel model;
};

struct kgs_result {
    SolveResult result;
    Task task;  // for rendering
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) {
        std::memcpy(out, s.c_str(), s.size() + 1);
    }
    return out;
}

void set_err(char** err_msg, const std::string& message) {
    if (err_msg != nullptr) {
        *err_msg = dup_string(message);
    }
}

kgs_status to_status(ErrorCode code) {
    return static_cast<kgs_status>(static_cast<int>(code));
}

}  // namespace

extern "C" {

const char* kgs_status_name(kgs_status status) {
    return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
}

void kgs_string_free(char* text) {
    std::free(text);
}

kgs_status kgs_graph_load(const char* path, kgs_graph** out, char** err_msg) {
    if (path == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    auto graph = KnowledgeGraph::load_file(path);
    if (!graph.ok()) {
        set_err(err_msg, graph.error().message);
        return to_status(graph.error().code);
    }
    *out = new kgs_graph{graph.take()};
    return KGS_OK;
}

void kgs_graph_free(kgs_graph* graph) {
    delete graph;
}

size_t kgs_graph_triple_count(const kgs_graph* graph) {
    return graph == nullptr ? 0 : graph->graph.triple_count();
}

size_t kgs_graph_entity_count(const kgs_graph* graph) {
    return graph == nullptr ? 0 : graph->graph.entity_count();
}

kgs_status kgs_task_load(const char* path, kgs_task** out, char** err_msg) {
    if (path == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    auto task = load_task_file(path);
    if (!task.ok()) {
        set_err(err_msg, task.error().message);
        return to_status(task.error().code);
    }
    *out = new kgs_task{task.take()};
    return KGS_OK;
}

kgs_status kgs_task_parse(const char* json_text, kgs_task** out, char** err_msg) {
    if (json_text == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    auto task = parse_task_json(json_text);
    if (!task.ok()) {
        set_err(err_msg, task.error().message);
        return to_status(task.error().code);
    }
    *out = new kgs_task{task.take()};
    return KGS_OK;
}

void kgs_task_free(kgs_task* task) {
    delete task;
}

const char* kgs_task_name(const kgs_task* task) {
    return task == nullptr ? "" : task->task.name.c_str();
}

void kgs_task_metadata(const kgs_task* task, int* entity_extraction, int* relation_complexity,
                       int* postprocessing) {
    if (task == nullptr) {
        return;
    }
    if (entity_extraction != nullptr) {
        *entity_extraction = task->task.metadata.entity_extraction;
    }
    if (relation_complexity != nullptr) {
        *relation_complexity = task->task.metadata.relation_complexity;
    }
    if (postprocessing != nullptr) {
        *postprocessing = task->task.metadata.postprocessing;
    }
}

kgs_status kgs_model_uniform(kgs_model** out) {
    if (out == nullptr) {
        return KGS_ERR_INVALID_ARGUMENT;
    }
    *out = new kgs_model{PredictionModel::uniform_model()};
    return KGS_OK;
}

kgs_status kgs_model_load(const char* path, kgs_model** out, char** err_msg) {
    if (path == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    auto model = PredictionModel::load_file(path);
    if (!model.ok()) {
        set_err(err_msg, model.error().message);
        return to_status(model.error().code);
    }
    *out = new kgs_model{model.take()};
    return KGS_OK;
}

kgs_status kgs_model_train(const char* dsl_name, size_t n_tasks, size_t examples_per_task,
                           uint64_t seed, kgs_model** out, char** err_msg) {
    if (dsl_name == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    if (std::string(dsl_name) != "flashfill") {
        set_err(err_msg, std::string("unknown DSL '") + dsl_name + "'");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    const DslDefinition& dsl = flashfill_dsl();
    auto grammar = TypedGrammar::compile(dsl.registry, 1, dsl.base_constants_in, {}, {}, 4);
    if (!grammar.ok()) {
        set_err(err_msg, grammar.error().message);
        return to_status(grammar.error().code);
    }
    WeightedGrammar weighted = WeightedGrammar::uniform(grammar.take());
    Rng rng(seed);
    auto corpus = generate_training_tasks(weighted, n_tasks, examples_per_task, rng);
    if (!corpus.ok()) {
        set_err(err_msg, corpus.error().message);
        return to_status(corpus.error().code);
    }
    auto model = train_counts(corpus.value(), dsl.registry, 1.0);
    if (!model.ok()) {
        set_err(err_msg, model.error().message);
        return to_status(model.error().code);
    }
    *out = new kgs_model{model.take()};
    return KGS_OK;
}

kgs_status kgs_model_save(const kgs_model* model, const char* path, char** err_msg) {
    if (model == nullptr || path == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    auto r = model->model.save_file(path);
    if (!r.ok()) {
        set_err(err_msg, r.error().message);
        return to_status(r.error().code);
    }
    return KGS_OK;
}

void kgs_model_free(kgs_model* model) {
    delete model;
}

void kgs_solve_config_init(kgs_solve_config* config) {
    if (config == nullptr) {
        return;
    }
    config->timeout_seconds = 60.0;
    config->max_path_len = 2;
    config->max_depth = 6;
    config->extractor_budget = 500;
    config->seed = 0;
}

kgs_status kgs_solve(const kgs_task* task, const kgs_graph* graph, const kgs_model* model,
                     const kgs_solve_config* config, kgs_result** out, char** err_msg) {
    if (task == nullptr || graph == nullptr || out == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    SolveConfig cfg;
    if (config != nullptr) {
        cfg.timeout_seconds = config->timeout_seconds;
        cfg.max_path_len = config->max_path_len;
        cfg.max_depth = config->max_depth;
        cfg.extractor_budget = config->extractor_budget;
        cfg.seed = config->seed;
    }
    const PredictionModel uniform = PredictionModel::uniform_model();
    const PredictionModel& m = model != nullptr ? model->model : uniform;
    auto result = solve(task->task, graph->graph, m, cfg);
    if (!result.ok()) {
        set_err(err_msg, result.error().message);
        return to_status(result.error().code);
    }
    *out = new kgs_result{result.take(), task->task};
    return KGS_OK;
}

void kgs_result_free(kgs_result* result) {
    delete result;
}

kgs_outcome kgs_result_outcome(const kgs_result* result) {
    if (result == nullptr) {
        return KGS_OUTCOME_NO_PROGRAM;
    }
    return static_cast<kgs_outcome>(static_cast<int>(result->result.outcome));
}

char* kgs_result_program_sexpr(const kgs_result* result) {
    if (result == nullptr || !result->result.program) {
        return nullptr;
    }
    return dup_string(result->result.program->to_sexpr());
}

char* kgs_result_program_pretty(const kgs_result* result) {
    if (result == nullptr || !result->result.program) {
        return nullptr;
    }
    return dup_string(pretty_print(*result->result.program, result->task.arity()));
}

char* kgs_result_json(const kgs_result* result) {
    if (result == nullptr) {
        return nullptr;
    }
    return dup_string(solve_result_to_json(result->result, result->task));
}

double kgs_result_wall_time(const kgs_result* result) {
    return result == nullptr ? 0.0 : result->result.stats.wall_time;
}

kgs_status kgs_emit_sparql(const kgs_task* task, int distance, int input_index, char** out_text,
                           char** err_msg) {
    if (task == nullptr || out_text == nullptr) {
        set_err(err_msg, "null argument");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    if (distance < 1) {
        set_err(err_msg, "distance must be at least 1");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    if (input_index < 0 || input_index >= task->task.arity()) {
        set_err(err_msg, "input index out of range");
        return KGS_ERR_INVALID_ARGUMENT;
    }
    const Sketch sketch = decompose(task->task);
    if (sketch.hole_count() == 0) {
        set_err(err_msg, "task decomposes into constants only; no hole to query");
        return KGS_ERR_INCONSISTENT_SPLIT;
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (size_t i = 0; i < task->task.examples.size(); ++i) {
        pairs.emplace_back(task->task.examples[i].inputs[static_cast<size_t>(input_index)],
                           sketch.holes[0][i]);
    }
    *out_text = dup_string(emit_sparql(pairs, distance));
    return KGS_OK;
}

}  // extern "C"
