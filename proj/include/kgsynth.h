/* kgsynth - knowledge-powered programming-by-example synthesizer
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the synthesis engine. All handles are opaque; every function
 * returning kgs_status reports failure details through the optional err_msg
 * out-parameter (free it with kgs_string_free). Strings returned as char*
 * are owned by the caller.
 */

#ifndef KGSYNTH_H
#define KGSYNTH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgs_status {
    KGS_OK = 0,
    KGS_ERR_UNKNOWN_PRIMITIVE = 1,
    KGS_ERR_ARITY_MISMATCH = 2,
    KGS_ERR_TYPE_MISMATCH = 3,
    KGS_ERR_VARIABLE_OUT_OF_RANGE = 4,
    KGS_ERR_NO_MATCH = 5,
    KGS_ERR_KG_RESOLUTION = 6,
    KGS_ERR_EMPTY_GRAMMAR = 7,
    KGS_ERR_NOT_DERIVABLE = 8,
    KGS_ERR_TOO_LARGE = 9,
    KGS_ERR_NO_PATH = 10,
    KGS_ERR_PARSE = 11,
    KGS_ERR_EMPTY_GRAPH = 12,
    KGS_ERR_INCONSISTENT_SPLIT = 13,
    KGS_ERR_GENERATION_EXHAUSTED = 14,
    KGS_ERR_INVALID_ARGUMENT = 15,
    KGS_ERR_IO = 16,
} kgs_status;

typedef enum kgs_outcome {
    KGS_OUTCOME_SOLVED = 0,
    KGS_OUTCOME_TIMEOUT = 1,
    KGS_OUTCOME_NO_PROGRAM = 2,
} kgs_outcome;

typedef struct kgs_graph kgs_graph;
typedef struct kgs_task kgs_task;
typedef struct kgs_model kgs_model;
typedef struct kgs_result kgs_result;

typedef struct kgs_solve_config {
    double timeout_seconds;  /* default 60 */
    int max_path_len;        /* default 2 */
    int max_depth;           /* default 6 */
    int extractor_budget;    /* default 500 */
    uint64_t seed;           /* reserved; solving is deterministic */
} kgs_solve_config;

const char* kgs_status_name(kgs_status status);
void kgs_string_free(char* text);

/* Knowledge graph: UTF-8 text, one subject<TAB>relation<TAB>object triple
 * per line, '#' comments. */
kgs_status kgs_graph_load(const char* path, kgs_graph** out, char** err_msg);
void kgs_graph_free(kgs_graph* graph);
size_t kgs_graph_triple_count(const kgs_graph* graph);
size_t kgs_graph_entity_count(const kgs_graph* graph);

/* Tasks: JSON with name, examples[{inputs, output}], metadata. */
kgs_status kgs_task_load(const char* path, kgs_task** out, char** err_msg);
kgs_status kgs_task_parse(const char* json_text, kgs_task** out, char** err_msg);
void kgs_task_free(kgs_task* task);
const char* kgs_task_name(const kgs_task* task);
void kgs_task_metadata(const kgs_task* task, int* entity_extraction, int* relation_complexity,
                       int* postprocessing);

/* Prediction models. kgs_model_train generates a synthetic corpus from the
 * named DSL ("flashfill") under uniform weights and fits the counts model. */
kgs_status kgs_model_uniform(kgs_model** out);
kgs_status kgs_model_load(const char* path, kgs_model** out, char** err_msg);
kgs_status kgs_model_train(const char* dsl_name, size_t n_tasks, size_t examples_per_task,
                           uint64_t seed, kgs_model** out, char** err_msg);
kgs_status kgs_model_save(const kgs_model* model, const char* path, char** err_msg);
void kgs_model_free(kgs_model* model);

/* Solving. model may be NULL for uniform weights. */
void kgs_solve_config_init(kgs_solve_config* config);
kgs_status kgs_solve(const kgs_task* task, const kgs_graph* graph, const kgs_model* model,
                     const kgs_solve_config* config, kgs_result** out, char** err_msg);
void kgs_result_free(kgs_result* result);
kgs_outcome kgs_result_outcome(const kgs_result* result);
/* NULL unless solved. */
char* kgs_result_program_sexpr(const kgs_result* result);
char* kgs_result_program_pretty(const kgs_result* result);
char* kgs_result_json(const kgs_result* result);
double kgs_result_wall_time(const kgs_result* result);

/* SPARQL emission for the first hole of a task's decomposition: sources are
 * the inputs at input_index, targets the hole fragments. */
kgs_status kgs_emit_sparql(const kgs_task* task, int distance, int input_index, char** out_text,
                           char** err_msg);

#ifdef __cplusplus
}
#endif

#endif /* KGSYNTH_H */
