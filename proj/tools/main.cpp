// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the engine exclusively through the
// public C API.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kgsynth.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolved = 1;
constexpr int kExitUsage = 2;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { kgs_string_free(ptr); }
    std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

std::string take_error(char*& err) {
    OwnedString owned{err};
    err = nullptr;
    return owned.str();
}

struct GraphHandle {
    kgs_graph* ptr = nullptr;
    ~GraphHandle() { kgs_graph_free(ptr); }
};

struct TaskHandle {
    kgs_task* ptr = nullptr;
    ~TaskHandle() { kgs_task_free(ptr); }
};

struct ModelHandle {
    kgs_model* ptr = nullptr;
    ~ModelHandle() { kgs_model_free(ptr); }
};

struct ResultHandle {
    kgs_result* ptr = nullptr;
    ~ResultHandle() { kgs_result_free(ptr); }
};

struct CommonOptions {
    std::string kg_file;
    std::string model_file;
    double timeout = 60.0;
    int max_path_len = 2;
    int max_depth = 6;
    unsigned long long seed = 0;
};

int load_model_or_uniform(const CommonOptions& opts, ModelHandle& model) {
    if (opts.model_file.empty()) {
        kgs_model_uniform(&model.ptr);
        return kExitSolved;
    }
    char* err = nullptr;
    if (kgs_model_load(opts.model_file.c_str(), &model.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    return kExitSolved;
}

void fill_config(const CommonOptions& opts, kgs_solve_config& config) {
    kgs_solve_config_init(&config);
    config.timeout_seconds = opts.timeout;
    config.max_path_len = opts.max_path_len;
    config.max_depth = opts.max_depth;
    config.seed = opts.seed;
}

int run_solve(const std::string& task_file, const CommonOptions& opts) {
    char* err = nullptr;
    GraphHandle graph;
    if (kgs_graph_load(opts.kg_file.c_str(), &graph.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    TaskHandle task;
    if (kgs_task_load(task_file.c_str(), &task.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    ModelHandle model;
    if (int rc = load_model_or_uniform(opts, model); rc != kExitSolved) {
        return rc;
    }
    kgs_solve_config config;
    fill_config(opts, config);
    ResultHandle result;
    if (kgs_solve(task.ptr, graph.ptr, model.ptr, &config, &result.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    if (kgs_result_outcome(result.ptr) == KGS_OUTCOME_SOLVED) {
        OwnedString pretty{kgs_result_program_pretty(result.ptr)};
        std::cout << pretty.str() << "\n";
    }
    OwnedString json{kgs_result_json(result.ptr)};
    std::cout << json.str() << "\n";
    return kgs_result_outcome(result.ptr) == KGS_OUTCOME_SOLVED ? kExitSolved : kExitUnsolved;
}

struct EvalRow {
    std::string name;
    int entity_extraction = 0;
    int relation_complexity = 0;
    int postprocessing = 0;
    std::string outcome;
    double wall_time = 0.0;
};

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted.push_back(c);
        }
    }
    quoted.push_back('"');
    return quoted;
}

int run_eval(const std::string& task_dir, const CommonOptions& opts, const std::string& out_file,
             int workers) {
    char* err = nullptr;
    GraphHandle graph;
    if (kgs_graph_load(opts.kg_file.c_str(), &graph.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    ModelHandle model;
    if (int rc = load_model_or_uniform(opts, model); rc != kExitSolved) {
        return rc;
    }

    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(task_dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path().string());
        }
    }
    if (ec) {
        std::cerr << "error: cannot read directory '" << task_dir << "'\n";
        return kExitUsage;
    }
    if (files.empty()) {
        std::cerr << "error: no task files in '" << task_dir << "'\n";
        return kExitUsage;
    }
    std::sort(files.begin(), files.end());

    std::vector<EvalRow> rows(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t idx = next.fetch_add(1);
            if (idx >= files.size()) {
                return;
            }
            EvalRow& row = rows[idx];
            char* werr = nullptr;
            TaskHandle task;
            if (kgs_task_load(files[idx].c_str(), &task.ptr, &werr) != KGS_OK) {
                kgs_string_free(werr);
                row.name = fs::path(files[idx]).stem().string();
                row.outcome = "Error";
                continue;
            }
            row.name = kgs_task_name(task.ptr);
            kgs_task_metadata(task.ptr, &row.entity_extraction, &row.relation_complexity,
                              &row.postprocessing);
            kgs_solve_config config;
            fill_config(opts, config);
            ResultHandle result;
            if (kgs_solve(task.ptr, graph.ptr, model.ptr, &config, &result.ptr, &werr) != KGS_OK) {
                kgs_string_free(werr);
                row.outcome = "Error";
                continue;
            }
            switch (kgs_result_outcome(result.ptr)) {
                case KGS_OUTCOME_SOLVED: row.outcome = "Solved"; break;
                case KGS_OUTCOME_TIMEOUT: row.outcome = "Timeout"; break;
                default: row.outcome = "NoProgram"; break;
            }
            row.wall_time = kgs_result_wall_time(result.ptr);
        }
    };
    const int worker_count = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int i = 1; i < worker_count; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    std::sort(rows.begin(), rows.end(),
              [](const EvalRow& a, const EvalRow& b) { return a.name < b.name; });

    size_t solved = 0;
    double cumulative = 0.0;
    std::ostringstream csv;
    csv << "name,entity_extraction,relation_complexity,postprocessing,outcome,wall_time_s\n";
    for (const auto& row : rows) {
        if (row.outcome == "Solved") {
            ++solved;
        }
        cumulative += row.wall_time;
        char wall[32];
        std::snprintf(wall, sizeof(wall), "%.3f", row.wall_time);
        csv << csv_field(row.name) << "," << row.entity_extraction << ","
            << row.relation_complexity << "," << row.postprocessing << "," << row.outcome << ","
            << wall << "\n";
        std::printf("%-32s (%d,%d,%d)  %-9s  %7.3fs  cum %8.3fs\n", row.name.c_str(),
                    row.entity_extraction, row.relation_complexity, row.postprocessing,
                    row.outcome.c_str(), row.wall_time, cumulative);
    }
    std::cout << "solved " << solved << "/" << rows.size() << "\n";

    std::ofstream out(out_file, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_file << "'\n";
        return kExitUsage;
    }
    out << csv.str();
    return kExitSolved;
}

int run_train(const std::string& dsl, unsigned long long n, unsigned long long examples,
              unsigned long long seed, const std::string& out_file) {
    char* err = nullptr;
    ModelHandle model;
    if (kgs_model_train(dsl.c_str(), static_cast<size_t>(n), static_cast<size_t>(examples), seed,
                        &model.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUnsolved;
    }
    if (kgs_model_save(model.ptr, out_file.c_str(), &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    std::cout << "model written to " << out_file << "\n";
    return kExitSolved;
}

int run_emit_sparql(const std::string& task_file, int distance, int input_index) {
    char* err = nullptr;
    TaskHandle task;
    if (kgs_task_load(task_file.c_str(), &task.ptr, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUsage;
    }
    char* text = nullptr;
    if (kgs_emit_sparql(task.ptr, distance, input_index, &text, &err) != KGS_OK) {
        std::cerr << "error: " << take_error(err) << "\n";
        return kExitUnsolved;
    }
    OwnedString owned{text};
    std::cout << owned.str();
    return kExitSolved;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool kg_required) {
    auto* kg = cmd->add_option("--kg", opts.kg_file, "knowledge graph triple file");
    if (kg_required) {
        kg->required();
    }
    cmd->add_option("--model", opts.model_file, "prediction model file");
    cmd->add_option("--timeout", opts.timeout, "timeout per task in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-path-len", opts.max_path_len, "maximum relation path length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", opts.max_depth, "maximum program depth")
        ->check(CLI::Range(2, 12));
    cmd->add_option("--seed", opts.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-powered programming-by-example synthesizer"};
    app.require_subcommand(1);

    // solve
    std::string solve_task;
    CommonOptions solve_opts;
    auto* solve_cmd = app.add_subcommand("solve", "solve one task file");
    solve_cmd->add_option("task", solve_task, "task JSON file")->required();
    add_common(solve_cmd, solve_opts, true);

    // eval
    std::string eval_dir;
    std::string eval_out = "eval_report.csv";
    int eval_workers = 1;
    CommonOptions eval_opts;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a directory of tasks");
    eval_cmd->add_option("tasks", eval_dir, "directory of task JSON files")->required();
    add_common(eval_cmd, eval_opts, true);
    eval_cmd->add_option("--out", eval_out, "CSV report path");
    eval_cmd->add_option("--workers", eval_workers, "solver threads")->check(CLI::PositiveNumber);

    // train
    std::string train_dsl = "flashfill";
    unsigned long long train_n = 2500;
    unsigned long long train_examples = 4;
    unsigned long long train_seed = 0;
    std::string train_out = "model.txt";
    auto* train_cmd = app.add_subcommand("train", "train a counts model on generated tasks");
    train_cmd->add_option("--dsl", train_dsl, "DSL name");
    train_cmd->add_option("-n,--tasks", train_n, "number of generated tasks")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--examples", train_examples, "examples per generated task")
        ->check(CLI::Range(2ull, 64ull));
    train_cmd->add_option("--seed", train_seed, "random seed");
    train_cmd->add_option("--out", train_out, "output model file");

    // emit-sparql
    std::string sparql_task;
    std::string sparql_kg;
    int sparql_distance = 2;
    int sparql_input = 0;
    auto* sparql_cmd = app.add_subcommand("emit-sparql", "print the path query for a task");
    sparql_cmd->add_option("task", sparql_task, "task JSON file")->required();
    sparql_cmd->add_option("--kg", sparql_kg, "knowledge graph file (unused, accepted)");
    sparql_cmd->add_option("--distance", sparql_distance, "path length")
        ->check(CLI::PositiveNumber);
    sparql_cmd->add_option("--input", sparql_input, "input position used as source");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (solve_cmd->parsed()) {
        return run_solve(solve_task, solve_opts);
    }
    if (eval_cmd->parsed()) {
        return run_eval(eval_dir, eval_opts, eval_out, eval_workers);
    }
    if (train_cmd->parsed()) {
        return run_train(train_dsl, train_n, train_examples, train_seed, train_out);
    }
    if (sparql_cmd->parsed()) {
        return run_emit_sparql(sparql_task, sparql_distance, sparql_input);
    }
    return kExitUsage;
}
