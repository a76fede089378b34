// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "task.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kgsynth {

using nlohmann::json;

Result<Task> validate_task(Task task) {
    if (task.examples.size() < 2) {
        return Error(ErrorCode::InvalidArgument,
                     "task '" + task.name + "' needs at least 2 examples");
    }
    const size_t arity = task.examples[0].inputs.size();
    if (arity < 1) {
        return Error(ErrorCode::InvalidArgument, "task '" + task.name + "' has arity 0");
    }
    for (const auto& ex : task.examples) {
        if (ex.inputs.size() != arity) {
            return Error(ErrorCode::InvalidArgument,
                         "task '" + task.name + "' mixes example arities");
        }
    }
    const TaskMetadata& m = task.metadata;
    if (m.entity_extraction < 0 || m.entity_extraction > 2 || m.relation_complexity < 0 ||
        m.relation_complexity > 2 || m.postprocessing < 0 || m.postprocessing > 1) {
        return Error(ErrorCode::InvalidArgument,
                     "task '" + task.name + "' has metadata out of range");
    }
    return task;
}

Result<Task> parse_task_json(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) {
        return Error(ErrorCode::ParseError, "invalid JSON");
    }
    if (!doc.is_object() || !doc.contains("name") || !doc.contains("examples")) {
        return Error(ErrorCode::ParseError, "task JSON needs 'name' and 'examples'");
    }
    Task task;
    try {
        task.name = doc.at("name").get<std::string>();
        for (const auto& ex : doc.at("examples")) {
            Example example;
            for (const auto& in : ex.at("inputs")) {
                example.inputs.push_back(in.get<std::string>());
            }
            example.output = ex.at("output").get<std::string>();
            task.examples.push_back(std::move(example));
        }
        if (doc.contains("metadata")) {
            const auto& m = doc.at("metadata");
            task.metadata.entity_extraction = m.value("entity_extraction", 0);
            task.metadata.relation_complexity = m.value("relation_complexity", 0);
            task.metadata.postprocessing = m.value("postprocessing", 0);
        }
    } catch (const json::exception& e) {
        return Error(ErrorCode::ParseError, std::string("task JSON: ") + e.what());
    }
    return validate_task(std::move(task));
}

Result<Task> load_task_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        return Error(ErrorCode::IoError, "cannot open task file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto task = parse_task_json(buffer.str());
    if (!task.ok()) {
        return Error(task.error().code, path + ": " + task.error().message);
    }
    return task;
}

std::string task_to_json(const Task& task) {
    json doc;
    doc["name"] = task.name;
    doc["examples"] = json::array();
    for (const auto& ex : task.examples) {
        json e;
        e["inputs"] = ex.inputs;
        e["output"] = ex.output;
        doc["examples"].push_back(std::move(e));
    }
    doc["metadata"] = {{"entity_extraction", task.metadata.entity_extraction},
                       {"relation_complexity", task.metadata.relation_complexity},
                       {"postprocessing", task.metadata.postprocessing}};
    return doc.dump(2);
}

}  // namespace kgsynth
