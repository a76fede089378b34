// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_PREDICT_HPP
#define KGSYNTH_PREDICT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "grammar.hpp"
#include "task.hpp"

namespace kgsynth {

// Per-rule weight source for a task's grammar. The counts variant holds
// (non-terminal type, rule head) usage counts gathered from solved training
// tasks; smoothing keeps every rule's probability positive so no part of the
// search tree is ever cut off.
class PredictionModel {
public:
    enum class Kind { Uniform, Counts };

    static PredictionModel uniform_model();
    static PredictionModel counts_model(std::map<std::pair<std::string, std::string>, uint64_t> counts,
                                        double smoothing);

    Kind kind() const { return kind_; }
    double smoothing() const { return smoothing_; }
    const std::map<std::pair<std::string, std::string>, uint64_t>& counts() const {
        return counts_;
    }
    uint64_t count(const std::string& type_name, const std::string& head) const;

    // Deterministic text table, round-trippable.
    std::string serialize() const;
    static Result<PredictionModel> deserialize(const std::string& text);
    Result<bool> save_file(const std::string& path) const;
    static Result<PredictionModel> load_file(const std::string& path);

private:
    Kind kind_ = Kind::Uniform;
    std::map<std::pair<std::string, std::string>, uint64_t> counts_;
    double smoothing_ = 1.0;
};

struct TrainingPair {
    Task task;
    ProgramPtr solution;
};

using TrainingCorpus = std::vector<TrainingPair>;

// Samples programs from the weighted grammar, runs them on random inputs
// (alphanumeric plus space and comma, lengths 3..12) and keeps the pairs
// whose evaluation succeeds on every generated example. Slots whose retry
// budget runs out are skipped; more than half skipped is an error.
Result<TrainingCorpus> generate_training_tasks(const WeightedGrammar& weighted, size_t n,
                                               size_t examples_per_task, Rng& rng);

// counts(type, head) = number of times the head is used at a non-terminal of
// that type across all solutions; insensitive to corpus order.
Result<PredictionModel> train_counts(const TrainingCorpus& corpus, const DslRegistry& registry,
                                     double smoothing);

// Weights a grammar for a task: uniform model yields uniform weights, counts
// model weights each rule by counts(type, head) + smoothing, normalized per
// non-terminal. Every rule keeps positive probability.
Result<WeightedGrammar> predict_weights(const PredictionModel& model, TypedGrammar grammar,
                                        const Task& task);

}  // namespace kgsynth

#endif
