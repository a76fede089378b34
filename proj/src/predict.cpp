// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "predict.hpp"

#include <fstream>
#include <sstream>

#include "eval.hpp"

namespace kgsynth {

namespace {

constexpr const char* kModelHeader = "kgsynth-counts-model 1";
constexpr size_t kRetriesPerSlot = 20;
const char kInputAlphabet[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ,";

std::string random_input(Rng& rng) {
    const size_t len = 3 + static_cast<size_t>(rng.below(10));  // 3..12
    std::string out;
    out.reserve(len);
    const size_t alphabet_size = sizeof(kInputAlphabet) - 1;
    for (size_t i = 0; i < len; ++i) {
        out.push_back(kInputAlphabet[rng.below(alphabet_size)]);
    }
    return out;
}

}  // namespace

PredictionModel PredictionModel::uniform_model() {
    PredictionModel m;
    m.kind_ = Kind::Uniform;
    return m;
}

PredictionModel PredictionModel::counts_model(
    std::map<std::pair<std::string, std::string>, uint64_t> counts, double smoothing) {
    PredictionModel m;
    m.kind_ = Kind::Counts;
    m.counts_ = std::move(counts);
    m.smoothing_ = smoothing;
    return m;
}

uint64_t PredictionModel::count(const std::string& type_name, const std::string& head) const {
    auto it = counts_.find({type_name, head});
    return it == counts_.end() ? 0 : it->second;
}

std::string PredictionModel::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << kModelHeader << "\n";
    out << "smoothing\t" << smoothing_ << "\n";
    for (const auto& [key, value] : counts_) {
        out << key.first << "\t" << key.second << "\t" << value << "\n";
    }
    return out.str();
}

Result<PredictionModel> PredictionModel::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kModelHeader) {
        return Error(ErrorCode::ParseError, "unrecognized model header");
    }
    double smoothing = 1.0;
    if (!std::getline(in, line) || line.rfind("smoothing\t", 0) != 0) {
        return Error(ErrorCode::ParseError, "missing smoothing line");
    }
    try {
        smoothing = std::stod(line.substr(10));
    } catch (...) {
        return Error(ErrorCode::ParseError, "bad smoothing value");
    }
    if (!(smoothing > 0.0)) {
        return Error(ErrorCode::ParseError, "smoothing must be positive");
    }
    std::map<std::pair<std::string, std::string>, uint64_t> counts;
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const size_t tab1 = line.find('\t');
        const size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                      : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos) {
            return Error(ErrorCode::ParseError,
                         "model line " + std::to_string(line_no) + ": expected 3 fields");
        }
        try {
            counts[{line.substr(0, tab1), line.substr(tab1 + 1, tab2 - tab1 - 1)}] =
                std::stoull(line.substr(tab2 + 1));
        } catch (...) {
            return Error(ErrorCode::ParseError,
                         "model line " + std::to_string(line_no) + ": bad count");
        }
    }
    return counts_model(std::move(counts), smoothing);
}

Result<bool> PredictionModel::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return Error(ErrorCode::IoError, "cannot write model file '" + path + "'");
    }
    out << serialize();
    return true;
}

Result<PredictionModel> PredictionModel::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return Error(ErrorCode::IoError, "cannot open model file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto model = deserialize(buffer.str());
    if (!model.ok()) {
        return Error(model.error().code, path + ": " + model.error().message);
    }
    return model;
}

Result<TrainingCorpus> generate_training_tasks(const WeightedGrammar& weighted, size_t n,
                                               size_t examples_per_task, Rng& rng) {
    if (n < 1) {
        return Error(ErrorCode::InvalidArgument, "need at least one task");
    }
    if (examples_per_task < 2) {
        return Error(ErrorCode::InvalidArgument, "need at least two examples per task");
    }
    const int arity = weighted.grammar().arity();
    EmptyKgEnv env;
    TrainingCorpus corpus;
    corpus.reserve(n);
    size_t skipped = 0;
    for (size_t slot = 0; slot < n; ++slot) {
        bool produced = false;
        for (size_t attempt = 0; attempt < kRetriesPerSlot && !produced; ++attempt) {
            ProgramPtr program = weighted.sample(rng);
            Task task;
            task.name = "train-" + std::to_string(slot);
            bool all_ok = true;
            for (size_t e = 0; e < examples_per_task; ++e) {
                Example ex;
                for (int j = 0; j < arity; ++j) {
                    ex.inputs.push_back(random_input(rng));
                }
                auto out = evaluate(*program, ex.inputs, env);
                if (!out.ok()) {
                    all_ok = false;
                    break;
                }
                ex.output = out.take();
                task.examples.push_back(std::move(ex));
            }
            if (!all_ok) {
                continue;
            }
            corpus.push_back(TrainingPair{std::move(task), std::move(program)});
            produced = true;
        }
        if (!produced) {
            ++skipped;
        }
    }
    if (skipped * 2 > n) {
        return Error(ErrorCode::GenerationExhausted,
                     "retry budget spent for " + std::to_string(skipped) + " of " +
                         std::to_string(n) + " tasks");
    }
    return corpus;
}

namespace {

// Walks a solution with the type expected at each node, counting
// (type, head) uses. Argument types come from the head's signature.
Result<bool> count_uses(const Program& p, Atom expected, const DslRegistry& registry,
                        std::map<std::pair<std::string, std::string>, uint64_t>& counts) {
    ProgramPtr head = p.spine_head();
    std::vector<ProgramPtr> args = p.spine_arguments();
    counts[{atom_name(expected), head_key(*head)}] += 1;
    if (args.empty()) {
        return true;
    }
    std::vector<Atom> arg_types;
    if (head->kind() == Program::Kind::KgPath) {
        arg_types = {Atom::String};
    } else if (head->kind() == Program::Kind::Primitive) {
        const Primitive* prim = registry.find(head->name());
        if (prim == nullptr) {
            return Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + head->name() + "'");
        }
        const SemType* t = &prim->type;
        while (t->is_arrow()) {
            arg_types.push_back(t->argument().atom());
            t = &t->result();
        }
    } else {
        return Error(ErrorCode::TypeMismatch, "application head is not callable");
    }
    if (arg_types.size() != args.size()) {
        return Error(ErrorCode::ArityMismatch, "partial application in solution");
    }
    for (size_t i = 0; i < args.size(); ++i) {
        auto r = count_uses(*args[i], arg_types[i], registry, counts);
        if (!r.ok()) {
            return r;
        }
    }
    return true;
}

}  // namespace

Result<PredictionModel> train_counts(const TrainingCorpus& corpus, const DslRegistry& registry,
                                     double smoothing) {
    if (corpus.empty()) {
        return Error(ErrorCode::InvalidArgument, "empty training corpus");
    }
    if (!(smoothing > 0.0)) {
        return Error(ErrorCode::InvalidArgument, "smoothing must be positive");
    }
    std::map<std::pair<std::string, std::string>, uint64_t> counts;
    for (const auto& pair : corpus) {
        auto r = count_uses(*pair.solution, Atom::String, registry, counts);
        if (!r.ok()) {
            return r.error();
        }
    }
    return PredictionModel::counts_model(std::move(counts), smoothing);
}

Result<WeightedGrammar> predict_weights(const PredictionModel& model, TypedGrammar grammar,
                                        const Task& task) {
    (void)task;  // grammar-conditioned models only, for now
    if (grammar.empty()) {
        return Error(ErrorCode::EmptyGrammar, "cannot weight an empty grammar");
    }
    if (model.kind() == PredictionModel::Kind::Uniform) {
        return WeightedGrammar::uniform(std::move(grammar));
    }
    const double smoothing = model.smoothing();
    return WeightedGrammar::from_head_weights(
        std::move(grammar), [&model, smoothing](Atom type, const Program& head) {
            return static_cast<double>(model.count(atom_name(type), head_key(head))) + smoothing;
        });
}

}  // namespace kgsynth
