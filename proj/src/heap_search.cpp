// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "heap_search.hpp"

#include <algorithm>
#include <cmath>

namespace kgsynth {

int64_t order_key(double log_prob) {
    // Quantize to a 1e-12 grid; clamp so extreme log-probabilities cannot
    // overflow the key.
    if (log_prob < -9e6) {
        log_prob = -9e6;
    }
    return static_cast<int64_t>(std::llround(log_prob * 1e12));
}

bool enumeration_less(int64_t key_a, const std::string& sexpr_a, int64_t key_b,
                      const std::string& sexpr_b) {
    if (key_a != key_b) {
        return key_a > key_b;  // higher probability first
    }
    return sexpr_a < sexpr_b;
}

ProgramStream::ProgramStream(const WeightedGrammar& weighted) : weighted_(&weighted) {
    states_.resize(weighted.grammar().size());
}

std::optional<ProgramStream::Candidate> ProgramStream::build_candidate(
    int nt_id, size_t rule_idx, std::vector<size_t> ranks) {
    const Rule& rule = weighted_->grammar().nt(nt_id).rules[rule_idx];
    Candidate cand;
    cand.rule = rule_idx;
    cand.log_prob = weighted_->log_probability(nt_id, rule_idx);
    std::vector<ProgramPtr> args;
    args.reserve(rule.children.size());
    for (size_t i = 0; i < rule.children.size(); ++i) {
        const Candidate* child = query(rule.children[i], ranks[i]);
        if (child == nullptr) {
            return std::nullopt;
        }
        cand.log_prob += child->log_prob;
        args.push_back(child->program);
    }
    cand.ranks = std::move(ranks);
    cand.program = Program::apply_chain(rule.head, args);
    cand.key = order_key(cand.log_prob);
    cand.sexpr = cand.program->to_sexpr();
    return cand;
}

void ProgramStream::initialize(int nt_id) {
    NtState& state = states_[static_cast<size_t>(nt_id)];
    state.initialized = true;
    const auto& rules = weighted_->grammar().nt(nt_id).rules;
    for (size_t r = 0; r < rules.size(); ++r) {
        std::vector<size_t> ranks(rules[r].children.size(), 0);
        state.seen.insert({r, ranks});
        if (auto cand = build_candidate(nt_id, r, ranks)) {
            state.heap.push(std::move(*cand));
        }
    }
}

const ProgramStream::Candidate* ProgramStream::query(int nt_id, size_t k) {
    NtState& state = states_[static_cast<size_t>(nt_id)];
    if (!state.initialized) {
        initialize(nt_id);
    }
    while (state.emitted.size() <= k) {
        if (state.heap.empty()) {
            return nullptr;
        }
        Candidate best = state.heap.top();
        state.heap.pop();
        // Push the successors of the emitted derivation: bump one child rank.
        const Rule& rule = weighted_->grammar().nt(nt_id).rules[best.rule];
        for (size_t i = 0; i < rule.children.size(); ++i) {
            std::vector<size_t> ranks = best.ranks;
            ranks[i] += 1;
            if (!state.seen.insert({best.rule, ranks}).second) {
                continue;
            }
            if (auto cand = build_candidate(nt_id, best.rule, std::move(ranks))) {
                state.heap.push(std::move(*cand));
            }
        }
        state.emitted.push_back(std::move(best));
    }
    return &state.emitted[k];
}

std::optional<EnumeratedProgram> ProgramStream::next() {
    if (weighted_->grammar().empty()) {
        return std::nullopt;
    }
    const Candidate* cand = query(weighted_->grammar().start(), start_cursor_);
    if (cand == nullptr) {
        return std::nullopt;
    }
    ++start_cursor_;
    return EnumeratedProgram{cand->program, cand->log_prob, cand->sexpr};
}

Result<std::vector<EnumeratedProgram>> brute_force_enumerate(const WeightedGrammar& weighted,
                                                             size_t limit) {
    const TypedGrammar& grammar = weighted.grammar();
    if (grammar.empty()) {
        return std::vector<EnumeratedProgram>{};
    }
    const std::vector<double> counts = grammar.derivation_counts();
    if (!(counts[static_cast<size_t>(grammar.start())] <= static_cast<double>(limit))) {
        return Error(ErrorCode::TooLarge, "grammar has more than " + std::to_string(limit) +
                                              " derivations");
    }

    std::vector<std::vector<EnumeratedProgram>> memo(grammar.size());

    // Children have strictly smaller depth; evaluate in depth order.
    std::vector<int> order(grammar.size());
    for (size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&grammar](int a, int b) {
        return grammar.nt(a).depth < grammar.nt(b).depth;
    });

    for (int id : order) {
        std::vector<EnumeratedProgram> items;
        const auto& nt = grammar.nt(id);
        for (size_t r = 0; r < nt.rules.size(); ++r) {
            const Rule& rule = nt.rules[r];
            const double rule_lp = weighted.log_probability(id, r);
            if (rule.children.empty()) {
                EnumeratedProgram e;
                e.program = rule.head;
                e.log_prob = rule_lp;
                e.sexpr = e.program->to_sexpr();
                items.push_back(std::move(e));
                continue;
            }
            // Cartesian product over child derivations.
            std::vector<size_t> idx(rule.children.size(), 0);
            while (true) {
                EnumeratedProgram e;
                e.log_prob = rule_lp;
                std::vector<ProgramPtr> args;
                args.reserve(rule.children.size());
                bool valid = true;
                for (size_t i = 0; i < rule.children.size(); ++i) {
                    const auto& child_items = memo[static_cast<size_t>(rule.children[i])];
                    if (child_items.empty()) {
                        valid = false;
                        break;
                    }
                    const auto& child = child_items[idx[i]];
                    e.log_prob += child.log_prob;
                    args.push_back(child.program);
                }
                if (!valid) {
                    break;
                }
                e.program = Program::apply_chain(rule.head, args);
                e.sexpr = e.program->to_sexpr();
                items.push_back(std::move(e));
                // Advance the product counter.
                size_t pos = rule.children.size();
                while (pos > 0) {
                    --pos;
                    idx[pos] += 1;
                    if (idx[pos] < memo[static_cast<size_t>(rule.children[pos])].size()) {
                        break;
                    }
                    idx[pos] = 0;
                    if (pos == 0) {
                        pos = SIZE_MAX;
                        break;
                    }
                }
                if (pos == SIZE_MAX) {
                    break;
                }
            }
        }
        memo[static_cast<size_t>(id)] = std::move(items);
    }

    std::vector<EnumeratedProgram> result = std::move(memo[static_cast<size_t>(grammar.start())]);
    std::stable_sort(result.begin(), result.end(),
                     [](const EnumeratedProgram& a, const EnumeratedProgram& b) {
                         return enumeration_less(order_key(a.log_prob), a.sexpr,
                                                 order_key(b.log_prob), b.sexpr);
                     });
    return result;
}

bool verify(const Program& program, const Task& task, const KgEnv& env) {
    for (const auto& example : task.examples) {
        auto out = evaluate(program, example.inputs, env);
        if (!out.ok() || out.value() != example.output) {
            return false;
        }
    }
    return true;
}

}  // namespace kgsynth
