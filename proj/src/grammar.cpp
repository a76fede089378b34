// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "grammar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace kgsynth {

namespace {

constexpr double kProbSumTolerance = 1e-9;

int atom_rank(Atom a) {
    switch (a) {
        case Atom::String: return 0;
        case Atom::Regexp: return 1;
        case Atom::ConstantIn: return 2;
        case Atom::ConstantOut: return 3;
    }
    return 4;
}

struct Callable {
    ProgramPtr head;
    std::vector<Atom> argument_types;
    Atom result;
};

}  // namespace

Result<TypedGrammar> TypedGrammar::compile(const DslRegistry& registry, int arity,
                                           const std::vector<std::string>& constants_in,
                                           const std::vector<std::string>& constants_out,
                                           const std::vector<std::string>& kg_paths,
                                           int max_depth) {
    if (max_depth < 2) {
        return Error(ErrorCode::InvalidArgument, "max_depth must be at least 2");
    }
    if (arity < 0) {
        return Error(ErrorCode::InvalidArgument, "arity must be non-negative");
    }

    auto dedup = [](const std::vector<std::string>& items) {
        std::vector<std::string> out;
        for (const auto& s : items) {
            if (std::find(out.begin(), out.end(), s) == out.end()) {
                out.push_back(s);
            }
        }
        return out;
    };

    // Leaves in canonical order.
    std::vector<std::pair<ProgramPtr, Atom>> leaves;
    for (int i = 0; i < arity; ++i) {
        leaves.emplace_back(Program::variable(i), Atom::String);
    }
    for (const auto& text : dedup(constants_in)) {
        leaves.emplace_back(Program::constant(text, ConstantFlavor::Input), Atom::ConstantIn);
    }
    for (const auto& text : dedup(constants_out)) {
        leaves.emplace_back(Program::constant(text, ConstantFlavor::Output), Atom::ConstantOut);
    }
    std::vector<Callable> callables;
    for (const auto& prim : registry.primitives()) {
        if (!prim.type.is_arrow()) {
            leaves.emplace_back(Program::primitive(prim.name), prim.type.atom());
            continue;
        }
        Callable c;
        c.head = Program::primitive(prim.name);
        const SemType* t = &prim.type;
        while (t->is_arrow()) {
            if (t->argument().is_arrow()) {
                return Error(ErrorCode::InvalidArgument,
                             "higher-order primitive '" + prim.name + "' is not supported");
            }
            c.argument_types.push_back(t->argument().atom());
            t = &t->result();
        }
        c.result = t->atom();
        callables.push_back(std::move(c));
    }
    for (const auto& path : dedup(kg_paths)) {
        Callable c;
        c.head = Program::kg_path(path);
        c.argument_types = {Atom::String};
        c.result = Atom::String;
        callables.push_back(std::move(c));
    }

    const Atom atoms[] = {Atom::String, Atom::Regexp, Atom::ConstantIn, Atom::ConstantOut};

    // Dense id layout before trimming: (atom, depth) -> id.
    auto raw_id = [max_depth](Atom a, int depth) {
        return atom_rank(a) * max_depth + (depth - 1);
    };
    const int raw_count = 4 * max_depth;
    std::vector<NonTerminal> raw(static_cast<size_t>(raw_count));
    for (Atom a : atoms) {
        for (int d = 1; d <= max_depth; ++d) {
            NonTerminal& nt = raw[static_cast<size_t>(raw_id(a, d))];
            nt.type = a;
            nt.depth = d;
            SemType nt_type = [a] {
                switch (a) {
                    case Atom::String: return SemType::string();
                    case Atom::Regexp: return SemType::regexp();
                    case Atom::ConstantIn: return SemType::constant_in();
                    case Atom::ConstantOut: return SemType::constant_out();
                }
                return SemType::string();
            }();
            for (const auto& [head, leaf_type] : leaves) {
                SemType lt = [leaf_type] {
                    switch (leaf_type) {
                        case Atom::String: return SemType::string();
                        case Atom::Regexp: return SemType::regexp();
                        case Atom::ConstantIn: return SemType::constant_in();
                        case Atom::ConstantOut: return SemType::constant_out();
                    }
                    return SemType::string();
                }();
                if (assignable(lt, nt_type)) {
                    nt.rules.push_back(Rule{head, {}});
                }
            }
            if (d < 2) {
                continue;
            }
            for (const auto& c : callables) {
                if (c.result != a) {
                    continue;
                }
                const int k = static_cast<int>(c.argument_types.size());
                if (k + 1 > d) {
                    continue;
                }
                Rule rule;
                rule.head = c.head;
                bool ok = true;
                for (int i = 0; i < k; ++i) {
                    // Argument i (0-based) sits under k - i application
                    // nodes of the curried AST, so its depth budget shrinks
                    // by that much.
                    const int child_depth = d - (k - i);
                    if (child_depth < 1) {
                        ok = false;
                        break;
                    }
                    rule.children.push_back(raw_id(c.argument_types[static_cast<size_t>(i)],
                                                   child_depth));
                }
                if (ok) {
                    nt.rules.push_back(std::move(rule));
                }
            }
        }
    }

    // Productivity fixpoint.
    std::vector<bool> productive(static_cast<size_t>(raw_count), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int id = 0; id < raw_count; ++id) {
            if (productive[static_cast<size_t>(id)]) {
                continue;
            }
            for (const auto& rule : raw[static_cast<size_t>(id)].rules) {
                bool all = true;
                for (int child : rule.children) {
                    if (!productive[static_cast<size_t>(child)]) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    productive[static_cast<size_t>(id)] = true;
                    changed = true;
                    break;
                }
            }
        }
    }

    const int start_raw = raw_id(Atom::String, max_depth);
    if (!productive[static_cast<size_t>(start_raw)]) {
        return Error(ErrorCode::EmptyGrammar, "no derivable program for the start symbol");
    }

    // Reachability from the start over productive rules.
    std::vector<bool> reachable(static_cast<size_t>(raw_count), false);
    std::vector<int> todo{start_raw};
    reachable[static_cast<size_t>(start_raw)] = true;
    while (!todo.empty()) {
        int id = todo.back();
        todo.pop_back();
        for (const auto& rule : raw[static_cast<size_t>(id)].rules) {
            bool all = true;
            for (int child : rule.children) {
                if (!productive[static_cast<size_t>(child)]) {
                    all = false;
                    break;
                }
            }
            if (!all) {
                continue;
            }
            for (int child : rule.children) {
                if (!reachable[static_cast<size_t>(child)]) {
                    reachable[static_cast<size_t>(child)] = true;
                    todo.push_back(child);
                }
            }
        }
    }

    // Compact ids, preserving the canonical (atom, depth) order.
    std::vector<int> remap(static_cast<size_t>(raw_count), -1);
    TypedGrammar g;
    for (int id = 0; id < raw_count; ++id) {
        if (productive[static_cast<size_t>(id)] && reachable[static_cast<size_t>(id)]) {
            remap[static_cast<size_t>(id)] = static_cast<int>(g.nts_.size());
            g.nts_.push_back(NonTerminal{raw[static_cast<size_t>(id)].type,
                                         raw[static_cast<size_t>(id)].depth,
                                         {}});
        }
    }
    for (int id = 0; id < raw_count; ++id) {
        if (remap[static_cast<size_t>(id)] < 0) {
            continue;
        }
        NonTerminal& out = g.nts_[static_cast<size_t>(remap[static_cast<size_t>(id)])];
        for (const auto& rule : raw[static_cast<size_t>(id)].rules) {
            bool all = true;
            Rule mapped;
            mapped.head = rule.head;
            for (int child : rule.children) {
                if (remap[static_cast<size_t>(child)] < 0) {
                    all = false;
                    break;
                }
                mapped.children.push_back(remap[static_cast<size_t>(child)]);
            }
            if (all) {
                out.rules.push_back(std::move(mapped));
            }
        }
    }
    g.start_ = remap[static_cast<size_t>(start_raw)];
    g.arity_ = arity;
    g.max_depth_ = max_depth;
    return g;
}

std::vector<double> TypedGrammar::derivation_counts() const {
    // Children always have strictly smaller depth, so iterating non-terminals
    // by depth yields a valid evaluation order.
    std::vector<int> order(nts_.size());
    for (size_t i = 0; i < nts_.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(),
              [this](int a, int b) { return nts_[static_cast<size_t>(a)].depth <
                                            nts_[static_cast<size_t>(b)].depth; });
    std::vector<double> counts(nts_.size(), 0.0);
    for (int id : order) {
        double total = 0.0;
        for (const auto& rule : nts_[static_cast<size_t>(id)].rules) {
            double prod = 1.0;
            for (int child : rule.children) {
                prod *= counts[static_cast<size_t>(child)];
            }
            total += prod;
        }
        counts[static_cast<size_t>(id)] = total;
    }
    return counts;
}

std::string nt_label(const TypedGrammar& grammar, int id) {
    const auto& nt = grammar.nt(id);
    return std::string("NT(") + atom_name(nt.type) + "," + std::to_string(nt.depth) + ")";
}

std::string TypedGrammar::dump() const {
    std::ostringstream out;
    for (size_t id = 0; id < nts_.size(); ++id) {
        for (const auto& rule : nts_[id].rules) {
            out << nt_label(*this, static_cast<int>(id)) << ": " << rule.head->to_sexpr()
                << " ->";
            for (int child : rule.children) {
                out << " " << nt_label(*this, child);
            }
            out << "\n";
        }
    }
    return out.str();
}

bool TypedGrammar::structurally_equal(const TypedGrammar& other) const {
    if (start_ != other.start_ || arity_ != other.arity_ || max_depth_ != other.max_depth_ ||
        nts_.size() != other.nts_.size()) {
        return false;
    }
    for (size_t i = 0; i < nts_.size(); ++i) {
        const auto& a = nts_[i];
        const auto& b = other.nts_[i];
        if (a.type != b.type || a.depth != b.depth || a.rules.size() != b.rules.size()) {
            return false;
        }
        for (size_t r = 0; r < a.rules.size(); ++r) {
            if (!program_equal(a.rules[r].head, b.rules[r].head) ||
                a.rules[r].children != b.rules[r].children) {
                return false;
            }
        }
    }
    return true;
}

std::string head_key(const Program& head) {
    switch (head.kind()) {
        case Program::Kind::Primitive: return head.name();
        case Program::Kind::Variable: return "var" + std::to_string(head.index());
        case Program::Kind::Constant:
            return head.flavor() == ConstantFlavor::Input ? "cst_in" : "cst_out";
        case Program::Kind::KgPath: return "kg_path";
        case Program::Kind::Apply: break;
    }
    return "?";
}

Result<WeightedGrammar> WeightedGrammar::with_probabilities(
    TypedGrammar grammar, std::vector<std::vector<double>> probs) {
    if (probs.size() != grammar.size()) {
        return Error(ErrorCode::InvalidArgument, "probability table shape mismatch");
    }
    for (size_t id = 0; id < grammar.size(); ++id) {
        const auto& nt = grammar.nt(static_cast<int>(id));
        if (probs[id].size() != nt.rules.size()) {
            return Error(ErrorCode::InvalidArgument, "probability table shape mismatch");
        }
        double sum = 0.0;
        for (double p : probs[id]) {
            if (!(p > 0.0) || p > 1.0) {
                return Error(ErrorCode::InvalidArgument,
                             "rule probabilities must lie in (0, 1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbSumTolerance) {
            return Error(ErrorCode::InvalidArgument,
                         "rule probabilities at " + nt_label(grammar, static_cast<int>(id)) +
                             " sum to " + std::to_string(sum));
        }
    }
    WeightedGrammar w;
    w.grammar_ = std::move(grammar);
    w.log_probs_.resize(probs.size());
    for (size_t id = 0; id < probs.size(); ++id) {
        w.log_probs_[id].reserve(probs[id].size());
        for (double p : probs[id]) {
            w.log_probs_[id].push_back(std::log(p));
        }
    }
    w.probs_ = std::move(probs);
    return w;
}

WeightedGrammar WeightedGrammar::uniform(TypedGrammar grammar) {
    std::vector<std::vector<double>> probs(grammar.size());
    for (size_t id = 0; id < grammar.size(); ++id) {
        const size_t n = grammar.nt(static_cast<int>(id)).rules.size();
        probs[id].assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
    }
    auto w = with_probabilities(std::move(grammar), std::move(probs));
    return w.take();
}

Result<WeightedGrammar> WeightedGrammar::from_head_weights(
    TypedGrammar grammar, const std::function<double(Atom, const Program&)>& weight) {
    std::vector<std::vector<double>> probs(grammar.size());
    for (size_t id = 0; id < grammar.size(); ++id) {
        const auto& nt = grammar.nt(static_cast<int>(id));
        double sum = 0.0;
        probs[id].reserve(nt.rules.size());
        for (const auto& rule : nt.rules) {
            double wgt = weight(nt.type, *rule.head);
            if (!(wgt > 0.0)) {
                return Error(ErrorCode::InvalidArgument,
                             "head weight must be positive for " + rule.head->to_sexpr());
            }
            probs[id].push_back(wgt);
            sum += wgt;
        }
        for (double& p : probs[id]) {
            p /= sum;
        }
    }
    return with_probabilities(std::move(grammar), std::move(probs));
}

namespace {

ProgramPtr sample_from(const WeightedGrammar& weighted, int nt_id, Rng& rng) {
    const auto& nt = weighted.grammar().nt(nt_id);
    const double u = rng.uniform();
    double acc = 0.0;
    size_t pick = nt.rules.size() - 1;
    for (size_t r = 0; r < nt.rules.size(); ++r) {
        acc += weighted.probability(nt_id, r);
        if (u < acc) {
            pick = r;
            break;
        }
    }
    const Rule& rule = nt.rules[pick];
    std::vector<ProgramPtr> args;
    args.reserve(rule.children.size());
    for (int child : rule.children) {
        args.push_back(sample_from(weighted, child, rng));
    }
    return Program::apply_chain(rule.head, args);
}

}  // namespace

ProgramPtr WeightedGrammar::sample(Rng& rng) const {
    return sample_from(*this, grammar_.start(), rng);
}

namespace {

Result<double> log_prob_from(const WeightedGrammar& weighted, int nt_id, const Program& p) {
    const auto& nt = weighted.grammar().nt(nt_id);
    ProgramPtr head = p.spine_head();
    std::vector<ProgramPtr> args = p.spine_arguments();
    for (size_t r = 0; r < nt.rules.size(); ++r) {
        const Rule& rule = nt.rules[r];
        if (!program_equal(rule.head, head) || rule.children.size() != args.size()) {
            continue;
        }
        double lp = weighted.log_probability(nt_id, r);
        bool ok = true;
        for (size_t i = 0; i < args.size(); ++i) {
            auto child = log_prob_from(weighted, rule.children[i], *args[i]);
            if (!child.ok()) {
                ok = false;
                break;
            }
            lp += child.value();
        }
        if (ok) {
            return lp;
        }
    }
    return Error(ErrorCode::NotDerivable, "program not derivable: " + p.to_sexpr());
}

}  // namespace

Result<double> WeightedGrammar::program_log_probability(const Program& program) const {
    if (grammar_.empty()) {
        return Error(ErrorCode::NotDerivable, "empty grammar");
    }
    return log_prob_from(*this, grammar_.start(), program);
}

}  // namespace kgsynth
