// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "eval.hpp"

#include <variant>

#include "regex_value.hpp"
#include "text.hpp"

namespace kgsynth {

namespace {

using Value = std::variant<std::u32string, RegexValue>;

struct Context {
    std::vector<std::u32string> inputs;
    const KgEnv* env;
};

Result<Value> eval_node(const Program& p, const Context& ctx);

Result<std::u32string> eval_string(const Program& p, const Context& ctx) {
    auto v = eval_node(p, ctx);
    if (!v.ok()) {
        return v.error();
    }
    if (!std::holds_alternative<std::u32string>(v.value())) {
        return Error(ErrorCode::TypeMismatch, "expected a string value");
    }
    return std::get<std::u32string>(v.take());
}

Result<RegexValue> eval_regex(const Program& p, const Context& ctx) {
    auto v = eval_node(p, ctx);
    if (!v.ok()) {
        return v.error();
    }
    if (!std::holds_alternative<RegexValue>(v.value())) {
        return Error(ErrorCode::TypeMismatch, "expected a regex value");
    }
    return std::get<RegexValue>(v.take());
}

bool contains(const std::u32string& haystack, const std::u32string& needle) {
    return haystack.find(needle) != std::u32string::npos;
}

Result<Value> apply_primitive(const std::string& name, const std::vector<ProgramPtr>& args,
                              const Context& ctx) {
    if (name == "$") {
        if (!args.empty()) {
            return Error(ErrorCode::ArityMismatch, "'$' takes no arguments");
        }
        return Value(RegexValue::end_anchor());
    }
    if (name == ".") {
        if (!args.empty()) {
            return Error(ErrorCode::ArityMismatch, "'.' takes no arguments");
        }
        return Value(RegexValue::any_char());
    }
    if (name == "[^_]+" || name == "[^_]+_in") {
        if (args.size() != 1) {
            return Error(ErrorCode::ArityMismatch, "'" + name + "' takes one argument");
        }
        auto set = eval_string(*args[0], ctx);
        if (!set.ok()) {
            return set.error();
        }
        return Value(RegexValue::not_chars(set.value()));
    }
    if (name == "[^_]+$" || name == "[^_]+$_in") {
        if (args.size() != 1) {
            return Error(ErrorCode::ArityMismatch, "'" + name + "' takes one argument");
        }
        auto set = eval_string(*args[0], ctx);
        if (!set.ok()) {
            return set.error();
        }
        return Value(RegexValue::not_chars_end(set.value()));
    }
    if (name == "compose") {
        if (args.size() != 2) {
            return Error(ErrorCode::ArityMismatch, "'compose' takes two arguments");
        }
        auto left = eval_regex(*args[0], ctx);
        if (!left.ok()) {
            return left.error();
        }
        auto right = eval_regex(*args[1], ctx);
        if (!right.ok()) {
            return right.error();
        }
        return Value(RegexValue::concat(left.take(), right.take()));
    }
    if (name == "concat" || name == "concat_out") {
        if (args.size() != 2) {
            return Error(ErrorCode::ArityMismatch, "'" + name + "' takes two arguments");
        }
        auto a = eval_string(*args[0], ctx);
        if (!a.ok()) {
            return a.error();
        }
        auto b = eval_string(*args[1], ctx);
        if (!b.ok()) {
            return b.error();
        }
        return Value(a.value() + b.value());
    }
    if (name == "concat_if" || name == "concat_if_out") {
        if (args.size() != 2) {
            return Error(ErrorCode::ArityMismatch, "'" + name + "' takes two arguments");
        }
        auto a = eval_string(*args[0], ctx);
        if (!a.ok()) {
            return a.error();
        }
        auto b = eval_string(*args[1], ctx);
        if (!b.ok()) {
            return b.error();
        }
        if (contains(a.value(), b.value())) {
            return Value(a.take());
        }
        return Value(a.value() + b.value());
    }
    if (name == "match" || name == "split_fst" || name == "split_snd") {
        if (args.size() != 2) {
            return Error(ErrorCode::ArityMismatch, "'" + name + "' takes two arguments");
        }
        auto subject = eval_string(*args[0], ctx);
        if (!subject.ok()) {
            return subject.error();
        }
        auto regex = eval_regex(*args[1], ctx);
        if (!regex.ok()) {
            return regex.error();
        }
        auto span = find_leftmost_match(subject.value(), regex.value());
        if (!span) {
            return Error(ErrorCode::NoMatch, "regex has no occurrence");
        }
        const std::u32string& s = subject.value();
        if (name == "match") {
            return Value(s.substr(span->begin, span->end - span->begin));
        }
        if (name == "split_fst") {
            return Value(s.substr(0, span->begin));
        }
        return Value(s.substr(span->end));
    }
    return Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + name + "'");
}

Result<Value> eval_node(const Program& p, const Context& ctx) {
    switch (p.kind()) {
        case Program::Kind::Variable: {
            if (p.index() < 0 || p.index() >= static_cast<int>(ctx.inputs.size())) {
                return Error(ErrorCode::VariableOutOfRange,
                             "variable " + std::to_string(p.index()) + " out of range");
            }
            return Value(ctx.inputs[static_cast<size_t>(p.index())]);
        }
        case Program::Kind::Constant:
            return Value(utf8_decode(p.text()));
        case Program::Kind::Primitive:
            // Nullary regex primitives evaluate directly; others only occur
            // applied and are handled through the spine below.
            return apply_primitive(p.name(), {}, ctx);
        case Program::Kind::KgPath:
            return Error(ErrorCode::TypeMismatch,
                         "knowledge path '" + p.name() + "' used as a value");
        case Program::Kind::Apply: {
            ProgramPtr head = p.spine_head();
            std::vector<ProgramPtr> args = p.spine_arguments();
            if (head->kind() == Program::Kind::KgPath) {
                if (args.size() != 1) {
                    return Error(ErrorCode::ArityMismatch, "knowledge path takes one argument");
                }
                auto entity = eval_string(*args[0], ctx);
                if (!entity.ok()) {
                    return entity.error();
                }
                std::vector<std::string> targets =
                    ctx.env->resolve(head->name(), utf8_encode(entity.value()));
                if (targets.size() != 1) {
                    return Error(ErrorCode::KgResolution,
                                 "path '" + head->name() + "' yields " +
                                     std::to_string(targets.size()) + " targets");
                }
                return Value(utf8_decode(targets[0]));
            }
            if (head->kind() != Program::Kind::Primitive) {
                return Error(ErrorCode::TypeMismatch, "application head is not callable");
            }
            return apply_primitive(head->name(), args, ctx);
        }
    }
    return Error(ErrorCode::InvalidArgument, "corrupt program node");
}

}  // namespace

Result<std::string> evaluate(const Program& program, const std::vector<std::string>& inputs,
                             const KgEnv& env) {
    Context ctx;
    ctx.inputs.reserve(inputs.size());
    for (const auto& s : inputs) {
        ctx.inputs.push_back(utf8_decode(s));
    }
    ctx.env = &env;
    auto v = eval_node(program, ctx);
    if (!v.ok()) {
        return v.error();
    }
    if (!std::holds_alternative<std::u32string>(v.value())) {
        return Error(ErrorCode::TypeMismatch, "program does not evaluate to a string");
    }
    return utf8_encode(std::get<std::u32string>(v.value()));
}

}  // namespace kgsynth
