// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "dsl.hpp"

namespace kgsynth {

void DslRegistry::add(std::string name, SemType type) {
    prims_.push_back(Primitive{std::move(name), std::move(type)});
}

const Primitive* DslRegistry::find(const std::string& name) const {
    for (const auto& p : prims_) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

const DslDefinition& flashfill_dsl() {
    static const DslDefinition dsl = [] {
        const SemType S = SemType::string();
        const SemType R = SemType::regexp();
        const SemType CI = SemType::constant_in();
        const SemType CO = SemType::constant_out();

        DslDefinition d;
        d.name = "flashfill";
        d.registry.add("$", R);
        d.registry.add(".", R);
        d.registry.add("[^_]+", SemType::arrow(S, R));
        d.registry.add("[^_]+$", SemType::arrow(S, R));
        d.registry.add("compose", SemType::arrow(R, SemType::arrow(R, R)));
        d.registry.add("concat", SemType::arrow(S, SemType::arrow(S, S)));
        d.registry.add("match", SemType::arrow(S, SemType::arrow(R, S)));
        d.registry.add("concat_if", SemType::arrow(S, SemType::arrow(S, S)));
        d.registry.add("split_fst", SemType::arrow(S, SemType::arrow(R, S)));
        d.registry.add("split_snd", SemType::arrow(S, SemType::arrow(R, S)));
        // Duplicates over the constant types; same semantics, narrower
        // argument types so the grammar branches less.
        d.registry.add("concat_out", SemType::arrow(S, SemType::arrow(CO, S)));
        d.registry.add("concat_if_out", SemType::arrow(S, SemType::arrow(CO, S)));
        d.registry.add("[^_]+_in", SemType::arrow(CI, R));
        d.registry.add("[^_]+$_in", SemType::arrow(CI, R));

        d.base_constants_in = {" ", ",", ", ", ".", ":", ": ", ";", "-"};
        return d;
    }();
    return dsl;
}

namespace {

Result<SemType> infer(const Program& p, int arity, const DslRegistry& registry) {
    switch (p.kind()) {
        case Program::Kind::Primitive: {
            const Primitive* prim = registry.find(p.name());
            if (prim == nullptr) {
                return Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + p.name() + "'");
            }
            return prim->type;
        }
        case Program::Kind::Variable:
            if (p.index() < 0 || p.index() >= arity) {
                return Error(ErrorCode::VariableOutOfRange,
                             "variable " + std::to_string(p.index()) + " out of range for arity " +
                                 std::to_string(arity));
            }
            return SemType::string();
        case Program::Kind::Constant:
            return p.flavor() == ConstantFlavor::Input ? SemType::constant_in()
                                                       : SemType::constant_out();
        case Program::Kind::KgPath:
            return SemType::arrow(SemType::string(), SemType::string());
        case Program::Kind::Apply: {
            auto fn_type = infer(*p.function(), arity, registry);
            if (!fn_type.ok()) {
                return fn_type;
            }
            if (!fn_type.value().is_arrow()) {
                return Error(ErrorCode::ArityMismatch,
                             "applied a non-function of type " + fn_type.value().to_string());
            }
            auto arg_type = infer(*p.argument(), arity, registry);
            if (!arg_type.ok()) {
                return arg_type;
            }
            if (!assignable(arg_type.value(), fn_type.value().argument())) {
                return Error(ErrorCode::TypeMismatch,
                             "expected " + fn_type.value().argument().to_string() + ", got " +
                                 arg_type.value().to_string());
            }
            return fn_type.value().result();
        }
    }
    return Error(ErrorCode::InvalidArgument, "corrupt program node");
}

}  // namespace

Result<SemType> type_of(const Program& program, int arity, const DslRegistry& registry) {
    return infer(program, arity, registry);
}

}  // namespace kgsynth
