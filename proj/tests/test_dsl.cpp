// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <regex>
#include <set>

#include "dsl.hpp"
#include "eval.hpp"
#include "grammar.hpp"
#include "pretty.hpp"
#include "program.hpp"
#include "regex_value.hpp"
#include "text.hpp"

using namespace kgsynth;

namespace {

// KgEnv over a fixed relation table, one path id.
class TableEnv : public KgEnv {
public:
    TableEnv(std::string path_id, std::map<std::string, std::vector<std::string>> table)
        : path_id_(std::move(path_id)), table_(std::move(table)) {}

    std::vector<std::string> resolve(const std::string& path_id,
                                     const std::string& entity) const override {
        if (path_id != path_id_) {
            return {};
        }
        auto it = table_.find(entity);
        return it == table_.end() ? std::vector<std::string>{} : it->second;
    }

private:
    std::string path_id_;
    std::map<std::string, std::vector<std::string>> table_;
};

ProgramPtr prim(const char* name) { return Program::primitive(name); }
ProgramPtr var(int i) { return Program::variable(i); }
ProgramPtr cst_out(const char* text) { return Program::constant(text, ConstantFlavor::Output); }
ProgramPtr cst_in(const char* text) { return Program::constant(text, ConstantFlavor::Input); }

ProgramPtr app(ProgramPtr head, std::vector<ProgramPtr> args) {
    return Program::apply_chain(std::move(head), args);
}

const DslRegistry& reg() { return flashfill_dsl().registry; }

}  // namespace

TEST_CASE("type_of infers applied and partially applied types") {
    auto full = app(prim("concat"), {var(0), cst_out(" USD")});
    auto t = type_of(*full, 1, reg());
    REQUIRE(t.ok());
    CHECK(t.value() == SemType::string());

    auto partial = Program::apply(prim("concat"), var(0));
    auto pt = type_of(*partial, 1, reg());
    REQUIRE(pt.ok());
    CHECK(pt.value() == SemType::arrow(SemType::string(), SemType::string()));

    auto bad = Program::apply(var(0), var(0));
    auto bt = type_of(*bad, 1, reg());
    REQUIRE(!bt.ok());
    CHECK((bt.error().code == ErrorCode::ArityMismatch ||
           bt.error().code == ErrorCode::TypeMismatch));
}

TEST_CASE("type_of rejects unknown primitives and loose variables") {
    auto unknown = prim("frobnicate");
    CHECK(type_of(*unknown, 1, reg()).error().code == ErrorCode::UnknownPrimitive);
    auto loose = var(3);
    CHECK(type_of(*loose, 1, reg()).error().code == ErrorCode::VariableOutOfRange);
    // REGEXP where STRING is expected
    auto mismatched = app(prim("concat"), {prim("$"), var(0)});
    CHECK(type_of(*mismatched, 1, reg()).error().code == ErrorCode::TypeMismatch);
}

TEST_CASE("evaluate runs the currency program") {
    TableEnv env("currency", {{"United States", {"USD"}}, {"France", {"EUR"}}});
    auto program = app(prim("concat"),
                       {var(0), app(prim("concat"),
                                    {cst_out(" "), Program::apply(Program::kg_path("currency"),
                                                                  var(1))})});
    auto out = evaluate(*program, {"17", "United States"}, env);
    REQUIRE(out.ok());
    CHECK(out.value() == "17 USD");
    auto out2 = evaluate(*program, {"42", "France"}, env);
    REQUIRE(out2.ok());
    CHECK(out2.value() == "42 EUR");
}

TEST_CASE("evaluate extracts the second comma-separated word") {
    EmptyKgEnv env;
    auto not_sep = app(prim("[^_]+"), {cst_in(", ")});
    auto program =
        app(prim("match"), {app(prim("split_snd"), {var(0), not_sep}), not_sep});
    auto out = evaluate(*program, {"Aix, Paris, Bordeaux"}, env);
    REQUIRE(out.ok());
    CHECK(out.value() == "Paris");
    auto out2 = evaluate(*program, {"Hamburg, Berlin, Munich"}, env);
    REQUIRE(out2.ok());
    CHECK(out2.value() == "Berlin");
}

TEST_CASE("concat_if keeps contained suffixes") {
    EmptyKgEnv env;
    auto contained = app(prim("concat_if"), {cst_out("abc"), cst_out("bc")});
    CHECK(evaluate(*contained, {}, env).value() == "abc");
    auto fresh = app(prim("concat_if"), {cst_out("abc"), cst_out("de")});
    CHECK(evaluate(*fresh, {}, env).value() == "abcde");
}

TEST_CASE("anchored regex matches the whole string") {
    EmptyKgEnv env;
    auto regex = app(prim("compose"), {app(prim("[^_]+"), {cst_in("z")}), prim("$")});
    auto program = app(prim("match"), {cst_out("abc"), regex});
    CHECK(evaluate(*program, {}, env).value() == "abc");
}

TEST_CASE("match without occurrence reports NoMatch") {
    EmptyKgEnv env;
    auto program = app(prim("match"), {cst_out("aaa"), app(prim("[^_]+"), {cst_in("a")})});
    auto out = evaluate(*program, {}, env);
    REQUIRE(!out.ok());
    CHECK(out.error().code == ErrorCode::NoMatch);
}

TEST_CASE("knowledge paths need exactly one target") {
    TableEnv env("p", {{"a", {"x", "y"}}, {"b", {}}});
    auto doubled = Program::apply(Program::kg_path("p"), cst_out("a"));
    CHECK(evaluate(*doubled, {}, env).error().code == ErrorCode::KgResolution);
    auto missing = Program::apply(Program::kg_path("p"), cst_out("b"));
    CHECK(evaluate(*missing, {}, env).error().code == ErrorCode::KgResolution);
}

TEST_CASE("split_fst and split_snd cut around the leftmost match") {
    EmptyKgEnv env;
    auto sep = app(prim("[^_]+"), {cst_in(", ")});
    auto fst = app(prim("split_fst"), {cst_out("Aix, Paris"), sep});
    CHECK(evaluate(*fst, {}, env).value() == "");
    auto snd = app(prim("split_snd"), {cst_out("Aix, Paris"), sep});
    CHECK(evaluate(*snd, {}, env).value() == ", Paris");
}

TEST_CASE("evaluation operates on Unicode scalars") {
    EmptyKgEnv env;
    // One scalar wide: the match grabs the whole two-byte character.
    auto program = app(prim("match"), {cst_out("étude"), prim(".")});
    CHECK(evaluate(*program, {}, env).value() == "é");
}

TEST_CASE("evaluate is deterministic") {
    TableEnv env("currency", {{"France", {"EUR"}}});
    auto program = app(prim("concat"),
                       {var(0), Program::apply(Program::kg_path("currency"), var(1))});
    auto a = evaluate(*program, {"x", "France"}, env);
    auto b = evaluate(*program, {"x", "France"}, env);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.value() == b.value());
}

TEST_CASE("pretty printer reproduces the let-binding shape") {
    auto program = app(prim("concat"),
                       {cst_out("The phone country code is "),
                        Program::apply(Program::kg_path("CityOf/phoneCode"), var(0))});
    const std::string text = pretty_print(*program, 1);
    CHECK(text.find("def f(x: str) -> str:") != std::string::npos);
    CHECK(text.find("a = \"The phone country code is \"") != std::string::npos);
    CHECK(text.find("b = label(follow_edges_from(x, \"CityOf\", \"phoneCode\"))") !=
          std::string::npos);
    CHECK(text.find("return a + b") != std::string::npos);
}

TEST_CASE("pretty printer handles single operands") {
    CHECK(pretty_print(*cst_out("a"), 1).find("return \"a\"") != std::string::npos);
    CHECK(pretty_print(*var(0), 1).find("return x") != std::string::npos);
}

TEST_CASE("sexpr form is canonical and round-trips") {
    auto program = app(prim("concat"), {var(0), cst_out(" USD")});
    CHECK(program->to_sexpr() == "(concat (var 0) (cst_out \" USD\"))");
    CHECK(Program::kg_path("CityOf/phoneCode")->to_sexpr() ==
          "(kg_path \"CityOf/phoneCode\")");

    auto parsed = parse_sexpr(program->to_sexpr());
    REQUIRE(parsed.ok());
    CHECK(program_equal(parsed.value(), program));

    auto escaped = cst_out("line\nquote\" tab\t");
    auto round = parse_sexpr(escaped->to_sexpr());
    REQUIRE(round.ok());
    CHECK(program_equal(round.value(), escaped));

    CHECK(!parse_sexpr("(concat (var 0)").ok());
}

TEST_CASE("sexpr round-trip holds for sampled programs") {
    const DslDefinition& dsl = flashfill_dsl();
    auto grammar = TypedGrammar::compile(dsl.registry, 2, dsl.base_constants_in, {"out"},
                                         {"CityOf/phoneCode"}, 5);
    REQUIRE(grammar.ok());
    auto weighted = WeightedGrammar::uniform(grammar.take());
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        ProgramPtr p = weighted.sample(rng);
        auto parsed = parse_sexpr(p->to_sexpr());
        REQUIRE(parsed.ok());
        CHECK(program_equal(parsed.value(), p));
    }
}

TEST_CASE("type soundness: sampled programs only fail with NoMatch or KgResolution") {
    const DslDefinition& dsl = flashfill_dsl();
    auto grammar = TypedGrammar::compile(dsl.registry, 2, dsl.base_constants_in, {"x", "yy"},
                                         {"p"}, 5);
    REQUIRE(grammar.ok());
    auto weighted = WeightedGrammar::uniform(grammar.take());
    TableEnv env("p", {{"ab", {"cd"}}});
    Rng rng(2024);
    const char* inputs[][2] = {{"ab", "xy z"}, {"hello, world", "a"}, {",,", " "}};
    for (int i = 0; i < 10000; ++i) {
        ProgramPtr p = weighted.sample(rng);
        auto t = type_of(*p, 2, dsl.registry);
        REQUIRE(t.ok());
        CHECK(assignable(t.value(), SemType::string()));
        const auto& in = inputs[i % 3];
        auto out = evaluate(*p, {in[0], in[1]}, env);
        if (!out.ok()) {
            CHECK((out.error().code == ErrorCode::NoMatch ||
                   out.error().code == ErrorCode::KgResolution));
        }
    }
}

TEST_CASE("leftmost greedy matching agrees with a standard regex engine") {
    Rng rng(99);
    const std::string alphabet = "abcxyz, ";
    auto random_string = [&](size_t max_len) {
        std::string s;
        const size_t len = rng.below(max_len + 1);
        for (size_t i = 0; i < len; ++i) {
            s.push_back(alphabet[rng.below(alphabet.size())]);
        }
        return s;
    };
    int checked = 0;
    for (int round = 0; round < 1000; ++round) {
        // Random chain of 1..3 NotChars components, optional end anchor.
        const size_t components = 1 + rng.below(3);
        std::vector<RegexValue> parts;
        std::string pattern;
        for (size_t c = 0; c < components; ++c) {
            std::u32string excluded;
            std::string excluded_utf8;
            const size_t k = 1 + rng.below(3);
            for (size_t i = 0; i < k; ++i) {
                const char ch = alphabet[rng.below(alphabet.size() - 2)];  // letters only
                if (excluded_utf8.find(ch) == std::string::npos) {
                    excluded_utf8.push_back(ch);
                    excluded.push_back(static_cast<char32_t>(ch));
                }
            }
            parts.push_back(RegexValue::not_chars(excluded));
            pattern += "[^" + excluded_utf8 + "]+";
        }
        const bool anchored = rng.uniform() < 0.3;
        if (anchored) {
            parts.push_back(RegexValue::end_anchor());
            pattern += "$";
        }
        RegexValue regex = parts.back();
        for (size_t i = parts.size() - 1; i-- > 0;) {
            regex = RegexValue::concat(parts[i], regex);
        }
        const std::string subject = random_string(15);

        const std::u32string subject32 = utf8_decode(subject);
        auto mine = find_leftmost_match(subject32, regex);
        std::smatch match;
        const bool theirs = std::regex_search(subject, match, std::regex(pattern));
        REQUIRE(mine.has_value() == theirs);
        if (theirs) {
            const std::string mine_text =
                utf8_encode(subject32.substr(mine->begin, mine->end - mine->begin));
            CHECK(mine_text == match.str());
            ++checked;
        }
    }
    CHECK(checked > 100);  // the comparison exercised real matches
}
