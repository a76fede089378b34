// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <cmath>

#include "heap_search.hpp"
#include "oracles.hpp"

using namespace kgsynth;

namespace {

// S -> f(S) | "a" | "b" with chosen probabilities, depth-bounded.
Result<WeightedGrammar> unary_grammar(double p_f, double p_a, double p_b, int depth) {
    DslRegistry registry;
    registry.add("f", SemType::arrow(SemType::string(), SemType::string()));
    auto grammar = TypedGrammar::compile(registry, 0, {}, {"a", "b"}, {}, depth);
    if (!grammar.ok()) {
        return grammar.error();
    }
    std::vector<std::vector<double>> probs(grammar.value().size());
    for (size_t id = 0; id < grammar.value().size(); ++id) {
        const auto& nt = grammar.value().nt(static_cast<int>(id));
        std::vector<double> p;
        for (const auto& rule : nt.rules) {
            if (rule.head->kind() == Program::Kind::Primitive) {
                p.push_back(p_f);
            } else {
                p.push_back(rule.head->text() == "a" ? p_a : p_b);
            }
        }
        // Depth-1 non-terminals lack the f rule; renormalize.
        double sum = 0.0;
        for (double x : p) sum += x;
        for (double& x : p) x /= sum;
        probs[id] = std::move(p);
    }
    return WeightedGrammar::with_probabilities(grammar.take(), std::move(probs));
}

std::vector<EnumeratedProgram> drain(const WeightedGrammar& weighted, size_t limit) {
    ProgramStream stream(weighted);
    std::vector<EnumeratedProgram> out;
    while (out.size() < limit) {
        auto item = stream.next();
        if (!item) {
            break;
        }
        out.push_back(std::move(*item));
    }
    return out;
}

}  // namespace

TEST_CASE("two leaf rules enumerate by probability") {
    DslRegistry registry;
    auto grammar = TypedGrammar::compile(registry, 0, {}, {"a", "b"}, {}, 2);
    REQUIRE(grammar.ok());
    std::vector<std::vector<double>> probs{{0.6, 0.4}};
    auto weighted = WeightedGrammar::with_probabilities(grammar.take(), std::move(probs));
    REQUIRE(weighted.ok());
    auto items = drain(weighted.value(), 10);
    REQUIRE(items.size() == 2);
    CHECK(items[0].sexpr == "(cst_out \"a\")");
    CHECK(items[1].sexpr == "(cst_out \"b\")");
}

TEST_CASE("the 0.5/0.3/0.2 unary grammar yields the expected prefix") {
    auto weighted = unary_grammar(0.5, 0.3, 0.2, 4);
    REQUIRE(weighted.ok());
    auto items = drain(weighted.value(), 5);
    REQUIRE(items.size() == 5);
    CHECK(items[0].sexpr == "(cst_out \"a\")");
    CHECK(std::exp(items[0].log_prob) == doctest::Approx(0.3));
    CHECK(items[1].sexpr == "(cst_out \"b\")");
    CHECK(std::exp(items[1].log_prob) == doctest::Approx(0.2));
    CHECK(items[2].sexpr == "(f (cst_out \"a\"))");
    CHECK(std::exp(items[2].log_prob) == doctest::Approx(0.15));
    CHECK(items[3].sexpr == "(f (cst_out \"b\"))");
    CHECK(std::exp(items[3].log_prob) == doctest::Approx(0.1));
    CHECK(items[4].sexpr == "(f (f (cst_out \"a\")))");
    CHECK(std::exp(items[4].log_prob) == doctest::Approx(0.075));

    auto oracle = brute_force_enumerate(weighted.value());
    REQUIRE(oracle.ok());
    for (size_t i = 0; i < items.size(); ++i) {
        CHECK(items[i].sexpr == oracle.value()[i].sexpr);
    }
}

TEST_CASE("equal probabilities fall back to the S-expression order") {
    DslRegistry registry;
    auto grammar = TypedGrammar::compile(registry, 0, {}, {"c", "a", "b"}, {}, 2);
    REQUIRE(grammar.ok());
    auto weighted = WeightedGrammar::uniform(grammar.take());
    auto items = drain(weighted, 10);
    REQUIRE(items.size() == 3);
    CHECK(items[0].sexpr == "(cst_out \"a\")");
    CHECK(items[1].sexpr == "(cst_out \"b\")");
    CHECK(items[2].sexpr == "(cst_out \"c\")");
    for (const auto& item : items) {
        CHECK(std::exp(item.log_prob) == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("stream equals the brute-force oracle on random grammars") {
    int grammars_checked = 0;
    for (uint64_t seed = 1; grammars_checked < 15 && seed < 200; ++seed) {
        auto weighted = testing::random_weighted_grammar(seed, 5000);
        if (!weighted.ok()) {
            continue;
        }
        ++grammars_checked;
        auto oracle = brute_force_enumerate(weighted.value());
        REQUIRE(oracle.ok());
        auto items = drain(weighted.value(), oracle.value().size() + 10);
        REQUIRE(items.size() == oracle.value().size());
        for (size_t i = 0; i < items.size(); ++i) {
            CHECK(items[i].sexpr == oracle.value()[i].sexpr);
            CHECK(items[i].log_prob == doctest::Approx(oracle.value()[i].log_prob).epsilon(1e-9));
        }
    }
    CHECK(grammars_checked == 15);
}

TEST_CASE("emitted log-probabilities never increase") {
    auto weighted = testing::random_weighted_grammar(11, 3000);
    REQUIRE(weighted.ok());
    auto items = drain(weighted.value(), 3000);
    for (size_t i = 1; i < items.size(); ++i) {
        CHECK(items[i].log_prob <= items[i - 1].log_prob + 1e-9);
    }
}

TEST_CASE("every derivable program appears exactly once") {
    auto weighted = testing::random_weighted_grammar(23, 4000);
    REQUIRE(weighted.ok());
    auto items = drain(weighted.value(), 5000);
    std::set<std::string> seen;
    for (const auto& item : items) {
        CHECK(seen.insert(item.sexpr).second);
    }
    const auto counts = weighted.value().grammar().derivation_counts();
    CHECK(static_cast<double>(items.size()) ==
          counts[static_cast<size_t>(weighted.value().grammar().start())]);
}

TEST_CASE("first programs of a huge grammar come out quickly") {
    const DslDefinition& dsl = flashfill_dsl();
    auto grammar = TypedGrammar::compile(dsl.registry, 2, dsl.base_constants_in,
                                         {"alpha", "beta"}, {"p/q"}, 6);
    REQUIRE(grammar.ok());
    const auto counts = grammar.value().derivation_counts();
    REQUIRE(counts[static_cast<size_t>(grammar.value().start())] >= 1e6);
    auto weighted = WeightedGrammar::uniform(grammar.take());
    const auto start = std::chrono::steady_clock::now();
    auto items = drain(weighted, 10);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(items.size() == 10);
    CHECK(elapsed < 1.0);
}

TEST_CASE("brute force enumerates single-derivation grammars") {
    DslRegistry registry;
    registry.add("concat", SemType::arrow(SemType::string(),
                                          SemType::arrow(SemType::string(), SemType::string())));
    auto grammar = TypedGrammar::compile(registry, 1, {}, {}, {}, 2);
    REQUIRE(grammar.ok());
    auto weighted = WeightedGrammar::uniform(grammar.take());
    auto all = brute_force_enumerate(weighted);
    REQUIRE(all.ok());
    REQUIRE(all.value().size() == 1);
    CHECK(all.value()[0].log_prob == doctest::Approx(0.0));
}

TEST_CASE("brute force guards against oversized grammars") {
    const DslDefinition& dsl = flashfill_dsl();
    auto grammar = TypedGrammar::compile(dsl.registry, 2, dsl.base_constants_in, {"x", "y"},
                                         {}, 6);
    REQUIRE(grammar.ok());
    auto weighted = WeightedGrammar::uniform(grammar.take());
    auto all = brute_force_enumerate(weighted, 100000);
    REQUIRE(!all.ok());
    CHECK(all.error().code == ErrorCode::TooLarge);
}

TEST_CASE("brute force on an empty grammar yields an empty list") {
    WeightedGrammar weighted = WeightedGrammar::uniform(TypedGrammar{});
    auto all = brute_force_enumerate(weighted);
    REQUIRE(all.ok());
    CHECK(all.value().empty());
}

TEST_CASE("verify accepts the currency program and rejects mismatches") {
    // §-style currency task over an explicit environment.
    KnowledgeGraph graph = KnowledgeGraph::from_triples({
        {"United States", "currency", "USD"},
        {"France", "currency", "EUR"},
    });
    GraphPathEnv env(graph);
    Task task;
    task.name = "currency";
    task.examples = {{{"17", "United States"}, "17 USD"}, {{"42", "France"}, "42 EUR"}};
    auto program = Program::apply_chain(
        Program::primitive("concat"),
        {Program::variable(0),
         Program::apply_chain(Program::primitive("concat"),
                              {Program::constant(" ", ConstantFlavor::Output),
                               Program::apply(Program::kg_path("currency"),
                                              Program::variable(1))})});
    CHECK(verify(*program, task, env));

    Task differing;
    differing.name = "differs";
    differing.examples = {{{"a"}, "x"}, {{"b"}, "y"}};
    CHECK(!verify(*Program::constant("x", ConstantFlavor::Output), differing, env));

    // A program that raises NoMatch on one example is rejected.
    Task partial;
    partial.name = "partial";
    partial.examples = {{{"abc"}, "abc"}, {{"zzz"}, "zzz"}};
    auto matcher = Program::apply_chain(
        Program::primitive("match"),
        {Program::variable(0),
         Program::apply(Program::primitive("[^_]+"),
                        Program::constant("z", ConstantFlavor::Input))});
    CHECK(!verify(*matcher, partial, env));
}
