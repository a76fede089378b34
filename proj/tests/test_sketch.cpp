// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>
#include <vector>

#include "oracles.hpp"
#include "sketch.hpp"
#include "text.hpp"

using namespace kgsynth;

namespace {

Task make_task(std::vector<std::pair<std::vector<std::string>, std::string>> rows) {
    Task task;
    task.name = "t";
    for (auto& [inputs, output] : rows) {
        task.examples.push_back({inputs, output});
    }
    return task;
}

std::string rebuild(const Sketch& sketch, size_t example) {
    std::string out;
    for (const auto& seg : sketch.output_segments) {
        if (seg.is_constant) {
            out += seg.constant;
        } else {
            out += sketch.holes[static_cast<size_t>(seg.hole)][example];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("longest common factor picks the shared substring") {
    CHECK(longest_common_factor({"France", "Germany", "Poland"}) == "an");
    CHECK(longest_common_factor({"abc", "abc"}) == "abc");
    CHECK(longest_common_factor({"abc", "xyz"}) == "");
}

TEST_CASE("ties resolve to the earliest occurrence in the first string") {
    // Both "ab" and "cd" are common with length 2; "ab" appears first.
    CHECK(longest_common_factor({"abzcd", "cdzab"}) == "ab");
}

TEST_CASE("get_constants follows the recursive extraction") {
    CHECK(get_constants({"Phone country code: 33", "Phone country code: 49",
                         "Phone country code: 48"}) ==
          std::vector<std::string>{"Phone country code: "});
    CHECK(get_constants({"abc", ""}).empty());
    CHECK(get_constants({"I love P", "I love B"}) == std::vector<std::string>{"I love "});
}

TEST_CASE("short factors are rejected") {
    // "an" is common to the country names but too short to become a constant.
    CHECK(get_constants({"I live in France", "I live in Germany", "I live in Poland"}) ==
          std::vector<std::string>{"I live in "});
}

TEST_CASE("get_constants recurses on both sides") {
    CHECK(get_constants({"aaaa X bbbb", "aaaa Y bbbb"}) ==
          std::vector<std::string>{"aaaa ", " bbbb"});
}

TEST_CASE("get_constants agrees with the quadratic oracle on random tuples") {
    Rng rng(314);
    const std::string alphabet = "abcdeXY ,:";
    auto random_string = [&](size_t max_len) {
        std::string s;
        const size_t len = rng.below(max_len + 1);
        for (size_t i = 0; i < len; ++i) {
            s.push_back(alphabet[rng.below(alphabet.size())]);
        }
        return s;
    };
    for (int round = 0; round < 1000; ++round) {
        const size_t count = 2 + rng.below(2);
        std::vector<std::string> strings;
        for (size_t i = 0; i < count; ++i) {
            strings.push_back(random_string(30));
        }
        CHECK(longest_common_factor(strings) == testing::lcs_oracle(strings));
        CHECK(get_constants(strings) == testing::get_constants_oracle(strings));
    }
}

TEST_CASE("decompose splits the phone-code task into one constant and one hole") {
    auto task = make_task({{{"Paris"}, "Phone country code: 33"},
                           {{"Berlin"}, "Phone country code: 49"},
                           {{"Warsaw"}, "Phone country code: 48"}});
    const Sketch sketch = decompose(task);
    CHECK(sketch.output_constants == std::vector<std::string>{"Phone country code: "});
    REQUIRE(sketch.hole_count() == 1);
    CHECK(sketch.holes[0] == std::vector<std::string>{"33", "49", "48"});
    CHECK(sketch.dump() == "const(\"Phone country code: \") · hole#0");
}

TEST_CASE("decompose with no shared factor yields a single whole hole") {
    auto task = make_task({{{"17", "United States"}, "17 USD"},
                           {{"42", "France"}, "42 EUR"}});
    const Sketch sketch = decompose(task);
    CHECK(sketch.output_constants.empty());
    REQUIRE(sketch.hole_count() == 1);
    CHECK(sketch.holes[0] == std::vector<std::string>{"17 USD", "42 EUR"});
}

TEST_CASE("decompose keeps the hazard factor out through the length rule") {
    auto task = make_task({{{"France"}, "I live in France"},
                           {{"Germany"}, "I live in Germany"},
                           {{"Poland"}, "I live in Poland"}});
    const Sketch sketch = decompose(task);
    CHECK(sketch.output_constants == std::vector<std::string>{"I live in "});
    REQUIRE(sketch.hole_count() == 1);
    CHECK(sketch.holes[0] == std::vector<std::string>{"France", "Germany", "Poland"});
}

TEST_CASE("reconstruction reproduces every output byte-exactly") {
    std::vector<Task> tasks;
    tasks.push_back(make_task({{{"Paris"}, "Phone country code: 33"},
                               {{"Berlin"}, "Phone country code: 49"}}));
    tasks.push_back(make_task({{{"a", "b"}, "left a right b end"},
                               {{"c", "d"}, "left c right d end"}}));
    tasks.push_back(make_task({{{"x"}, "no shared factor"},
                               {{"y"}, "completely different"}}));
    Rng rng(77);
    const std::string alphabet = "abcd ,";
    for (int round = 0; round < 200; ++round) {
        const std::string shared_a(4 + rng.below(4), 'K');
        std::vector<std::pair<std::vector<std::string>, std::string>> rows;
        for (int e = 0; e < 3; ++e) {
            std::string middle;
            const size_t len = rng.below(6);
            for (size_t i = 0; i < len; ++i) {
                middle.push_back(alphabet[rng.below(alphabet.size())]);
            }
            rows.push_back({{middle.empty() ? "q" : middle}, shared_a + middle + "TAIL"});
        }
        tasks.push_back(make_task(std::move(rows)));
    }
    for (const auto& task : tasks) {
        const Sketch sketch = decompose(task);
        for (size_t e = 0; e < task.examples.size(); ++e) {
            CHECK(rebuild(sketch, e) == task.examples[e].output);
        }
    }
}

TEST_CASE("input candidates strip shared input constants and keep the whole input") {
    auto task = make_task({{{"City: Paris"}, "Country: France"},
                           {{"City: Berlin"}, "Country: Germany"},
                           {{"City: Warsaw"}, "Country: Poland"}});
    const Sketch sketch = decompose(task);
    REQUIRE(sketch.input_constants.size() == 1);
    CHECK(sketch.input_constants[0] == std::vector<std::string>{"City: "});
    REQUIRE(sketch.input_candidates.size() == 3);
    CHECK(sketch.input_candidates[0][0] ==
          std::vector<std::string>{"Paris", "City: Paris"});
    CHECK(sketch.input_candidates[2][0] ==
          std::vector<std::string>{"Warsaw", "City: Warsaw"});
}

TEST_CASE("decompose tolerates an output equal to a constant") {
    // The middle example's gaps are all empty.
    auto task = make_task({{{"a"}, "the label X"},
                           {{"b"}, "the label Y"},
                           {{"c"}, "the label Z"}});
    const Sketch sketch = decompose(task);
    CHECK(sketch.output_constants == std::vector<std::string>{"the label "});
    for (size_t e = 0; e < task.examples.size(); ++e) {
        CHECK(rebuild(sketch, e) == task.examples[e].output);
    }
}
