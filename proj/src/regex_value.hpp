// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_REGEX_VALUE_HPP
#define KGSYNTH_REGEX_VALUE_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kgsynth {

// Runtime value of REGEXP-typed expressions. Only five constructors exist:
//   $        end of string
//   .        any single character
//   [^X]+    maximal non-empty run of characters not in X
//   [^X]+$   the same, anchored at the end of the string
//   compose  concatenation of two regex values
class RegexValue {
public:
    enum class Kind {
        EndAnchor,
        AnyChar,
        NotChars,
        NotCharsEnd,
        Concat,
    };

    static RegexValue end_anchor();
    static RegexValue any_char();
    static RegexValue not_chars(const std::u32string& excluded);
    static RegexValue not_chars_end(const std::u32string& excluded);
    static RegexValue concat(RegexValue left, RegexValue right);

    Kind kind() const { return kind_; }
    const std::set<char32_t>& excluded() const { return excluded_; }
    const RegexValue& left() const { return *left_; }
    const RegexValue& right() const { return *right_; }

private:
    RegexValue() = default;

    Kind kind_ = Kind::AnyChar;
    std::set<char32_t> excluded_;
    std::shared_ptr<const RegexValue> left_;
    std::shared_ptr<const RegexValue> right_;
};

struct MatchSpan {
    size_t begin = 0;
    size_t end = 0;
};

// Leftmost match under greedy component semantics: the earliest start
// position wins; at that position each component takes as much as it can,
// shrinking only when a later component cannot match.
std::optional<MatchSpan> find_leftmost_match(const std::u32string& text, const RegexValue& regex);

}  // namespace kgsynth

#endif
