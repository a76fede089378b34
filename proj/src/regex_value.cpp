// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "regex_value.hpp"

namespace kgsynth {

RegexValue RegexValue::end_anchor() {
    RegexValue r;
    r.kind_ = Kind::EndAnchor;
    return r;
}

RegexValue RegexValue::any_char() {
    RegexValue r;
    r.kind_ = Kind::AnyChar;
    return r;
}

RegexValue RegexValue::not_chars(const std::u32string& excluded) {
    RegexValue r;
    r.kind_ = Kind::NotChars;
    r.excluded_.insert(excluded.begin(), excluded.end());
    return r;
}

RegexValue RegexValue::not_chars_end(const std::u32string& excluded) {
    RegexValue r;
    r.kind_ = Kind::NotCharsEnd;
    r.excluded_.insert(excluded.begin(), excluded.end());
    return r;
}

RegexValue RegexValue::concat(RegexValue left, RegexValue right) {
    RegexValue r;
    r.kind_ = Kind::Concat;
    r.left_ = std::make_shared<const RegexValue>(std::move(left));
    r.right_ = std::make_shared<const RegexValue>(std::move(right));
    return r;
}

namespace {

void flatten(const RegexValue& r, std::vector<const RegexValue*>& out) {
    if (r.kind() == RegexValue::Kind::Concat) {
        flatten(r.left(), out);
        flatten(r.right(), out);
        return;
    }
    out.push_back(&r);
}

// Matches components[idx..] starting at pos; returns the end position of the
// full match, preferring the greediest split.
std::optional<size_t> match_from(const std::u32string& text,
                                 const std::vector<const RegexValue*>& components, size_t idx,
                                 size_t pos) {
    if (idx == components.size()) {
        return pos;
    }
    const RegexValue& comp = *components[idx];
    const size_t n = text.size();
    switch (comp.kind()) {
        case RegexValue::Kind::EndAnchor:
            if (pos == n) {
                return match_from(text, components, idx + 1, pos);
            }
            return std::nullopt;
        case RegexValue::Kind::AnyChar:
            if (pos < n) {
                return match_from(text, components, idx + 1, pos + 1);
            }
            return std::nullopt;
        case RegexValue::Kind::NotChars: {
            size_t run = pos;
            while (run < n && comp.excluded().count(text[run]) == 0) {
                ++run;
            }
            for (size_t end = run; end > pos; --end) {
                if (auto rest = match_from(text, components, idx + 1, end)) {
                    return rest;
                }
            }
            return std::nullopt;
        }
        case RegexValue::Kind::NotCharsEnd: {
            if (pos >= n) {
                return std::nullopt;
            }
            for (size_t k = pos; k < n; ++k) {
                if (comp.excluded().count(text[k]) != 0) {
                    return std::nullopt;
                }
            }
            return match_from(text, components, idx + 1, n);
        }
        case RegexValue::Kind::Concat:
            break;  // flattened away
    }
    return std::nullopt;
}

}  // namespace

std::optional<MatchSpan> find_leftmost_match(const std::u32string& text, const RegexValue& regex) {
    std::vector<const RegexValue*> components;
    flatten(regex, components);
    for (size_t start = 0; start <= text.size(); ++start) {
        if (auto end = match_from(text, components, 0, start)) {
            return MatchSpan{start, *end};
        }
    }
    return std::nullopt;
}

}  // namespace kgsynth
