// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "sketch.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "program.hpp"
#include "text.hpp"

namespace kgsynth {

namespace {

std::string lcf_scalars(const std::vector<std::u32string>& strings) {
    if (strings.empty()) {
        return {};
    }
    const std::u32string& first = strings[0];
    const size_t n = first.size();
    for (size_t len = n; len >= 1; --len) {
        for (size_t start = 0; start + len <= n; ++start) {
            const std::u32string candidate = first.substr(start, len);
            bool in_all = true;
            for (size_t i = 1; i < strings.size(); ++i) {
                if (strings[i].find(candidate) == std::u32string::npos) {
                    in_all = false;
                    break;
                }
            }
            if (in_all) {
                return utf8_encode(candidate);
            }
        }
    }
    return {};
}

std::vector<std::u32string> decode_all(const std::vector<std::string>& strings) {
    std::vector<std::u32string> out;
    out.reserve(strings.size());
    for (const auto& s : strings) {
        out.push_back(utf8_decode(s));
    }
    return out;
}

void get_constants_rec(const std::vector<std::u32string>& strings,
                       std::vector<std::string>& out) {
    for (const auto& s : strings) {
        if (s.empty()) {
            return;
        }
    }
    const std::string factor_utf8 = lcf_scalars(strings);
    const std::u32string factor = utf8_decode(factor_utf8);
    if (factor.size() <= 2) {
        return;
    }
    std::vector<std::u32string> lefts;
    std::vector<std::u32string> rights;
    lefts.reserve(strings.size());
    rights.reserve(strings.size());
    for (const auto& s : strings) {
        const size_t pos = s.find(factor);
        lefts.push_back(s.substr(0, pos));
        rights.push_back(s.substr(pos + factor.size()));
    }
    get_constants_rec(lefts, out);
    out.push_back(factor_utf8);
    get_constants_rec(rights, out);
}

// Splits `text` around in-order leftmost occurrences of `constants`.
// Returns the gap fragments (constants.size() + 1 of them), or nullopt with
// the index of the first constant that cannot be aligned.
std::optional<std::vector<std::u32string>> split_by_constants(
    const std::u32string& text, const std::vector<std::u32string>& constants,
    size_t* failed_index) {
    std::vector<std::u32string> gaps;
    size_t cursor = 0;
    for (size_t c = 0; c < constants.size(); ++c) {
        const size_t pos = text.find(constants[c], cursor);
        if (pos == std::u32string::npos) {
            if (failed_index != nullptr) {
                *failed_index = c;
            }
            return std::nullopt;
        }
        gaps.push_back(text.substr(cursor, pos - cursor));
        cursor = pos + constants[c].size();
    }
    gaps.push_back(text.substr(cursor));
    return gaps;
}

}  // namespace

std::string longest_common_factor(const std::vector<std::string>& strings) {
    return lcf_scalars(decode_all(strings));
}

std::vector<std::string> get_constants(const std::vector<std::string>& strings) {
    std::vector<std::string> out;
    get_constants_rec(decode_all(strings), out);
    return out;
}

std::string Sketch::dump() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& seg : output_segments) {
        if (!first) {
            out << " · ";
        }
        first = false;
        if (seg.is_constant) {
            out << "const(\"" << escape_text(seg.constant) << "\")";
        } else {
            out << "hole#" << seg.hole;
        }
    }
    return out.str();
}

Sketch decompose(const Task& task) {
    Sketch sketch;
    std::vector<std::u32string> outputs;
    outputs.reserve(task.examples.size());
    for (const auto& ex : task.examples) {
        outputs.push_back(utf8_decode(ex.output));
    }

    std::vector<std::string> raw_outputs;
    for (const auto& ex : task.examples) {
        raw_outputs.push_back(ex.output);
    }
    std::vector<std::u32string> constants;
    for (const auto& c : get_constants(raw_outputs)) {
        constants.push_back(utf8_decode(c));
    }

    // Align the constants in every output; a constant that cannot be aligned
    // consistently is pruned (longest offender first) and the split retried.
    std::vector<std::vector<std::u32string>> gaps_per_example;
    while (true) {
        gaps_per_example.clear();
        std::vector<size_t> offenders;
        bool ok = true;
        for (const auto& output : outputs) {
            size_t failed = 0;
            auto gaps = split_by_constants(output, constants, &failed);
            if (!gaps) {
                offenders.push_back(failed);
                ok = false;
                continue;
            }
            gaps_per_example.push_back(std::move(*gaps));
        }
        if (ok) {
            break;
        }
        size_t worst = offenders[0];
        for (size_t idx : offenders) {
            if (constants[idx].size() > constants[worst].size()) {
                worst = idx;
            }
        }
        constants.erase(constants.begin() + static_cast<long>(worst));
        if (constants.empty()) {
            gaps_per_example.clear();
            for (const auto& output : outputs) {
                gaps_per_example.push_back({output});
            }
            break;
        }
    }

    for (const auto& c : constants) {
        sketch.output_constants.push_back(utf8_encode(c));
    }

    // A gap position becomes a hole when any example has text there.
    const size_t gap_count = constants.size() + 1;
    std::vector<bool> gap_used(gap_count, false);
    for (const auto& gaps : gaps_per_example) {
        for (size_t g = 0; g < gaps.size(); ++g) {
            if (!gaps[g].empty()) {
                gap_used[g] = true;
            }
        }
    }
    for (size_t g = 0; g < gap_count; ++g) {
        if (gap_used[g]) {
            Sketch::Segment seg;
            seg.is_constant = false;
            seg.hole = static_cast<int>(sketch.holes.size());
            sketch.output_segments.push_back(seg);
            std::vector<std::string> fragments;
            fragments.reserve(gaps_per_example.size());
            for (const auto& gaps : gaps_per_example) {
                fragments.push_back(utf8_encode(gaps[g]));
            }
            sketch.holes.push_back(std::move(fragments));
        }
        if (g < constants.size()) {
            Sketch::Segment seg;
            seg.is_constant = true;
            seg.constant = utf8_encode(constants[g]);
            sketch.output_segments.push_back(seg);
        }
    }

    // Input side: shared constants per input position, candidates per
    // example. The whole input always closes the candidate list.
    const int arity = task.arity();
    sketch.input_constants.resize(static_cast<size_t>(arity));
    sketch.input_candidates.resize(task.examples.size());
    for (auto& per_example : sketch.input_candidates) {
        per_example.resize(static_cast<size_t>(arity));
    }
    for (int j = 0; j < arity; ++j) {
        std::vector<std::string> column;
        for (const auto& ex : task.examples) {
            column.push_back(ex.inputs[static_cast<size_t>(j)]);
        }
        std::vector<std::string> consts = get_constants(column);
        sketch.input_constants[static_cast<size_t>(j)] = consts;
        std::vector<std::u32string> consts32;
        for (const auto& c : consts) {
            consts32.push_back(utf8_decode(c));
        }
        for (size_t i = 0; i < task.examples.size(); ++i) {
            const std::u32string input = utf8_decode(column[i]);
            std::vector<std::string> candidates;
            if (!consts32.empty()) {
                if (auto gaps = split_by_constants(input, consts32, nullptr)) {
                    for (const auto& gap : *gaps) {
                        if (!gap.empty()) {
                            candidates.push_back(utf8_encode(gap));
                        }
                    }
                }
            }
            const std::string whole = column[i];
            if (std::find(candidates.begin(), candidates.end(), whole) == candidates.end()) {
                candidates.push_back(whole);
            }
            sketch.input_candidates[i][static_cast<size_t>(j)] = std::move(candidates);
        }
    }
    return sketch;
}

}  // namespace kgsynth
