// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_TEXT_HPP
#define KGSYNTH_TEXT_HPP

#include <string>
#include <string_view>

namespace kgsynth {

// Strings cross the API as UTF-8; the DSL semantics ("character", substring,
// length) are defined over Unicode scalar values, so evaluation decodes to
// char32_t sequences first.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view scalars);

}  // namespace kgsynth

#endif
