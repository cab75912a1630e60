// Copyright 2026 The viramkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// UTF-8 helpers shared by the corpus, restorer and metrics modules. All
// character classification goes through ICU so Devanagari and other scripts
// behave the same way as Latin text.

#include <string>
#include <string_view>
#include <vector>

namespace viram::text {

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(char32_t cp);

bool is_letter(char32_t cp);
bool is_number(char32_t cp);
bool is_punct(char32_t cp);
bool is_space(char32_t cp);
bool is_upper(char32_t cp);
bool is_devanagari(char32_t cp);

// NFC-normalized copy of `utf8`.
std::string nfc(std::string_view utf8);

// Full Unicode lowercasing (root locale).
std::string lower(std::string_view utf8);

// Split on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> split_ws(std::string_view utf8);

// Collapse whitespace runs to a single ASCII space and trim both ends.
std::string normalize_ws(std::string_view utf8);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Whitespace-only trim of both ends.
std::string trim(std::string_view utf8);

// Number of code points.
std::size_t length(std::string_view utf8);

// The last `n` code points of `utf8` (the whole string if shorter).
std::string suffix(std::string_view utf8, std::size_t n);

bool contains_devanagari(std::string_view utf8);

}  // namespace viram::text
