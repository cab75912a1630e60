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

// Prompt rendering for the five LLM strategies and parsing of the replies.
// Templates are plain text with two slots, "{sentence}" and "{shots}";
// rendering is a single left-to-right substitution pass, so text inserted
// into a slot is never rescanned.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viram/corpus.hpp"

namespace viram::prompts {

enum class Strategy {
  ZeroShotRestoreThenTranslate,
  ZeroShotDirect,
  ThreeShotRestoreThenTranslate,
  ThreeShotDirect,
  OracleDirect,
};

inline constexpr std::array<Strategy, 5> kAllStrategies = {
    Strategy::ZeroShotRestoreThenTranslate, Strategy::ZeroShotDirect,
    Strategy::ThreeShotRestoreThenTranslate, Strategy::ThreeShotDirect, Strategy::OracleDirect};

// "zero_restore", "zero_direct", "three_restore", "three_direct", "oracle_direct".
std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);
// Template file name: strategy_name + ".txt".
std::string template_file(Strategy s);
bool restores_first(Strategy s);
std::size_t required_shots(Strategy s);

struct ShotExample {
  std::string english_written;
  std::string english_meant;
  std::string marathi;

  // Throws ValidationError when a field is empty or written/meant differ
  // beyond punctuation.
  void validate(const corpus::PunctuationInventory& inventory =
                    corpus::PunctuationInventory::defaults()) const;
  bool operator==(const ShotExample&) const = default;
};

class TemplateSet {
 public:
  // Templates compiled into the library from templates/.
  static const TemplateSet& builtin();
  // Reads every <strategy>.txt from `dir`; all five must exist.
  static TemplateSet load_dir(const std::filesystem::path& dir);

  const std::string& get(Strategy s) const;

 private:
  std::map<Strategy, std::string> templates_;
};

// The enumerated example block substituted for "{shots}".
std::string serialize_shots(std::span<const ShotExample> shots);

std::string render_prompt(Strategy strategy, std::string_view sentence,
                          std::span<const ShotExample> shots,
                          const TemplateSet& templates = TemplateSet::builtin());

struct ShotSelection {
  std::vector<ShotExample> shots;
  std::vector<corpus::BenchmarkInstance> eval_set;
};

// Shots come out in `shot_ids` order; eval_set keeps benchmark order.
ShotSelection select_and_exclude_shots(std::span<const corpus::BenchmarkInstance> benchmark,
                                       std::span<const std::string> shot_ids);

// The colon, comma and semicolon examples, in that order.
const std::vector<std::string>& default_shot_ids();

inline constexpr std::string_view kRestoreMarker = "Step 1 (Restoration):";
inline constexpr std::string_view kTranslateMarker = "Step 2 (Translation):";
inline constexpr std::string_view kDirectMarker = "Marathi Translation (Devanagari Script):";

struct ParsedReply {
  std::optional<std::string> restored_english;
  std::string marathi;
  std::string raw;
  // Set when the Marathi span holds no Devanagari at all.
  bool non_devanagari = false;
};

// Extracts spans after the LAST occurrence of each marker. Throws
// ReplyParseError (carrying `raw`) when a marker is missing or its span is
// empty.
ParsedReply parse_reply(Strategy strategy, std::string_view raw);

}  // namespace viram::prompts
