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

#include "viram/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <utility>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::prompts {
namespace detail {
// Generated at build time from templates/*.txt.
std::vector<std::pair<std::string_view, std::string_view>> embedded_templates();
}  // namespace detail

namespace {

constexpr std::string_view kSentenceSlot = "{sentence}";
constexpr std::string_view kShotsSlot = "{shots}";

// A line that starts a new labeled field ("Reasoning:", "Step 2 (...):",
// "**Note:**"). Non-ASCII lines never match, so Devanagari continuation
// lines stay inside the span.
const std::regex& label_line() {
  static const std::regex re(R"(^[\s>*_#-]*[A-Z][A-Za-z0-9 ()/'-]{0,40}:)");
  return re;
}

std::string strip_markup(std::string s) {
  static constexpr std::string_view kWrappers[] = {"```", "**", "__", "`", "*"};
  for (bool changed = true; changed;) {
    changed = false;
    s = text::trim(s);
    if (s.rfind("```", 0) == 0) {
      // An opening fence may carry a language tag ("```text") on its own line.
      const auto nl = s.find('\n');
      const std::string_view first = std::string_view(s).substr(0, nl);
      const bool tag_line = first.find(' ') == std::string_view::npos;
      s.erase(0, tag_line && nl != std::string::npos ? nl + 1 : 3);
      changed = true;
      continue;
    }
    for (auto w : kWrappers) {
      if (s.size() >= w.size() && s.compare(s.size() - w.size(), w.size(), w) == 0) {
        s.erase(s.size() - w.size());
        changed = true;
        break;
      }
      if (s.rfind(w, 0) == 0) {
        s.erase(0, w.size());
        changed = true;
        break;
      }
    }
  }
  return s;
}

// Text after the last `marker`, up to the next labeled line or another known
// marker. nullopt when the marker never occurs.
std::optional<std::string> extract_after_last(std::string_view raw, std::string_view marker) {
  const auto pos = raw.rfind(marker);
  if (pos == std::string_view::npos) return std::nullopt;
  std::string_view rest = raw.substr(pos + marker.size());
  for (auto other : {kRestoreMarker, kTranslateMarker, kDirectMarker}) {
    if (other == marker) continue;
    if (auto cut = rest.find(other); cut != std::string_view::npos) rest = rest.substr(0, cut);
  }

  std::string span;
  std::size_t start = 0;
  bool first = true;
  while (start <= rest.size()) {
    auto end = rest.find('\n', start);
    if (end == std::string_view::npos) end = rest.size();
    const std::string line(rest.substr(start, end - start));
    if (!first && std::regex_search(line, label_line())) break;
    if (!first) span += '\n';
    span += line;
    first = false;
    start = end + 1;
  }
  return strip_markup(span);
}

}  // namespace

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::ZeroShotRestoreThenTranslate: return "zero_restore";
    case Strategy::ZeroShotDirect: return "zero_direct";
    case Strategy::ThreeShotRestoreThenTranslate: return "three_restore";
    case Strategy::ThreeShotDirect: return "three_direct";
    case Strategy::OracleDirect: return "oracle_direct";
  }
  return "zero_direct";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies)
    if (strategy_name(s) == name) return s;
  throw PreconditionError("unknown prompting strategy '" + std::string(name) + "'");
}

std::string template_file(Strategy s) { return std::string(strategy_name(s)) + ".txt"; }

bool restores_first(Strategy s) {
  return s == Strategy::ZeroShotRestoreThenTranslate || s == Strategy::ThreeShotRestoreThenTranslate;
}

std::size_t required_shots(Strategy s) {
  return s == Strategy::ThreeShotRestoreThenTranslate || s == Strategy::ThreeShotDirect ? 3 : 0;
}

void ShotExample::validate(const corpus::PunctuationInventory& inventory) const {
  if (text::trim(english_written).empty() || text::trim(english_meant).empty() ||
      text::trim(marathi).empty())
    throw ValidationError("shot example has an empty field");
  if (!corpus::same_modulo_punctuation(english_written, english_meant, inventory))
    throw ValidationError("shot example written/meant differ beyond punctuation: '" +
                          english_written + "'");
}

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet t;
    for (const auto& [name, body] : detail::embedded_templates())
      t.templates_[parse_strategy(name)] = std::string(body);
    return t;
  }();
  return set;
}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir) {
  TemplateSet t;
  for (Strategy s : kAllStrategies) {
    const auto path = dir / template_file(s);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("missing prompt template " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    t.templates_[s] = ss.str();
  }
  return t;
}

const std::string& TemplateSet::get(Strategy s) const {
  auto it = templates_.find(s);
  if (it == templates_.end())
    throw Error("no template for strategy " + std::string(strategy_name(s)));
  return it->second;
}

std::string serialize_shots(std::span<const ShotExample> shots) {
  std::string out;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (i) out += "\n\n";
    out += std::to_string(i + 1) + ". Input English: " + shots[i].english_written;
    out += "\n\nEnglish Meant: " + shots[i].english_meant;
    out += "\n\nMarathi Translation: " + shots[i].marathi;
  }
  return out;
}

std::string render_prompt(Strategy strategy, std::string_view sentence,
                          std::span<const ShotExample> shots, const TemplateSet& templates) {
  if (shots.size() != required_shots(strategy))
    throw PreconditionError(std::string(strategy_name(strategy)) + " needs " +
                            std::to_string(required_shots(strategy)) + " shot(s), got " +
                            std::to_string(shots.size()));
  for (const auto& shot : shots) shot.validate();

  const std::string& tmpl = templates.get(strategy);
  const std::string shot_block = serialize_shots(shots);
  std::string out;
  out.reserve(tmpl.size() + sentence.size() + shot_block.size());
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.compare(i, kSentenceSlot.size(), kSentenceSlot) == 0) {
      out += sentence;
      i += kSentenceSlot.size();
    } else if (tmpl.compare(i, kShotsSlot.size(), kShotsSlot) == 0) {
      out += shot_block;
      i += kShotsSlot.size();
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

const std::vector<std::string>& default_shot_ids() {
  static const std::vector<std::string> ids = {"V03", "V01", "V02"};
  return ids;
}

ShotSelection select_and_exclude_shots(std::span<const corpus::BenchmarkInstance> benchmark,
                                       std::span<const std::string> shot_ids) {
  std::set<std::string> wanted;
  for (const auto& id : shot_ids)
    if (!wanted.insert(id).second) throw PreconditionError("duplicate shot id '" + id + "'");

  ShotSelection sel;
  for (const auto& id : shot_ids) {
    auto it = std::find_if(benchmark.begin(), benchmark.end(),
                           [&](const auto& inst) { return inst.id == id; });
    if (it == benchmark.end()) throw PreconditionError("unknown shot id '" + id + "'");
    sel.shots.push_back({it->english_written, it->english_meant, it->marathi_meant});
  }
  for (const auto& inst : benchmark)
    if (!wanted.count(inst.id)) sel.eval_set.push_back(inst);
  return sel;
}

ParsedReply parse_reply(Strategy strategy, std::string_view raw) {
  if (text::trim(raw).empty()) throw ReplyParseError("empty reply", std::string(raw));
  ParsedReply reply;
  reply.raw = std::string(raw);

  auto require = [&](std::string_view marker) {
    auto span = extract_after_last(raw, marker);
    if (!span) throw ReplyParseError("reply lacks '" + std::string(marker) + "'", reply.raw);
    if (span->empty())
      throw ReplyParseError("nothing follows '" + std::string(marker) + "'", reply.raw);
    return *span;
  };

  if (restores_first(strategy)) {
    reply.restored_english = require(kRestoreMarker);
    reply.marathi = require(kTranslateMarker);
  } else {
    reply.marathi = require(kDirectMarker);
  }
  reply.non_devanagari = !text::contains_devanagari(reply.marathi);
  return reply;
}

}  // namespace viram::prompts
