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

#include "viram/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::corpus {
namespace {

constexpr std::string_view kFields[] = {"id", "english_written", "english_meant",
                                        "marathi_meant", "punctuation_type"};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string line(content.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  // A trailing newline yields one empty tail entry.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = line.find('\t', start);
    if (end == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

BenchmarkInstance from_fields(const std::vector<std::string>& values) {
  return {text::nfc(values[0]), text::nfc(values[1]), text::nfc(values[2]),
          text::nfc(values[3]), text::nfc(values[4])};
}

std::vector<BenchmarkInstance> parse_tsv(std::string_view content) {
  const auto lines = split_lines(content);
  if (lines.empty()) throw ParseError("missing header", 1);
  const auto header = split_tabs(lines[0]);
  std::vector<int> column(std::size(kFields), -1);
  for (std::size_t f = 0; f < std::size(kFields); ++f) {
    auto it = std::find(header.begin(), header.end(), kFields[f]);
    if (it == header.end())
      throw ParseError("header lacks field '" + std::string(kFields[f]) + "'", 1);
    column[f] = static_cast<int>(it - header.begin());
  }

  std::vector<BenchmarkInstance> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (text::trim(lines[ln]).empty()) continue;
    const auto cells = split_tabs(lines[ln]);
    std::vector<std::string> values(std::size(kFields));
    for (std::size_t f = 0; f < std::size(kFields); ++f) {
      const auto c = static_cast<std::size_t>(column[f]);
      if (c >= cells.size())
        throw ParseError("missing field '" + std::string(kFields[f]) + "'", ln + 1);
      values[f] = cells[c];
    }
    if (cells.size() > header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(cells.size()),
                       ln + 1);
    out.push_back(from_fields(values));
  }
  return out;
}

std::vector<BenchmarkInstance> parse_jsonl(std::string_view content) {
  const auto lines = split_lines(content);
  std::vector<BenchmarkInstance> out;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (text::trim(lines[ln]).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[ln]);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), ln + 1);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", ln + 1);
    std::vector<std::string> values(std::size(kFields));
    for (std::size_t f = 0; f < std::size(kFields); ++f) {
      const std::string key(kFields[f]);
      auto it = obj.find(key);
      if (it == obj.end()) throw ParseError("missing field '" + key + "'", ln + 1);
      if (it->is_string())
        values[f] = it->get<std::string>();
      else if (f == 0 && it->is_number_integer())
        values[f] = std::to_string(it->get<long long>());
      else
        throw ParseError("field '" + key + "' is not a string", ln + 1);
    }
    out.push_back(from_fields(values));
  }
  return out;
}

struct MarkTable {
  std::vector<std::u32string> marks;  // longest first
  std::vector<std::u32string> keep;

  explicit MarkTable(const PunctuationInventory& inv) {
    for (const auto& m : inv.marks)
      if (!m.empty()) marks.push_back(text::to_u32(m));
    for (const auto& k : inv.intra_word_keep)
      if (!k.empty()) keep.push_back(text::to_u32(k));
    std::stable_sort(marks.begin(), marks.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  // Length of the mark starting at `i`, 0 if none.
  std::size_t match(const std::u32string& s, std::size_t i) const {
    for (const auto& m : marks)
      if (s.compare(i, m.size(), m) == 0) return m.size();
    return 0;
  }

  bool kept(const std::u32string& s, std::size_t i, std::size_t len) const {
    if (i == 0 || i + len >= s.size()) return false;
    if (!text::is_letter(s[i - 1]) || !text::is_letter(s[i + len])) return false;
    return std::any_of(keep.begin(), keep.end(),
                       [&](const auto& k) { return s.compare(i, len, k) == 0 && k.size() == len; });
  }
};

}  // namespace

std::string_view variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::WithPunct: return "with";
    case VariantKind::WithoutPunct: return "without";
    case VariantKind::Combined2x: return "combined2x";
    case VariantKind::AlternateX: return "alternate";
  }
  return "with";
}

VariantKind parse_variant(std::string_view name) {
  if (name == "with") return VariantKind::WithPunct;
  if (name == "without") return VariantKind::WithoutPunct;
  if (name == "combined2x") return VariantKind::Combined2x;
  if (name == "alternate") return VariantKind::AlternateX;
  throw PreconditionError("unknown variant kind '" + std::string(name) + "'");
}

PunctuationInventory PunctuationInventory::defaults() {
  return {{".", ",", ";", ":", "?", "!", "\"", "'", "(", ")", "—", "–", "-", "/",
           "…", "“", "”", "‘", "’"},
          {"'", "’", "-"}};
}

PunctuationInventory PunctuationInventory::without_intra_word_keep() {
  auto inv = defaults();
  inv.intra_word_keep.clear();
  return inv;
}

void PunctuationInventory::validate() const {
  if (marks.empty()) throw PreconditionError("punctuation inventory has no marks");
  for (const auto& k : intra_word_keep)
    if (!is_mark(k))
      throw PreconditionError("intra-word keep mark '" + k + "' is not in the inventory");
}

bool PunctuationInventory::is_mark(std::string_view s) const {
  return std::find(marks.begin(), marks.end(), s) != marks.end();
}

const std::vector<std::string>& punctuation_type_labels() {
  static const std::vector<std::string> labels = {
      "Comma",        "Colon",    "Hyphen",        "Parentheses", "Quotation Marks",
      "Em Dash",      "Question Mark", "Semi Colon", "Slash"};
  return labels;
}

Segmented segment(std::string_view input, const PunctuationInventory& inventory) {
  const MarkTable table(inventory);
  const std::u32string s = text::to_u32(input);
  Segmented out;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) out.tokens.push_back({text::to_utf8(cur), {}});
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size();) {
    if (text::is_space(s[i])) {
      flush();
      ++i;
      continue;
    }
    const std::size_t len = table.match(s, i);
    if (len == 0 || table.kept(s, i, len)) {
      cur.append(s, i, std::max<std::size_t>(len, 1));
      i += std::max<std::size_t>(len, 1);
      continue;
    }
    flush();
    std::string mark = text::to_utf8(std::u32string_view(s).substr(i, len));
    if (out.tokens.empty())
      out.leading_marks.push_back(std::move(mark));
    else
      out.tokens.back().marks_after.push_back(std::move(mark));
    i += len;
  }
  flush();
  return out;
}

std::string strip_punctuation(std::string_view text, const PunctuationInventory& inventory) {
  const Segmented seg = segment(text, inventory);
  std::string out;
  for (const auto& tok : seg.tokens) {
    if (!out.empty()) out += ' ';
    out += tok.text;
  }
  return out;
}

BenchmarkFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json") return BenchmarkFormat::Jsonl;
  return BenchmarkFormat::Tsv;
}

std::vector<BenchmarkInstance> parse_benchmark(std::string_view content, BenchmarkFormat format,
                                               const LoadOptions& options) {
  auto instances = format == BenchmarkFormat::Tsv ? parse_tsv(content) : parse_jsonl(content);
  validate_benchmark(instances, options);
  return instances;
}

std::vector<BenchmarkInstance> load_benchmark(const std::filesystem::path& path,
                                              BenchmarkFormat format, const LoadOptions& options) {
  return parse_benchmark(read_file(path), format, options);
}

bool same_modulo_punctuation(std::string_view a, std::string_view b,
                             const PunctuationInventory& inventory) {
  auto all = inventory;
  all.intra_word_keep.clear();
  auto squash = [&](std::string_view t) {
    std::string out;
    for (const auto& tok : segment(t, all).tokens) out += tok.text;
    return out;
  };
  return squash(a) == squash(b);
}

void validate_benchmark(std::span<const BenchmarkInstance> instances, const LoadOptions& options) {
  std::vector<std::string> bad;
  std::ostringstream detail;
  for (const auto& inst : instances) {
    std::string problem;
    if (text::trim(inst.id).empty())
      problem = "empty id";
    else if (text::trim(inst.english_written).empty())
      problem = "empty english_written";
    else if (text::trim(inst.english_meant).empty())
      problem = "empty english_meant";
    else if (text::trim(inst.marathi_meant).empty())
      problem = "empty marathi_meant";
    else if (text::trim(inst.punctuation_type).empty())
      problem = "empty punctuation_type";
    else if (!options.allowed_types.empty() &&
             std::find(options.allowed_types.begin(), options.allowed_types.end(),
                       inst.punctuation_type) == options.allowed_types.end())
      problem = "unknown punctuation_type '" + inst.punctuation_type + "'";
    else if (!same_modulo_punctuation(inst.english_written, inst.english_meant,
                                      options.inventory))
      problem = "written and meant differ beyond punctuation";
    if (!problem.empty()) {
      bad.push_back(inst.id);
      detail << "\n  " << inst.id << ": " << problem;
    }
  }
  if (!bad.empty())
    throw ValidationError("benchmark validation failed for " + std::to_string(bad.size()) +
                              " instance(s):" + detail.str(),
                          std::move(bad));
}

std::string serialize_benchmark(std::span<const BenchmarkInstance> instances,
                                BenchmarkFormat format) {
  std::string out;
  if (format == BenchmarkFormat::Tsv) {
    out = "id\tenglish_written\tenglish_meant\tmarathi_meant\tpunctuation_type\n";
    for (const auto& inst : instances) {
      const std::string* fields[] = {&inst.id, &inst.english_written, &inst.english_meant,
                                     &inst.marathi_meant, &inst.punctuation_type};
      for (std::size_t f = 0; f < 5; ++f) {
        if (fields[f]->find_first_of("\t\r\n") != std::string::npos)
          throw PreconditionError("instance " + inst.id + ": field '" +
                                  std::string(kFields[f]) + "' contains a tab or newline");
        if (f) out += '\t';
        out += *fields[f];
      }
      out += '\n';
    }
    return out;
  }
  for (const auto& inst : instances) {
    nlohmann::ordered_json obj;
    obj["id"] = inst.id;
    obj["english_written"] = inst.english_written;
    obj["english_meant"] = inst.english_meant;
    obj["marathi_meant"] = inst.marathi_meant;
    obj["punctuation_type"] = inst.punctuation_type;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void save_benchmark(const std::filesystem::path& path, std::span<const BenchmarkInstance> instances,
                    BenchmarkFormat format) {
  const std::string content = serialize_benchmark(instances, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

ParallelCorpus make_variant(const ParallelCorpus& base, VariantKind kind,
                            const PunctuationInventory& inventory) {
  if (base.variant != VariantKind::WithPunct)
    throw PreconditionError("variants must be built from a with-punctuation corpus, got '" +
                            std::string(variant_name(base.variant)) + "'");
  inventory.validate();

  ParallelCorpus out;
  out.name = base.name + "." + std::string(variant_name(kind));
  out.variant = kind;
  out.base_name = base.name;
  auto stripped = [&](const ParallelPair& p) {
    return ParallelPair{strip_punctuation(p.source, inventory), p.target};
  };

  switch (kind) {
    case VariantKind::WithPunct:
      out.pairs = base.pairs;
      break;
    case VariantKind::WithoutPunct:
      out.pairs.reserve(base.pairs.size());
      for (const auto& p : base.pairs) out.pairs.push_back(stripped(p));
      break;
    case VariantKind::Combined2x:
      out.pairs.reserve(2 * base.pairs.size());
      out.pairs = base.pairs;
      for (const auto& p : base.pairs) out.pairs.push_back(stripped(p));
      break;
    case VariantKind::AlternateX:
      out.pairs.reserve(base.pairs.size());
      for (std::size_t i = 0; i < base.pairs.size(); ++i)
        out.pairs.push_back(i % 2 == 0 ? base.pairs[i] : stripped(base.pairs[i]));
      break;
  }
  return out;
}

TypeCounts corpus_stats(std::span<const BenchmarkInstance> instances) {
  std::map<std::string, std::size_t> counts;
  for (const auto& inst : instances) ++counts[inst.punctuation_type];
  TypeCounts out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

ParallelCorpus read_parallel(const std::filesystem::path& src, const std::filesystem::path& tgt,
                             std::optional<std::string> name) {
  const auto src_lines = split_lines(read_file(src));
  const auto tgt_lines = split_lines(read_file(tgt));
  if (src_lines.size() != tgt_lines.size())
    throw ParseError("source has " + std::to_string(src_lines.size()) + " lines, target has " +
                     std::to_string(tgt_lines.size()));
  ParallelCorpus corpus;
  corpus.name = name ? *name : src.stem().string();
  corpus.pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    ParallelPair pair{text::nfc(src_lines[i]), text::nfc(tgt_lines[i])};
    if (text::trim(pair.source).empty()) throw ParseError("empty source sentence", i + 1);
    if (text::trim(pair.target).empty()) throw ParseError("empty target sentence", i + 1);
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

void write_parallel(const std::filesystem::path& dir, const ParallelCorpus& corpus) {
  std::filesystem::create_directories(dir);
  std::ofstream src(dir / (corpus.name + ".src"), std::ios::binary);
  std::ofstream tgt(dir / (corpus.name + ".tgt"), std::ios::binary);
  std::ofstream meta(dir / (corpus.name + ".meta.json"), std::ios::binary);
  if (!src || !tgt || !meta) throw Error("cannot write corpus files under " + dir.string());
  for (const auto& p : corpus.pairs) {
    if (p.source.find('\n') != std::string::npos || p.target.find('\n') != std::string::npos)
      throw PreconditionError("corpus sentences must not contain newlines");
    src << p.source << '\n';
    tgt << p.target << '\n';
  }
  nlohmann::ordered_json m;
  m["name"] = corpus.name;
  m["variant"] = std::string(variant_name(corpus.variant));
  m["base"] = corpus.base_name;
  m["pairs"] = corpus.pairs.size();
  meta << m.dump(2) << '\n';
}

ParallelCorpus read_parallel_dir(const std::filesystem::path& dir, const std::string& name) {
  const auto meta = nlohmann::json::parse(read_file(dir / (name + ".meta.json")));
  ParallelCorpus corpus = read_parallel(dir / (name + ".src"), dir / (name + ".tgt"), name);
  corpus.variant = parse_variant(meta.at("variant").get<std::string>());
  corpus.base_name = meta.value("base", "");
  return corpus;
}

}  // namespace viram::corpus
