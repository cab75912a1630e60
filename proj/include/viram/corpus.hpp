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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace viram::corpus {

/// One row of the punctuation-ambiguity benchmark: the surface ("written")
/// English, its disambiguated ("meant") form, the Marathi translation of the
/// meant form, and the punctuation class that causes the ambiguity.
struct BenchmarkInstance {
  std::string id;
  std::string english_written;
  std::string english_meant;
  std::string marathi_meant;
  std::string punctuation_type;

  bool operator==(const BenchmarkInstance&) const = default;
};

struct ParallelPair {
  std::string source;
  std::string target;

  bool operator==(const ParallelPair&) const = default;
};

enum class VariantKind { WithPunct, WithoutPunct, Combined2x, AlternateX };

std::string_view variant_name(VariantKind kind);
VariantKind parse_variant(std::string_view name);

struct ParallelCorpus {
  std::string name;
  VariantKind variant = VariantKind::WithPunct;
  // Name of the corpus this one was derived from; empty for originals.
  std::string base_name;
  std::vector<ParallelPair> pairs;

  bool operator==(const ParallelCorpus&) const = default;
};

/// Marks removed by strip_punctuation. Entries are strings so multi-character
/// marks ("...") can be configured; the defaults are single code points.
struct PunctuationInventory {
  std::vector<std::string> marks;
  // Kept when the character on each side is a letter ("don't", "well-known").
  std::vector<std::string> intra_word_keep;

  static PunctuationInventory defaults();
  // Same marks, nothing kept intra-word.
  static PunctuationInventory without_intra_word_keep();

  // Throws PreconditionError when a set is empty or keep is not a subset.
  void validate() const;
  bool is_mark(std::string_view s) const;
};

/// The benchmark's punctuation classes.
const std::vector<std::string>& punctuation_type_labels();

/// A tokenization of punctuated text: whitespace- and mark-separated tokens,
/// each with the inventory marks that follow it before the next token.
struct Segmented {
  struct Token {
    std::string text;
    std::vector<std::string> marks_after;
  };
  std::vector<std::string> leading_marks;
  std::vector<Token> tokens;
};

Segmented segment(std::string_view text, const PunctuationInventory& inventory);

std::string strip_punctuation(std::string_view text, const PunctuationInventory& inventory);

// True when the two texts carry the same non-mark characters in the same order.
// Every inventory mark counts here, intra-word ones included, and whitespace is
// ignored, so "little used" matches "little-used" and "Its" matches "It's".
bool same_modulo_punctuation(std::string_view a, std::string_view b,
                             const PunctuationInventory& inventory);

enum class BenchmarkFormat { Tsv, Jsonl };

BenchmarkFormat format_from_path(const std::filesystem::path& path);

struct LoadOptions {
  // Allowed punctuation_type values; empty accepts any non-empty label.
  std::vector<std::string> allowed_types = punctuation_type_labels();
  PunctuationInventory inventory = PunctuationInventory::defaults();
};

std::vector<BenchmarkInstance> load_benchmark(const std::filesystem::path& path,
                                              BenchmarkFormat format,
                                              const LoadOptions& options = {});

std::vector<BenchmarkInstance> parse_benchmark(std::string_view content,
                                               BenchmarkFormat format,
                                               const LoadOptions& options = {});

std::string serialize_benchmark(std::span<const BenchmarkInstance> instances,
                                BenchmarkFormat format);

void save_benchmark(const std::filesystem::path& path,
                    std::span<const BenchmarkInstance> instances, BenchmarkFormat format);

// Throws ValidationError listing every offending id.
void validate_benchmark(std::span<const BenchmarkInstance> instances,
                        const LoadOptions& options = {});

ParallelCorpus make_variant(const ParallelCorpus& base, VariantKind kind,
                            const PunctuationInventory& inventory);

using TypeCounts = std::vector<std::pair<std::string, std::size_t>>;

// Sorted by descending count, then name.
TypeCounts corpus_stats(std::span<const BenchmarkInstance> instances);

// Two aligned line files; `name` defaults to the source file stem.
ParallelCorpus read_parallel(const std::filesystem::path& src, const std::filesystem::path& tgt,
                             std::optional<std::string> name = std::nullopt);

// Writes <dir>/<name>.src, <name>.tgt and <name>.meta.json.
void write_parallel(const std::filesystem::path& dir, const ParallelCorpus& corpus);

// Reads a directory entry written by write_parallel.
ParallelCorpus read_parallel_dir(const std::filesystem::path& dir, const std::string& name);

}  // namespace viram::corpus
