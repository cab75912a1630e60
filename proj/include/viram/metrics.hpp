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

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "viram/backends.hpp"

namespace viram::metrics {

enum class Tokenizer { Intl, Whitespace };

struct MetricConfig {
  int bleu_max_order = 4;
  int chr_char_order = 6;
  int chr_word_order = 2;
  // F-beta weight for chrf(); build_report always computes beta 1 and 2.
  double beta = 2.0;
  Tokenizer tokenizer = Tokenizer::Intl;

  void validate() const;
};

MetricConfig metric_config_from_json(const nlohmann::json& obj);

// Splits on whitespace and isolates every Unicode punctuation character
// unless both of its neighbours are numbers ("3.14" stays whole).
std::vector<std::string> tokenize_intl(std::string_view text);

std::vector<std::string> tokenize(std::string_view text, Tokenizer tokenizer);

// counts[n-1] maps each n-gram (tokens joined with U+001F) to its count.
using NGramCounts = std::vector<std::unordered_map<std::string, int>>;

NGramCounts word_ngrams(const std::vector<std::string>& tokens, int max_order);
// Code-point n-grams of `text` with all whitespace removed.
NGramCounts char_ngrams(std::string_view text, int max_order);

struct BleuResult {
  double score = 0.0;
  std::vector<double> precisions;  // percent, per order
  double brevity_penalty = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  // Set when every hypothesis was empty and the score was forced to 0.
  bool empty_hypotheses = false;
};

BleuResult corpus_bleu_detailed(const std::vector<std::string>& hyps,
                                const std::vector<std::string>& refs, const MetricConfig& cfg = {});

double corpus_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   const MetricConfig& cfg = {});

struct ChrfResult {
  double score = 0.0;
  // F-beta per order: character orders first, then word orders. Orders with
  // no n-grams on either side are absent from the average and hold NaN.
  std::vector<double> f_scores;
  bool empty_hypotheses = false;
};

ChrfResult chrf_detailed(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                         const MetricConfig& cfg = {});

double chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
            const MetricConfig& cfg = {});

double cosine_metric(const std::vector<std::vector<double>>& hyp_embeddings,
                     const std::vector<std::vector<double>>& ref_embeddings);

struct MetricReport {
  std::string system_name;
  double bleu = 0.0;
  double chrf_pp = 0.0;
  double chrf2_pp = 0.0;
  std::optional<double> cosine_embed;
  std::optional<double> learned_score;
  std::size_t n_instances = 0;

  bool operator==(const MetricReport&) const = default;
};

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& obj);

struct ReportEndpoints {
  std::optional<backends::EndpointConfig> embed;
  std::optional<backends::EndpointConfig> scorer;
  // Required by the learned scorer.
  std::optional<std::vector<std::string>> sources;
};

MetricReport build_report(const std::string& system_name, const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs, const ReportEndpoints& endpoints = {},
                          const MetricConfig& cfg = {});

}  // namespace viram::metrics
