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

#include "viram/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::metrics {
namespace {

constexpr char kJoin = '\x1f';

void check_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  if (hyps.size() != refs.size())
    throw PreconditionError("hypothesis count " + std::to_string(hyps.size()) +
                            " differs from reference count " + std::to_string(refs.size()));
  if (hyps.empty()) throw PreconditionError("cannot score an empty corpus");
}

// Clipped matches plus the n-gram totals of each side, for one order.
struct OrderStats {
  std::size_t matches = 0;
  std::size_t hyp_total = 0;
  std::size_t ref_total = 0;
};

void add_stats(const NGramCounts& hyp, const NGramCounts& ref, std::vector<OrderStats>& stats) {
  for (std::size_t n = 0; n < stats.size(); ++n) {
    for (const auto& [gram, count] : hyp[n]) {
      stats[n].hyp_total += static_cast<std::size_t>(count);
      auto it = ref[n].find(gram);
      if (it != ref[n].end()) stats[n].matches += static_cast<std::size_t>(std::min(count, it->second));
    }
    for (const auto& [gram, count] : ref[n]) stats[n].ref_total += static_cast<std::size_t>(count);
  }
}

[[noreturn]] void annotate_current(const std::string& column) {
  try {
    throw;
  } catch (const BackendUnavailable& e) {
    throw BackendUnavailable(column + ": " + e.what(), e.status());
  } catch (const ProtocolError& e) {
    throw ProtocolError(column + ": " + e.what(), e.status());
  } catch (const PreconditionError& e) {
    throw PreconditionError(column + ": " + e.what());
  } catch (const Error& e) {
    throw Error(column + ": " + e.what());
  }
}

}  // namespace

void MetricConfig::validate() const {
  if (bleu_max_order < 1 || chr_char_order < 1 || chr_word_order < 0)
    throw PreconditionError("n-gram orders must be >= 1 (word order >= 0)");
  if (!(beta > 0)) throw PreconditionError("beta must be positive");
}

MetricConfig metric_config_from_json(const nlohmann::json& obj) {
  MetricConfig cfg;
  if (obj.is_null()) return cfg;
  cfg.bleu_max_order = obj.value("bleu_max_order", cfg.bleu_max_order);
  cfg.chr_char_order = obj.value("chr_char_order", cfg.chr_char_order);
  cfg.chr_word_order = obj.value("chr_word_order", cfg.chr_word_order);
  cfg.beta = obj.value("beta", cfg.beta);
  const std::string tok = obj.value("tokenizer", std::string("intl"));
  if (tok == "intl")
    cfg.tokenizer = Tokenizer::Intl;
  else if (tok == "whitespace")
    cfg.tokenizer = Tokenizer::Whitespace;
  else
    throw PreconditionError("unknown tokenizer '" + tok + "'");
  cfg.validate();
  return cfg;
}

std::vector<std::string> tokenize_intl(std::string_view input) {
  const std::u32string s = text::to_u32(input);
  std::vector<std::string> out;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(text::to_utf8(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (text::is_space(c)) {
      flush();
    } else if (text::is_punct(c)) {
      const bool numeric = i > 0 && i + 1 < s.size() && text::is_number(s[i - 1]) &&
                           text::is_number(s[i + 1]);
      if (numeric) {
        cur.push_back(c);
      } else {
        flush();
        out.push_back(text::to_utf8(c));
      }
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::vector<std::string> tokenize(std::string_view input, Tokenizer tokenizer) {
  return tokenizer == Tokenizer::Intl ? tokenize_intl(input) : text::split_ws(input);
}

NGramCounts word_ngrams(const std::vector<std::string>& tokens, int max_order) {
  NGramCounts counts(static_cast<std::size_t>(std::max(0, max_order)));
  for (std::size_t n = 1; n <= counts.size(); ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        key += kJoin;
        key += tokens[i + k];
      }
      ++counts[n - 1][key];
    }
  }
  return counts;
}

NGramCounts char_ngrams(std::string_view input, int max_order) {
  std::u32string cps;
  for (char32_t c : text::to_u32(input))
    if (!text::is_space(c)) cps.push_back(c);
  NGramCounts counts(static_cast<std::size_t>(std::max(0, max_order)));
  for (std::size_t n = 1; n <= counts.size(); ++n)
    for (std::size_t i = 0; i + n <= cps.size(); ++i)
      ++counts[n - 1][text::to_utf8(std::u32string_view(cps).substr(i, n))];
  return counts;
}

BleuResult corpus_bleu_detailed(const std::vector<std::string>& hyps,
                                const std::vector<std::string>& refs, const MetricConfig& cfg) {
  check_corpus(hyps, refs);
  cfg.validate();
  const auto max_order = static_cast<std::size_t>(cfg.bleu_max_order);
  std::vector<OrderStats> stats(max_order);
  BleuResult result;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto h = tokenize(hyps[s], cfg.tokenizer);
    const auto r = tokenize(refs[s], cfg.tokenizer);
    result.hyp_length += h.size();
    result.ref_length += r.size();
    add_stats(word_ngrams(h, cfg.bleu_max_order), word_ngrams(r, cfg.bleu_max_order), stats);
  }
  if (result.hyp_length == 0) {
    result.empty_hypotheses = true;
    return result;
  }

  // Orders with no hypothesis n-grams at all (every sentence shorter than n)
  // drop out of the geometric mean.
  double smooth = 1.0;
  double log_sum = 0.0;
  std::size_t effective = 0;
  for (std::size_t n = 0; n < max_order; ++n) {
    const auto& st = stats[n];
    if (st.hyp_total == 0) break;
    double p;
    if (st.matches == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(st.hyp_total));
    } else {
      p = static_cast<double>(st.matches) / static_cast<double>(st.hyp_total);
    }
    result.precisions.push_back(100.0 * p);
    log_sum += std::log(p);
    ++effective;
  }
  const double c = static_cast<double>(result.hyp_length);
  const double r = static_cast<double>(result.ref_length);
  result.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
  result.score = 100.0 * result.brevity_penalty * std::exp(log_sum / static_cast<double>(effective));
  return result;
}

double corpus_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   const MetricConfig& cfg) {
  return corpus_bleu_detailed(hyps, refs, cfg).score;
}

ChrfResult chrf_detailed(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                         const MetricConfig& cfg) {
  check_corpus(hyps, refs);
  cfg.validate();
  const auto char_orders = static_cast<std::size_t>(cfg.chr_char_order);
  const auto word_orders = static_cast<std::size_t>(cfg.chr_word_order);
  std::vector<OrderStats> chars(char_orders), words(word_orders);
  bool any_hyp = false;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto hc = char_ngrams(hyps[s], cfg.chr_char_order);
    add_stats(hc, char_ngrams(refs[s], cfg.chr_char_order), chars);
    if (!hc.empty() && !hc[0].empty()) any_hyp = true;
    if (word_orders)
      add_stats(word_ngrams(tokenize(hyps[s], cfg.tokenizer), cfg.chr_word_order),
                word_ngrams(tokenize(refs[s], cfg.tokenizer), cfg.chr_word_order), words);
  }

  ChrfResult result;
  result.empty_hypotheses = !any_hyp;
  const double b2 = cfg.beta * cfg.beta;
  double f_sum = 0.0;
  std::size_t effective = 0;
  auto fold = [&](const OrderStats& st) {
    if (st.hyp_total == 0 && st.ref_total == 0) {
      result.f_scores.push_back(std::numeric_limits<double>::quiet_NaN());
      return;
    }
    const double m = static_cast<double>(st.matches);
    const double p = st.hyp_total ? m / static_cast<double>(st.hyp_total) : 0.0;
    const double r = st.ref_total ? m / static_cast<double>(st.ref_total) : 0.0;
    const double f = p + r > 0 ? (1 + b2) * p * r / (b2 * p + r) : 0.0;
    result.f_scores.push_back(f);
    f_sum += f;
    ++effective;
  };
  for (const auto& st : chars) fold(st);
  for (const auto& st : words) fold(st);
  if (result.empty_hypotheses || effective == 0) {
    result.empty_hypotheses = true;
    result.score = 0.0;
    return result;
  }
  result.score = 100.0 * (f_sum / static_cast<double>(effective));
  return result;
}

double chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
            const MetricConfig& cfg) {
  return chrf_detailed(hyps, refs, cfg).score;
}

double cosine_metric(const std::vector<std::vector<double>>& hyp_embeddings,
                     const std::vector<std::vector<double>>& ref_embeddings) {
  if (hyp_embeddings.size() != ref_embeddings.size())
    throw PreconditionError("embedding lists differ in length");
  if (hyp_embeddings.empty()) throw PreconditionError("no embeddings to compare");
  double sum = 0.0;
  for (std::size_t i = 0; i < hyp_embeddings.size(); ++i) {
    const auto& a = hyp_embeddings[i];
    const auto& b = ref_embeddings[i];
    if (a.size() != b.size())
      throw PreconditionError("embedding dimensions differ at index " + std::to_string(i));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      dot += a[k] * b[k];
      na += a[k] * a[k];
      nb += b[k] * b[k];
    }
    if (na == 0.0 || nb == 0.0)
      throw PreconditionError("degenerate (zero) embedding at index " + std::to_string(i));
    sum += dot / (std::sqrt(na) * std::sqrt(nb));
  }
  return sum / static_cast<double>(hyp_embeddings.size());
}

nlohmann::json to_json(const MetricReport& report) {
  nlohmann::ordered_json j;
  j["system_name"] = report.system_name;
  j["bleu"] = report.bleu;
  j["chrf_pp"] = report.chrf_pp;
  j["chrf2_pp"] = report.chrf2_pp;
  j["cosine_embed"] = report.cosine_embed ? nlohmann::ordered_json(*report.cosine_embed) : nullptr;
  j["learned_score"] = report.learned_score ? nlohmann::ordered_json(*report.learned_score) : nullptr;
  j["n_instances"] = report.n_instances;
  return nlohmann::json::parse(j.dump());
}

MetricReport report_from_json(const nlohmann::json& obj) {
  MetricReport r;
  r.system_name = obj.at("system_name").get<std::string>();
  r.bleu = obj.at("bleu").get<double>();
  r.chrf_pp = obj.at("chrf_pp").get<double>();
  r.chrf2_pp = obj.at("chrf2_pp").get<double>();
  if (obj.contains("cosine_embed") && !obj["cosine_embed"].is_null())
    r.cosine_embed = obj["cosine_embed"].get<double>();
  if (obj.contains("learned_score") && !obj["learned_score"].is_null())
    r.learned_score = obj["learned_score"].get<double>();
  r.n_instances = obj.at("n_instances").get<std::size_t>();
  return r;
}

MetricReport build_report(const std::string& system_name, const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs, const ReportEndpoints& endpoints,
                          const MetricConfig& cfg) {
  check_corpus(hyps, refs);
  MetricReport report;
  report.system_name = system_name;
  report.n_instances = hyps.size();
  MetricConfig chrf1 = cfg, chrf2 = cfg;
  chrf1.beta = 1.0;
  chrf2.beta = 2.0;
  try {
    report.bleu = corpus_bleu(hyps, refs, cfg);
  } catch (...) {
    annotate_current("bleu");
  }
  try {
    report.chrf_pp = chrf(hyps, refs, chrf1);
    report.chrf2_pp = chrf(hyps, refs, chrf2);
  } catch (...) {
    annotate_current("chrf");
  }
  if (endpoints.embed) {
    try {
      report.cosine_embed = cosine_metric(backends::embed(*endpoints.embed, hyps),
                                          backends::embed(*endpoints.embed, refs));
    } catch (...) {
      annotate_current("cosine_embed");
    }
  }
  if (endpoints.scorer) {
    try {
      if (!endpoints.sources) throw PreconditionError("learned scorer needs source sentences");
      const auto scores = backends::score_pairs(*endpoints.scorer, *endpoints.sources, hyps, refs);
      double sum = 0.0;
      for (double s : scores) sum += s;
      report.learned_score = sum / static_cast<double>(scores.size());
    } catch (...) {
      annotate_current("learned_score");
    }
  }
  return report;
}

}  // namespace viram::metrics
