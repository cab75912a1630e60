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

#include "viram/restorer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::restore {
namespace {

constexpr std::array<PunctLabel, 6> kAllLabels = {PunctLabel::None,  PunctLabel::Comma,
                                                  PunctLabel::Period, PunctLabel::Question,
                                                  PunctLabel::Colon, PunctLabel::Semicolon};

constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

// Position of each enum value inside a model's label set.
std::array<std::size_t, kAllLabels.size()> index_of(const LabelSet& labels) {
  std::array<std::size_t, kAllLabels.size()> idx;
  idx.fill(kNoIndex);
  for (std::size_t i = 0; i < labels.size(); ++i) idx[static_cast<std::size_t>(labels[i])] = i;
  return idx;
}

std::string length_bucket(std::size_t n) {
  if (n <= 5) return "1-5";
  if (n <= 10) return "6-10";
  if (n <= 20) return "11-20";
  if (n <= 40) return "21-40";
  return "41+";
}

bool capitalized(std::string_view tok) {
  const auto cps = text::to_u32(tok);
  return !cps.empty() && text::is_upper(cps.front());
}

std::size_t argmax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

void accumulate_scores(const WeightTable& table, const std::vector<std::string>& features,
                       std::vector<double>& scores) {
  std::fill(scores.begin(), scores.end(), 0.0);
  for (const auto& f : features) {
    auto it = table.find(f);
    if (it == table.end()) continue;
    for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += it->second[c];
  }
}

// Portable Fisher-Yates: std::shuffle's draw sequence is implementation
// defined, which would break cross-platform reproducibility.
void seeded_shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("invalid number '" + std::string(s) + "' in model file");
  return v;
}

std::vector<double> parse_weights(std::string_view field, std::size_t expected) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < field.size()) {
    std::size_t end = field.find(' ', start);
    if (end == std::string_view::npos) end = field.size();
    out.push_back(parse_double(field.substr(start, end - start)));
    start = end + 1;
  }
  if (out.size() != expected)
    throw ParseError("weight row has " + std::to_string(out.size()) + " entries, expected " +
                     std::to_string(expected));
  return out;
}

}  // namespace

const LabelSet& default_label_set() {
  static const LabelSet labels(kAllLabels.begin(), kAllLabels.end());
  return labels;
}

std::string_view label_name(PunctLabel label) {
  switch (label) {
    case PunctLabel::None: return "NONE";
    case PunctLabel::Comma: return "COMMA";
    case PunctLabel::Period: return "PERIOD";
    case PunctLabel::Question: return "QUESTION";
    case PunctLabel::Colon: return "COLON";
    case PunctLabel::Semicolon: return "SEMICOLON";
  }
  return "NONE";
}

PunctLabel parse_label(std::string_view name) {
  for (PunctLabel l : kAllLabels)
    if (label_name(l) == name) return l;
  throw PreconditionError("unknown punctuation label '" + std::string(name) + "'");
}

std::string_view surface(PunctLabel label) {
  switch (label) {
    case PunctLabel::None: return "";
    case PunctLabel::Comma: return ",";
    case PunctLabel::Period: return ".";
    case PunctLabel::Question: return "?";
    case PunctLabel::Colon: return ":";
    case PunctLabel::Semicolon: return ";";
  }
  return "";
}

std::optional<PunctLabel> label_for_mark(std::string_view mark) {
  for (PunctLabel l : kAllLabels)
    if (l != PunctLabel::None && surface(l) == mark) return l;
  return std::nullopt;
}

LabelSet canonical_label_set(LabelSet labels) {
  labels.push_back(PunctLabel::None);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

LabeledSentence derive_labels(std::string_view punctuated,
                              const corpus::PunctuationInventory& inventory,
                              const LabelSet& label_set) {
  const auto seg = corpus::segment(punctuated, inventory);
  if (seg.tokens.empty()) throw EmptyInputError("sentence has no tokens after stripping punctuation");
  const auto idx = index_of(canonical_label_set(label_set));
  LabeledSentence out;
  out.tokens.reserve(seg.tokens.size());
  out.labels.reserve(seg.tokens.size());
  for (const auto& tok : seg.tokens) {
    PunctLabel label = PunctLabel::None;
    for (const auto& mark : tok.marks_after) {
      auto l = label_for_mark(mark);
      if (l && idx[static_cast<std::size_t>(*l)] != kNoIndex) {
        label = *l;
        break;
      }
    }
    out.tokens.push_back(tok.text);
    out.labels.push_back(label);
  }
  return out;
}

std::string apply_labels(const LabeledSentence& sentence) {
  if (sentence.tokens.size() != sentence.labels.size())
    throw PreconditionError("token and label counts differ");
  std::string out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i) out += ' ';
    out += sentence.tokens[i];
    out += surface(sentence.labels[i]);
  }
  return out;
}

std::vector<std::string> extract_features(std::span<const std::string> tokens, std::size_t i) {
  if (i >= tokens.size())
    throw PreconditionError("feature position " + std::to_string(i) + " out of range");
  const std::string boundary(kBoundary);
  auto at = [&](std::ptrdiff_t k) -> std::string {
    if (k < 0 || static_cast<std::size_t>(k) >= tokens.size()) return boundary;
    return text::lower(tokens[static_cast<std::size_t>(k)]);
  };
  const auto pos = static_cast<std::ptrdiff_t>(i);
  const std::string word = at(pos);
  const std::string next = at(pos + 1);
  const bool at_end = i + 1 == tokens.size();

  std::vector<std::string> f = {
      "bias",
      "word=" + word,
      "prev=" + at(pos - 1),
      "next=" + next,
      "next2=" + at(pos + 2),
      "suffix2=" + text::suffix(word, 2),
      "suffix3=" + text::suffix(word, 3),
      "word+next=" + word + "|" + next,
      std::string("cap=") + (capitalized(tokens[i]) ? "1" : "0"),
      std::string("next_cap=") + (at_end ? boundary : capitalized(tokens[i + 1]) ? "1" : "0"),
      std::string("at_end=") + (at_end ? "true" : "false"),
      "len_bucket=" + length_bucket(tokens.size()),
  };
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

RestorerModel RestorerModel::zero(const LabelSet& labels) {
  RestorerModel m;
  m.label_set = canonical_label_set(labels);
  m.trained = true;
  return m;
}

RestorerModel train(std::span<const LabeledSentence> corpus, const TrainConfig& config) {
  if (corpus.empty()) throw PreconditionError("training corpus is empty");
  if (config.epochs < 1) throw PreconditionError("epochs must be at least 1");

  RestorerModel model;
  model.label_set = canonical_label_set(config.label_set);
  model.train_seed = config.seed;
  const auto idx = index_of(model.label_set);
  const std::size_t n_labels = model.label_set.size();

  std::vector<std::vector<std::vector<std::string>>> features(corpus.size());
  std::vector<std::vector<std::size_t>> gold(corpus.size());
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& sent = corpus[s];
    if (sent.tokens.size() != sent.labels.size())
      throw PreconditionError("sentence " + std::to_string(s) + ": token and label counts differ");
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      const std::size_t c = idx[static_cast<std::size_t>(sent.labels[i])];
      if (c == kNoIndex)
        throw PreconditionError("label " + std::string(label_name(sent.labels[i])) +
                                " is not in the configured label set");
      gold[s].push_back(c);
      features[s].push_back(extract_features(sent.tokens, i));
    }
  }

  // Lazy averaging: totals[f][c] accumulates weight * steps-held, flushed when
  // the weight changes and once at the end.
  WeightTable totals;
  std::unordered_map<std::string, std::vector<std::uint64_t>> stamps;
  std::uint64_t step = 0;
  auto update = [&](const std::string& f, std::size_t c, double delta) {
    auto& w = model.weights.try_emplace(f, n_labels, 0.0).first->second;
    auto& t = totals.try_emplace(f, n_labels, 0.0).first->second;
    auto& st = stamps.try_emplace(f, n_labels, 0).first->second;
    t[c] += static_cast<double>(step - st[c]) * w[c];
    st[c] = step;
    w[c] += delta;
  };

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(corpus.size());
  std::vector<double> scores(n_labels);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    seeded_shuffle(order, rng);
    for (std::size_t s : order) {
      for (std::size_t i = 0; i < features[s].size(); ++i) {
        const auto& feats = features[s][i];
        accumulate_scores(model.weights, feats, scores);
        const std::size_t guess = argmax(scores);
        const std::size_t truth = gold[s][i];
        if (guess != truth) {
          for (const auto& f : feats) {
            update(f, truth, 1.0);
            update(f, guess, -1.0);
          }
        }
        ++step;
      }
    }
  }

  for (const auto& [f, w] : model.weights) {
    auto& t = totals[f];
    const auto& st = stamps[f];
    std::vector<double> avg(n_labels);
    for (std::size_t c = 0; c < n_labels; ++c) {
      t[c] += static_cast<double>(step - st[c]) * w[c];
      avg[c] = t[c] / static_cast<double>(step);
    }
    model.averaged_weights.emplace(f, std::move(avg));
  }
  model.epochs_trained = config.epochs;
  model.trained = true;
  return model;
}

std::vector<PunctLabel> predict(const RestorerModel& model, std::span<const std::string> tokens) {
  if (!model.trained) throw PreconditionError("restorer model is not trained");
  if (tokens.empty()) throw EmptyInputError("cannot predict labels for an empty token list");
  std::vector<PunctLabel> out;
  out.reserve(tokens.size());
  std::vector<double> scores(model.label_set.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    accumulate_scores(model.averaged_weights, extract_features(tokens, i), scores);
    out.push_back(model.label_set[argmax(scores)]);
  }
  return out;
}

std::string restore(const RestorerModel& model, std::string_view raw_text,
                    const corpus::PunctuationInventory& inventory) {
  LabeledSentence sent;
  sent.tokens = text::split_ws(corpus::strip_punctuation(raw_text, inventory));
  if (sent.tokens.empty()) throw EmptyInputError("text is empty after stripping punctuation");
  sent.labels = predict(model, sent.tokens);
  return apply_labels(sent);
}

const ClassScores& EvalReport::at(PunctLabel label) const {
  for (const auto& c : per_class)
    if (c.label == label) return c;
  throw PreconditionError("label " + std::string(label_name(label)) + " not in report");
}

EvalReport score_predictions(std::span<const LabeledSentence> gold,
                             std::span<const std::vector<PunctLabel>> predicted,
                             const LabelSet& label_set) {
  if (gold.size() != predicted.size())
    throw PreconditionError("gold and prediction counts differ");
  const LabelSet labels = canonical_label_set(label_set);
  const auto idx = index_of(labels);
  auto known = [&](PunctLabel l) {
    return idx[static_cast<std::size_t>(l)] != kNoIndex ? l : PunctLabel::None;
  };

  EvalReport report;
  for (PunctLabel l : labels)
    if (l != PunctLabel::None) report.per_class.push_back(ClassScores{.label = l});
  auto slot = [&](PunctLabel l) -> ClassScores& {
    return report.per_class[idx[static_cast<std::size_t>(l)] - 1];
  };

  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].labels.size() != predicted[s].size())
      throw PreconditionError("sentence " + std::to_string(s) + ": prediction length differs");
    for (std::size_t i = 0; i < predicted[s].size(); ++i) {
      const PunctLabel g = known(gold[s].labels[i]);
      const PunctLabel p = known(predicted[s][i]);
      ++report.slots;
      if (g == p) {
        if (g != PunctLabel::None) ++slot(g).true_positives;
        continue;
      }
      if (p != PunctLabel::None) ++slot(p).false_positives;
      if (g != PunctLabel::None) ++slot(g).false_negatives;
    }
  }

  std::size_t tp = 0, fp = 0, fn = 0, active = 0;
  double f1_sum = 0.0;
  for (auto& c : report.per_class) {
    const double t = static_cast<double>(c.true_positives);
    c.precision_defined = c.true_positives + c.false_positives > 0;
    c.recall_defined = c.true_positives + c.false_negatives > 0;
    c.precision = c.precision_defined ? t / static_cast<double>(c.true_positives + c.false_positives) : 0.0;
    c.recall = c.recall_defined ? t / static_cast<double>(c.true_positives + c.false_negatives) : 0.0;
    c.f1 = c.precision + c.recall > 0 ? 2 * c.precision * c.recall / (c.precision + c.recall) : 0.0;
    tp += c.true_positives;
    fp += c.false_positives;
    fn += c.false_negatives;
    if (c.precision_defined || c.recall_defined) {
      ++active;
      f1_sum += c.f1;
    }
  }
  report.macro_f1 = active ? f1_sum / static_cast<double>(active) : 1.0;
  const double dtp = static_cast<double>(tp);
  report.micro_precision = tp + fp ? dtp / static_cast<double>(tp + fp) : 0.0;
  report.micro_recall = tp + fn ? dtp / static_cast<double>(tp + fn) : 0.0;
  report.micro_f1 = report.micro_precision + report.micro_recall > 0
                        ? 2 * report.micro_precision * report.micro_recall /
                              (report.micro_precision + report.micro_recall)
                        : (tp + fp + fn == 0 ? 1.0 : 0.0);
  return report;
}

EvalReport evaluate_restorer(const RestorerModel& model, std::span<const LabeledSentence> heldout) {
  if (heldout.empty()) throw PreconditionError("held-out set is empty");
  std::vector<std::vector<PunctLabel>> predicted;
  predicted.reserve(heldout.size());
  for (const auto& sent : heldout) predicted.push_back(predict(model, sent.tokens));
  return score_predictions(heldout, predicted, model.label_set);
}

void save_model(const RestorerModel& model, const std::filesystem::path& path) {
  if (!model.trained) throw PreconditionError("refusing to save an untrained model");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "viramkit-restorer\n";
  out << "format_version " << kModelFormatVersion << '\n';
  out << "label_set";
  for (PunctLabel l : model.label_set) out << ' ' << label_name(l);
  out << '\n';
  out << "seed " << model.train_seed << '\n';
  out << "epochs " << model.epochs_trained << '\n';

  std::vector<const std::string*> names;
  names.reserve(model.averaged_weights.size());
  for (const auto& [f, _] : model.averaged_weights) names.push_back(&f);
  std::sort(names.begin(), names.end(), [](auto* a, auto* b) { return *a < *b; });
  out << "features " << names.size() << '\n';
  auto row = [&](const std::vector<double>& w) {
    for (std::size_t c = 0; c < w.size(); ++c) out << (c ? " " : "") << format_double(w[c]);
  };
  for (const auto* f : names) {
    out << *f << '\t';
    auto raw = model.weights.find(*f);
    row(raw != model.weights.end() ? raw->second
                                   : std::vector<double>(model.label_set.size(), 0.0));
    out << '\t';
    row(model.averaged_weights.at(*f));
    out << '\n';
  }
}

RestorerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t ln = 0;
  auto next = [&](std::string_view key) -> std::string {
    if (!std::getline(in, line)) throw ParseError("truncated model file", ln + 1);
    ++ln;
    if (line.rfind(std::string(key) + " ", 0) != 0 && line != key)
      throw ParseError("expected '" + std::string(key) + "'", ln);
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
  };

  next("viramkit-restorer");
  const std::string version = next("format_version");
  if (version != std::to_string(kModelFormatVersion))
    throw ParseError("unsupported model format_version " + version + " (expected " +
                     std::to_string(kModelFormatVersion) + ")");
  RestorerModel model;
  for (const auto& name : text::split_ws(next("label_set"))) model.label_set.push_back(parse_label(name));
  if (model.label_set != canonical_label_set(model.label_set))
    throw ParseError("label_set is not in canonical order", ln);
  try {
    model.train_seed = std::stoull(next("seed"));
    model.epochs_trained = std::stoi(next("epochs"));
  } catch (const std::logic_error&) {
    throw ParseError("invalid model header", ln);
  }
  const std::size_t n = std::stoull(next("features"));
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::getline(in, line)) throw ParseError("truncated weight table", ln + 1);
    ++ln;
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) throw ParseError("malformed weight row", ln);
    const std::string feature = line.substr(0, t1);
    const auto sv = std::string_view(line);
    try {
      model.weights.emplace(feature, parse_weights(sv.substr(t1 + 1, t2 - t1 - 1), model.label_set.size()));
      model.averaged_weights.emplace(feature, parse_weights(sv.substr(t2 + 1), model.label_set.size()));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), ln);
    }
  }
  model.trained = true;
  return model;
}

}  // namespace viram::restore
