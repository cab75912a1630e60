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

// Token-classification punctuation restorer. Each token carries one label
// naming the mark that follows it (or NONE); a multiclass averaged perceptron
// over sparse indicator features predicts the labels, and apply_labels turns
// them back into punctuated text.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "viram/corpus.hpp"

namespace viram::restore {

enum class PunctLabel : std::uint8_t { None, Comma, Period, Question, Colon, Semicolon };

using LabelSet = std::vector<PunctLabel>;

// NONE, COMMA, PERIOD, QUESTION, COLON, SEMICOLON.
const LabelSet& default_label_set();

std::string_view label_name(PunctLabel label);
PunctLabel parse_label(std::string_view name);
// "" for NONE.
std::string_view surface(PunctLabel label);
std::optional<PunctLabel> label_for_mark(std::string_view mark);

// Deduplicated, NONE first, remaining labels in enum order.
LabelSet canonical_label_set(LabelSet labels);

struct LabeledSentence {
  std::vector<std::string> tokens;
  // labels[i] is the mark attached directly after tokens[i].
  std::vector<PunctLabel> labels;

  bool operator==(const LabeledSentence&) const = default;
};

LabeledSentence derive_labels(std::string_view punctuated,
                              const corpus::PunctuationInventory& inventory,
                              const LabelSet& label_set = default_label_set());

std::string apply_labels(const LabeledSentence& sentence);

// Binary indicator features for the slot after tokens[i]. Sorted, unique.
std::vector<std::string> extract_features(std::span<const std::string> tokens, std::size_t i);

inline constexpr std::string_view kBoundary = "<B>";

// Per-feature weights, one entry per label in the model's label set.
using WeightTable = std::unordered_map<std::string, std::vector<double>>;

struct RestorerModel {
  LabelSet label_set;
  WeightTable weights;
  WeightTable averaged_weights;
  std::uint64_t train_seed = 0;
  int epochs_trained = 0;
  bool trained = false;

  // A trained model whose weights are all zero; predicts NONE everywhere.
  static RestorerModel zero(const LabelSet& labels = default_label_set());

  bool operator==(const RestorerModel&) const = default;
};

struct TrainConfig {
  int epochs = 5;
  std::uint64_t seed = 7;
  LabelSet label_set = default_label_set();
};

RestorerModel train(std::span<const LabeledSentence> corpus, const TrainConfig& config);

std::vector<PunctLabel> predict(const RestorerModel& model, std::span<const std::string> tokens);

std::string restore(const RestorerModel& model, std::string_view raw_text,
                    const corpus::PunctuationInventory& inventory);

struct ClassScores {
  PunctLabel label = PunctLabel::None;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // False when the denominator was zero; the value is then reported as 0.
  bool precision_defined = true;
  bool recall_defined = true;
};

struct EvalReport {
  // One entry per non-NONE label of the model.
  std::vector<ClassScores> per_class;
  // Mean F1 over classes that occur in gold or predictions.
  double macro_f1 = 0.0;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;
  std::size_t slots = 0;

  const ClassScores& at(PunctLabel label) const;
};

EvalReport evaluate_restorer(const RestorerModel& model, std::span<const LabeledSentence> heldout);

// Scores already-computed predictions (one label vector per gold sentence).
EvalReport score_predictions(std::span<const LabeledSentence> gold,
                             std::span<const std::vector<PunctLabel>> predicted,
                             const LabelSet& label_set);

inline constexpr int kModelFormatVersion = 1;

void save_model(const RestorerModel& model, const std::filesystem::path& path);
RestorerModel load_model(const std::filesystem::path& path);

}  // namespace viram::restore
