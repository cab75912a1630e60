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

#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "viram/error.hpp"

namespace viram::testing {

std::filesystem::path data_dir() { return VIRAM_TEST_DATA_DIR; }
std::filesystem::path golden_dir() { return VIRAM_TEST_GOLDEN_DIR; }

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("viramkit-" + tag + "-" + std::to_string(rng() % 1000000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

const std::vector<std::string> kWords = {
    "I",     "tried", "failed", "we",    "went",   "home", "the",     "plan",
    "worked", "they", "said",   "it",    "was",    "late", "she",     "called",
    "again", "rain",  "came",   "early", "he",     "smiled", "nothing", "changed"};

std::string clause(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(3, 6);
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::string out;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) {
    if (i) out += ' ';
    out += kWords[pick(rng)];
  }
  return out;
}

}  // namespace

std::vector<std::string> rule_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution contrast(0.5);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string s = clause(rng);
    if (contrast(rng)) s += ", but " + clause(rng);
    out.push_back(s + ".");
  }
  return out;
}

restore::RestorerModel rule_model() {
  using restore::PunctLabel;
  auto model = restore::RestorerModel::zero();
  const auto& labels = model.label_set;
  auto row = [&](PunctLabel hit) {
    std::vector<double> w(labels.size(), 0.0);
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == hit) w[k] = 1.0;
    return w;
  };
  model.weights["next=but"] = row(PunctLabel::Comma);
  model.weights["at_end=true"] = row(PunctLabel::Period);
  model.averaged_weights = model.weights;
  return model;
}

std::vector<corpus::BenchmarkInstance> rule_benchmark(std::size_t count, std::uint64_t seed) {
  const auto inventory = corpus::PunctuationInventory::defaults();
  std::vector<corpus::BenchmarkInstance> out;
  std::set<std::string> seen;
  std::uint64_t round = 0;
  while (out.size() < count) {
    for (const auto& meant : rule_corpus(count, seed + round++)) {
      if (out.size() == count) break;
      if (!seen.insert(meant).second) continue;
      corpus::BenchmarkInstance inst;
      inst.id = "R" + std::to_string(out.size() + 1);
      inst.english_meant = meant;
      inst.english_written = corpus::strip_punctuation(meant, inventory);
      inst.marathi_meant = "अनुवाद " + std::to_string(out.size() + 1) + " वाक्य";
      inst.punctuation_type = "Comma";
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace viram::testing
