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

// viramkit command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "viram/corpus.hpp"
#include "viram/error.hpp"
#include "viram/metrics.hpp"
#include "viram/prompts.hpp"
#include "viram/restorer.hpp"
#include "viram/runner.hpp"
#include "viram/text.hpp"
#include "viram/version.hpp"

namespace {

using namespace viram;

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<restore::LabeledSentence> read_labeled(const std::string& path,
                                                   const restore::LabelSet& labels) {
  const auto inventory = corpus::PunctuationInventory::defaults();
  std::vector<restore::LabeledSentence> out;
  for (const auto& line : read_lines(path)) {
    if (text::trim(line).empty()) continue;
    out.push_back(restore::derive_labels(text::nfc(line), inventory, labels));
  }
  return out;
}

restore::LabelSet parse_label_list(const std::string& csv) {
  restore::LabelSet labels{restore::PunctLabel::None};
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) labels.push_back(restore::parse_label(item));
  return restore::canonical_label_set(labels);
}

void print_eval(const restore::EvalReport& r) {
  std::printf("%-10s %9s %9s %9s %6s %6s %6s\n", "class", "precision", "recall", "f1", "tp", "fp",
              "fn");
  for (const auto& c : r.per_class) {
    std::printf("%-10s %9.4f %9.4f %9.4f %6zu %6zu %6zu\n",
                std::string(restore::label_name(c.label)).c_str(), c.precision, c.recall, c.f1,
                c.true_positives, c.false_positives, c.false_negatives);
  }
  std::printf("macro_f1 %.4f  micro_p %.4f  micro_r %.4f  micro_f1 %.4f  slots %zu\n", r.macro_f1,
              r.micro_precision, r.micro_recall, r.micro_f1, r.slots);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viramkit: punctuation robustness toolkit for English-Marathi MT"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "debug logging");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "benchmark and parallel corpus tools");
  corpus_cmd->require_subcommand(1);

  auto* variants = corpus_cmd->add_subcommand("make-variants", "derive a training corpus variant");
  std::vector<std::string> variant_in;
  std::string variant_kind, variant_out, variant_name;
  variants->add_option("--in", variant_in, "source and target line files")->expected(2)->required();
  variants->add_option("--kind", variant_kind, "with|without|combined2x|alternate")->required();
  variants->add_option("--out", variant_out, "output directory")->required();
  variants->add_option("--name", variant_name, "base corpus name (default: source file stem)");

  auto* stats = corpus_cmd->add_subcommand("stats", "punctuation type counts of a benchmark");
  std::string stats_path;
  stats->add_option("--benchmark", stats_path, "benchmark TSV or JSONL")->required();

  // restore
  auto* restore_cmd = app.add_subcommand("restore", "punctuation restoration model");
  restore_cmd->require_subcommand(1);

  auto* train_cmd = restore_cmd->add_subcommand("train", "train a restorer");
  std::string train_corpus, train_out, train_labels;
  int train_epochs = 5;
  std::uint64_t train_seed = 7;
  train_cmd->add_option("--corpus", train_corpus, "punctuated sentences, one per line")->required();
  train_cmd->add_option("--epochs", train_epochs, "training epochs")->capture_default_str();
  train_cmd->add_option("--seed", train_seed, "shuffle seed")->capture_default_str();
  train_cmd->add_option("--labels", train_labels, "comma-separated labels, e.g. COMMA,PERIOD");
  train_cmd->add_option("--out", train_out, "model file")->required();

  auto* apply_cmd = restore_cmd->add_subcommand("apply", "restore punctuation in raw text");
  std::string apply_model, apply_in, apply_out;
  apply_cmd->add_option("--model", apply_model, "model file")->required();
  apply_cmd->add_option("--in", apply_in, "raw sentences, one per line")->required();
  apply_cmd->add_option("--out", apply_out, "output file (default: stdout)");

  auto* eval_cmd = restore_cmd->add_subcommand("eval", "score a restorer on gold text");
  std::string eval_model, eval_gold;
  eval_cmd->add_option("--model", eval_model, "model file")->required();
  eval_cmd->add_option("--gold", eval_gold, "punctuated sentences, one per line")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "translation metrics");
  metrics_cmd->require_subcommand(1);
  auto* score_cmd = metrics_cmd->add_subcommand("score", "BLEU and chrF of a hypothesis file");
  std::string score_hyp, score_ref, score_tok = "intl";
  score_cmd->add_option("--hyp", score_hyp, "hypotheses, one per line")->required();
  score_cmd->add_option("--ref", score_ref, "references, one per line")->required();
  score_cmd->add_option("--tokenize", score_tok, "intl|whitespace")->capture_default_str();

  // prompts
  auto* prompts_cmd = app.add_subcommand("prompts", "LLM prompt templates");
  prompts_cmd->require_subcommand(1);
  auto* render_cmd = prompts_cmd->add_subcommand("render", "print a rendered prompt");
  std::string render_strategy, render_sentence, render_benchmark;
  std::vector<std::string> render_shots;
  render_cmd->add_option("--strategy", render_strategy, "prompt strategy")->required();
  render_cmd->add_option("--sentence", render_sentence, "input sentence")->required();
  render_cmd->add_option("--benchmark", render_benchmark, "benchmark supplying shot examples");
  render_cmd->add_option("--shots", render_shots, "shot instance ids");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "experiment runs and reports");
  bench_cmd->require_subcommand(1);
  auto* run_cmd = bench_cmd->add_subcommand("run", "run an experiment config");
  std::string run_config;
  run_cmd->add_option("--config", run_config, "experiment TOML or JSON")->required();
  auto* report_cmd = bench_cmd->add_subcommand("report", "render an experiment report");
  std::string report_dir, report_format = "markdown", report_out;
  report_cmd->add_option("--dir", report_dir, "experiment output directory")->required();
  report_cmd->add_option("--format", report_format, "markdown|csv|json")->capture_default_str();
  report_cmd->add_option("--out", report_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*variants) {
      auto base = corpus::read_parallel(
          variant_in[0], variant_in[1],
          variant_name.empty() ? std::nullopt : std::optional<std::string>(variant_name));
      auto kind = corpus::parse_variant(variant_kind);
      auto out = kind == corpus::VariantKind::WithPunct
                     ? base
                     : corpus::make_variant(base, kind, corpus::PunctuationInventory::defaults());
      corpus::write_parallel(variant_out, out);
      std::printf("%s: %zu pairs\n", out.name.c_str(), out.pairs.size());
    } else if (*stats) {
      const auto bench = corpus::load_benchmark(stats_path, corpus::format_from_path(stats_path));
      for (const auto& [type, count] : corpus::corpus_stats(bench))
        std::printf("%s\t%zu\n", type.c_str(), count);
      std::printf("total\t%zu\n", bench.size());
    } else if (*train_cmd) {
      restore::TrainConfig cfg;
      cfg.epochs = train_epochs;
      cfg.seed = train_seed;
      if (!train_labels.empty()) cfg.label_set = parse_label_list(train_labels);
      const auto data = read_labeled(train_corpus, cfg.label_set);
      const auto model = restore::train(data, cfg);
      restore::save_model(model, train_out);
      std::printf("trained on %zu sentences, %zu features\n", data.size(), model.weights.size());
    } else if (*apply_cmd) {
      const auto model = restore::load_model(apply_model);
      const auto inventory = corpus::PunctuationInventory::defaults();
      std::ofstream file;
      if (!apply_out.empty()) {
        file.open(apply_out, std::ios::binary);
        if (!file) throw Error("cannot write " + apply_out);
      }
      std::ostream& out = apply_out.empty() ? std::cout : file;
      for (const auto& line : read_lines(apply_in)) {
        out << (text::trim(line).empty() ? std::string()
                                          : restore::restore(model, text::nfc(line), inventory))
            << '\n';
      }
    } else if (*eval_cmd) {
      const auto model = restore::load_model(eval_model);
      print_eval(restore::evaluate_restorer(model, read_labeled(eval_gold, model.label_set)));
    } else if (*score_cmd) {
      metrics::MetricConfig cfg;
      if (score_tok == "whitespace") {
        cfg.tokenizer = metrics::Tokenizer::Whitespace;
      } else if (score_tok != "intl") {
        throw PreconditionError("unknown tokenizer '" + score_tok + "'");
      }
      const auto report = metrics::build_report("cli", read_lines(score_hyp), read_lines(score_ref),
                                                {}, cfg);
      std::printf("BLEU %.2f\nchrF++ %.2f\nchrF2++ %.2f\nN %zu\n", report.bleu, report.chrf_pp,
                  report.chrf2_pp, report.n_instances);
    } else if (*render_cmd) {
      const auto strategy = prompts::parse_strategy(render_strategy);
      std::vector<prompts::ShotExample> shots;
      if (prompts::required_shots(strategy) > 0) {
        if (render_benchmark.empty()) throw PreconditionError("three-shot strategies need --benchmark");
        const auto bench =
            corpus::load_benchmark(render_benchmark, corpus::format_from_path(render_benchmark));
        shots = prompts::select_and_exclude_shots(
                    bench, render_shots.empty() ? prompts::default_shot_ids() : render_shots)
                    .shots;
      }
      std::cout << prompts::render_prompt(strategy, render_sentence, shots) << '\n';
    } else if (*run_cmd) {
      const auto cfg = runner::load_experiment_config(run_config);
      const auto table = runner::run_experiment(cfg);
      std::cout << runner::format_report(table, runner::ReportFormat::Markdown);
      for (const auto& row : table)
        if (row.status != "ok") return 3;
    } else if (*report_cmd) {
      const auto table = runner::read_report(report_dir);
      const auto format = runner::parse_report_format(report_format);
      if (report_out.empty()) {
        std::cout << runner::format_report(table, format);
      } else {
        runner::emit_report(table, format, report_out);
      }
    }
  } catch (const viram::Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
