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

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stub_server.hpp"
#include "viram/error.hpp"
#include "viram/runner.hpp"
#include "viram/version.hpp"

namespace viram::runner {
namespace {

using backends::MockTranslator;
using corpus::BenchmarkInstance;

std::shared_ptr<const backends::Translator> meant_lookup(const std::vector<BenchmarkInstance>& b,
                                                         bool passthrough) {
  std::map<std::string, std::string> table;
  for (const auto& inst : b) table[inst.english_meant] = inst.marathi_meant;
  return std::make_shared<MockTranslator>(MockTranslator::lookup(table, passthrough));
}

std::shared_ptr<const restore::RestorerModel> rule_model() {
  return std::make_shared<restore::RestorerModel>(testing::rule_model());
}

// Returns an empty translation wherever `bad` says so.
class FlakyTranslator final : public backends::Translator {
 public:
  explicit FlakyTranslator(std::function<bool(const std::string&)> bad) : bad_(std::move(bad)) {}
  std::vector<std::string> translate(const std::vector<std::string>& sources,
                                     const backends::LanguageTag&,
                                     const backends::LanguageTag&) const override {
    std::vector<std::string> out;
    for (const auto& s : sources) out.push_back(bad_(s) ? "" : "अनुवाद");
    return out;
  }

 private:
  std::function<bool(const std::string&)> bad_;
};

std::string last_input(const std::string& prompt) {
  const auto pos = prompt.rfind("Input English: ");
  const auto start = pos + 15;
  return prompt.substr(start, prompt.find('\n', start) - start);
}

TEST(Pipeline, ConstructedOrdering) {
  const auto bench = testing::rule_benchmark(40, 1);
  const auto oracle = run_pipeline({"oracle", Oracle{meant_lookup(bench, false)}}, bench);
  const auto cascade =
      run_pipeline({"cascade", CascadeNative{"", rule_model(), meant_lookup(bench, false)}}, bench);
  const auto baseline = run_pipeline({"baseline", Baseline{meant_lookup(bench, true)}}, bench);
  ASSERT_TRUE(oracle.report && cascade.report && baseline.report);
  EXPECT_EQ(oracle.report->bleu, 100.0);
  EXPECT_EQ(cascade.report->bleu, 100.0);
  EXPECT_LT(baseline.report->bleu, 100.0);
  EXPECT_GE(oracle.report->bleu, cascade.report->bleu);
  EXPECT_GE(cascade.report->bleu, baseline.report->bleu);
  for (std::size_t i = 0; i < bench.size(); ++i) {
    EXPECT_EQ(oracle.records[i].input_sent, bench[i].english_meant);
    EXPECT_EQ(baseline.records[i].input_sent, bench[i].english_written);
    EXPECT_EQ(cascade.records[i].input_sent, bench[i].english_written);
    EXPECT_EQ(cascade.records[i].restored, bench[i].english_meant);
    EXPECT_FALSE(baseline.records[i].restored);
  }
}

TEST(Pipeline, FailuresAreCountedButNotScored) {
  const auto bench = testing::rule_benchmark(10, 2);
  auto flaky = std::make_shared<FlakyTranslator>(
      [&](const std::string& s) { return s == bench[0].english_written || s == bench[3].english_written; });
  const auto res = run_pipeline({"flaky", Direct{flaky, "ft-model"}}, bench);
  ASSERT_EQ(res.records.size(), bench.size());
  EXPECT_EQ(res.failures, 2u);
  EXPECT_FALSE(res.failed);
  ASSERT_TRUE(res.report);
  EXPECT_EQ(res.report->n_instances, 8u);
  for (const auto& r : res.records)
    EXPECT_EQ(r.hypothesis.empty(), r.status != RecordStatus::Ok) << r.instance_id;
}

TEST(Pipeline, MajorityFailureMarksRunFailedButKeepsRecords) {
  const auto bench = testing::rule_benchmark(6, 3);
  auto strict = std::make_shared<MockTranslator>(MockTranslator::lookup({}));
  const auto res = run_pipeline({"broken", Baseline{strict}}, bench);
  EXPECT_TRUE(res.failed);
  EXPECT_EQ(res.records.size(), 6u);
  EXPECT_EQ(res.failures, 6u);
  EXPECT_FALSE(res.report);
  for (const auto& r : res.records) EXPECT_EQ(r.status, RecordStatus::BackendFailed);
}

TEST(Pipeline, LlmPromptingParsesAndExcludesShots) {
  const auto bench = corpus::load_benchmark(testing::data_dir() / "benchmark54.tsv",
                                            corpus::BenchmarkFormat::Tsv);
  std::map<std::string, std::string> by_written;
  for (const auto& b : bench) by_written[b.english_written] = b.marathi_meant;
  auto chat = std::make_shared<backends::ScriptedChatModel>([&](const std::string& prompt) {
    const auto in = last_input(prompt);
    if (in == bench[10].english_written) return std::string("Sorry, I cannot do that.");
    return prompt + "\nStep 1 (Restoration): " + in + "\nStep 2 (Translation): " +
           by_written.at(in) + "\nReasoning: none";
  });
  LlmPrompting spec{prompts::Strategy::ThreeShotRestoreThenTranslate, chat, {}};
  const auto res = run_pipeline({"llm", spec}, bench);
  ASSERT_EQ(res.records.size(), 51u);
  EXPECT_EQ(res.failures, 1u);
  EXPECT_EQ(res.records[7].status, RecordStatus::ParseFailed);
  EXPECT_EQ(res.records[7].instance_id, bench[10].id);
  ASSERT_TRUE(res.report);
  EXPECT_EQ(res.report->n_instances, 50u);
  EXPECT_EQ(res.report->bleu, 100.0);
  for (const auto& r : res.records) EXPECT_NE(r.instance_id, "V01");
}

TEST(Pipeline, OracleDirectPromptUsesMeant) {
  const auto bench = testing::rule_benchmark(4, 4);
  auto chat = std::make_shared<backends::ScriptedChatModel>([](const std::string& prompt) {
    return "Marathi Translation (Devanagari Script): " + std::string("म ") + last_input(prompt);
  });
  const auto res = run_pipeline(
      {"llm-oracle", LlmPrompting{prompts::Strategy::OracleDirect, chat, {}}}, bench);
  for (std::size_t i = 0; i < bench.size(); ++i)
    EXPECT_EQ(res.records[i].input_sent, bench[i].english_meant);
}

TEST(Pipeline, CascadeBackendUsesRestoreRoute) {
  const auto bench = testing::rule_benchmark(12, 5);
  testing::StubServer stub;
  const auto model = testing::rule_model();
  const auto inv = corpus::PunctuationInventory::defaults();
  stub.restore_fn = [&](const std::string& s) { return restore::restore(model, s, inv); };
  backends::EndpointConfig ep;
  ep.base_url = stub.url();
  ep.batch_size = 5;
  const auto res =
      run_pipeline({"cascade-http", CascadeBackend{ep, meant_lookup(bench, false)}}, bench);
  ASSERT_TRUE(res.report);
  EXPECT_EQ(res.report->bleu, 100.0);
  auto sizes = stub.batch_sizes();  // batches may arrive in any order
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 5, 5}));
}

TEST(Pipeline, BackendOutageFailsRun) {
  const auto bench = testing::rule_benchmark(3, 6);
  testing::StubServer stub;
  stub.fail_always(503, "down");
  backends::EndpointConfig ep;
  ep.base_url = stub.url();
  ep.max_retries = 1;
  ep.retry_backoff = backends::Seconds(0.001);
  auto http = std::make_shared<backends::HttpTranslator>(ep);
  const auto res = run_pipeline({"down", Baseline{http}}, bench);
  EXPECT_TRUE(res.failed);
  EXPECT_EQ(res.records.size(), 3u);
  EXPECT_EQ(stub.requests(), 2);
}

TEST(Pipeline, SpecValidation) {
  const auto bench = testing::rule_benchmark(2, 7);
  EXPECT_THROW(run_pipeline({"x", Baseline{nullptr}}, bench), PreconditionError);
  EXPECT_THROW(run_pipeline({"bad/label", Baseline{meant_lookup(bench, true)}}, bench),
               PreconditionError);
  EXPECT_THROW(run_pipeline({"ok", Baseline{meant_lookup(bench, true)}}, {}), PreconditionError);
  auto chat = std::make_shared<backends::ScriptedChatModel>([](const std::string&) { return ""; });
  EXPECT_THROW(
      run_pipeline({"z", LlmPrompting{prompts::Strategy::ZeroShotDirect, chat, {"R1"}}}, bench),
      PreconditionError);
}

TEST(Records, JsonFieldsAndRoundTrip) {
  RunRecord r{"V01", "a b", std::string("a, b"), "अ ब", RecordStatus::Ok,
              std::chrono::duration<double>(0.25)};
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"instance_id", "input_sent", "restored", "hypothesis",
                                            "status", "timing"}));
  const auto back = record_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.restored, r.restored);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.timing, r.timing);
  EXPECT_EQ(parse_status("parse_failed"), RecordStatus::ParseFailed);
}

ExperimentConfig experiment(const std::filesystem::path& dir,
                            const std::vector<BenchmarkInstance>& bench) {
  corpus::save_benchmark(dir / "bench.tsv", bench, corpus::BenchmarkFormat::Tsv);
  ExperimentConfig cfg;
  cfg.benchmark_path = dir / "bench.tsv";
  cfg.load_options.allowed_types.clear();
  cfg.output_dir = dir / "out";
  cfg.canonical_source = "{\"test\":1}";
  cfg.pipelines = {{"oracle", Oracle{meant_lookup(bench, false)}},
                   {"cascade", CascadeNative{"", rule_model(), meant_lookup(bench, false)}},
                   {"baseline", Baseline{meant_lookup(bench, true)}}};
  return cfg;
}

std::string without_timing(const std::string& jsonl) {
  return std::regex_replace(jsonl, std::regex(R"("timing":[-0-9.eE+]+)"), R"("timing":0)");
}

TEST(Experiment, WritesArtifactsInOrder) {
  const auto dir = testing::scratch_dir("experiment");
  const auto bench = testing::rule_benchmark(20, 8);
  const auto cfg = experiment(dir, bench);
  const auto table = run_experiment(cfg);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0].system, "oracle");
  EXPECT_EQ(table[1].system, "cascade");
  EXPECT_EQ(table[2].system, "baseline");
  EXPECT_EQ(table[0].metrics->bleu, 100.0);
  EXPECT_EQ(table[1].metrics->bleu, 100.0);
  EXPECT_LT(table[2].metrics->bleu, 100.0);
  for (const auto& row : table) {
    EXPECT_EQ(row.status, "ok");
    EXPECT_EQ(testing::read_lines(cfg.output_dir / row.system / "records.jsonl").size(), 20u);
  }
  const auto manifest =
      nlohmann::json::parse(testing::read_file(cfg.output_dir / "manifest.json"));
  EXPECT_EQ(manifest["toolkit_version"], std::string(kVersion));
  EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 16u);
  EXPECT_TRUE(manifest.contains("started_at"));
  EXPECT_TRUE(manifest.contains("finished_at"));
  EXPECT_EQ(read_report(cfg.output_dir), table);
}

TEST(Experiment, RerunIsByteIdenticalModuloTiming) {
  const auto bench = testing::rule_benchmark(15, 9);
  const auto d1 = testing::scratch_dir("rerun1");
  const auto d2 = testing::scratch_dir("rerun2");
  run_experiment(experiment(d1, bench));
  run_experiment(experiment(d2, bench));
  for (const char* label : {"oracle", "cascade", "baseline"}) {
    const auto a = testing::read_file(d1 / "out" / label / "records.jsonl");
    const auto b = testing::read_file(d2 / "out" / label / "records.jsonl");
    EXPECT_EQ(without_timing(a), without_timing(b)) << label;
  }
}

TEST(Experiment, FailedPipelineDoesNotStopOthers) {
  const auto dir = testing::scratch_dir("experiment-fail");
  const auto bench = testing::rule_benchmark(5, 10);
  auto cfg = experiment(dir, bench);
  cfg.pipelines.insert(cfg.pipelines.begin() + 1,
                       {"strict", Baseline{meant_lookup(bench, false)}});
  const auto table = run_experiment(cfg);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[1].status, "failed");
  EXPECT_EQ(table[1].failures, 5u);
  EXPECT_EQ(table[2].status, "ok");
  EXPECT_TRUE(std::filesystem::exists(cfg.output_dir / "strict" / "records.jsonl"));
}

TEST(Experiment, ValidatesConfig) {
  const auto dir = testing::scratch_dir("experiment-bad");
  const auto bench = testing::rule_benchmark(3, 11);
  auto cfg = experiment(dir, bench);
  auto dup = cfg;
  dup.pipelines.push_back(dup.pipelines.front());
  EXPECT_THROW(run_experiment(dup), PreconditionError);
  cfg.pipelines.clear();
  EXPECT_THROW(run_experiment(cfg), PreconditionError);
}

ReportTable two_rows() {
  return {{"oracle", "ok", metrics::MetricReport{"oracle", 100, 100, 100, 0.98765, std::nullopt, 54},
           0, 54, ""},
          {"baseline", "ok",
           metrics::MetricReport{"baseline", 21.7234, 50.1, 45.05, std::nullopt, 0.81234, 52}, 2,
           54, ""}};
}

TEST(Report, MarkdownColumnsAndPrecision) {
  const auto md = format_report(two_rows(), ReportFormat::Markdown);
  EXPECT_EQ(md.substr(0, md.find('\n')),
            "| System | BLEU | chrF++ | chrF2++ | Cosine | Learned | N | Failures |");
  EXPECT_NE(md.find("| oracle | 100.00 | 100.00 | 100.00 | 0.9877 | - | 54 | 0 |"),
            std::string::npos)
      << md;
  EXPECT_NE(md.find("| baseline | 21.72 | 50.10 | 45.05 | - | 0.8123 | 52 | 2 |"),
            std::string::npos)
      << md;
}

TEST(Report, CsvHasHeaderPlusRows) {
  const auto csv = format_report(two_rows(), ReportFormat::Csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "system,status,bleu,chrf_pp,chrf2_pp,cosine,learned,n,failures,total");
}

TEST(Report, JsonRoundTripsAndEmitWrites) {
  const auto table = two_rows();
  EXPECT_EQ(report_table_from_json(nlohmann::json::parse(format_report(table, ReportFormat::Json))),
            table);
  const auto dir = testing::scratch_dir("emit");
  emit_report(table, ReportFormat::Markdown, dir / "sub" / "table.md");
  EXPECT_NE(testing::read_file(dir / "sub" / "table.md").find("100.00"), std::string::npos);
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(emit_report(table, ReportFormat::Csv, dir / "file" / "t.csv"), Error);
  EXPECT_THROW(format_report({}, ReportFormat::Csv), PreconditionError);
}

TEST(Config, TomlExperimentWithMocksAndModel) {
  const auto dir = testing::scratch_dir("toml");
  const auto bench = testing::rule_benchmark(8, 12);
  corpus::save_benchmark(dir / "bench.tsv", bench, corpus::BenchmarkFormat::Tsv);
  restore::save_model(testing::rule_model(), dir / "rule.model");
  {
    std::ofstream lookup(dir / "lookup.tsv");
    for (const auto& b : bench) lookup << b.english_meant << '\t' << b.marathi_meant << '\n';
  }
  std::ofstream(dir / "exp.toml") << R"(
benchmark = "bench.tsv"
output_dir = "out"
allowed_types = []
seed = 7

[metrics]
chr_word_order = 2

[[pipeline]]
label = "oracle"
kind = "oracle"
translate_mock = "lookup"
lookup_file = "lookup.tsv"

[[pipeline]]
label = "cascade"
kind = "cascade_native"
model = "rule.model"
translate_mock = "lookup"
lookup_file = "lookup.tsv"

[[pipeline]]
label = "baseline"
kind = "baseline"
translate_mock = "lookup"
lookup_file = "lookup.tsv"
passthrough_on_miss = true
)";
  const auto cfg = load_experiment_config(dir / "exp.toml");
  EXPECT_EQ(cfg.output_dir, dir / "out");
  const auto table = run_experiment(cfg);
  EXPECT_EQ(table[0].metrics->bleu, 100.0);
  EXPECT_EQ(table[1].metrics->bleu, 100.0);
  EXPECT_LT(table[2].metrics->bleu, 100.0);

  std::ofstream(dir / "typo.toml") << "benchmark = \"bench.tsv\"\noutput_dir = \"o\"\n"
                                      "[[pipeline]]\nlabel = \"a\"\nkind = \"oracle\"\n"
                                      "translate_mock = \"identity\"\ntranslte = \"x\"\n";
  EXPECT_THROW(load_experiment_config(dir / "typo.toml"), PreconditionError);
  std::ofstream(dir / "none.toml") << "benchmark = \"bench.tsv\"\noutput_dir = \"o\"\n";
  EXPECT_THROW(load_experiment_config(dir / "none.toml"), PreconditionError);
}

}  // namespace
}  // namespace viram::runner
