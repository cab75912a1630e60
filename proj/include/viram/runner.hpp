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

// Experiment orchestration: runs translation pipelines over a benchmark,
// persists one record per instance and renders comparison tables.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "viram/backends.hpp"
#include "viram/corpus.hpp"
#include "viram/metrics.hpp"
#include "viram/prompts.hpp"
#include "viram/restorer.hpp"

namespace viram::runner {

using TranslatorPtr = std::shared_ptr<const backends::Translator>;

struct Baseline {
  TranslatorPtr translator;
};
struct Oracle {
  TranslatorPtr translator;
};
struct CascadeNative {
  std::filesystem::path model_path;
  std::shared_ptr<const restore::RestorerModel> model;
  TranslatorPtr translator;
};
struct CascadeBackend {
  backends::EndpointConfig restore_ep;
  TranslatorPtr translator;
};
struct Direct {
  TranslatorPtr translator;
  std::string system_label;
};
struct LlmPrompting {
  prompts::Strategy strategy = prompts::Strategy::ZeroShotDirect;
  std::shared_ptr<const backends::ChatModel> chat;
  // Used by the three-shot strategies; empty selects default_shot_ids().
  std::vector<std::string> shot_ids;
};

using PipelineKind =
    std::variant<Baseline, Oracle, CascadeNative, CascadeBackend, Direct, LlmPrompting>;

struct PipelineSpec {
  std::string label;
  PipelineKind kind;

  // Labels name output directories, so they are limited to [A-Za-z0-9._-].
  void validate() const;
};

std::string_view kind_name(const PipelineKind& kind);

// Whether the pipeline consumes english_meant instead of english_written.
bool uses_meant_input(const PipelineKind& kind);

enum class RecordStatus { Ok, ParseFailed, BackendFailed };
std::string_view status_name(RecordStatus s);
RecordStatus parse_status(std::string_view name);

struct RunRecord {
  std::string instance_id;
  std::string input_sent;
  std::optional<std::string> restored;
  std::string hypothesis;
  RecordStatus status = RecordStatus::Ok;
  std::chrono::duration<double> timing{0.0};
};

// Keys are kept in declaration order so records.jsonl lines diff cleanly.
nlohmann::ordered_json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& obj);

struct RunContext {
  metrics::MetricConfig metric_cfg;
  std::optional<backends::EndpointConfig> embed;
  std::optional<backends::EndpointConfig> scorer;
  backends::LanguageTag source_lang = backends::english();
  backends::LanguageTag target_lang = backends::marathi();
  corpus::PunctuationInventory inventory = corpus::PunctuationInventory::defaults();
};

struct PipelineResult {
  std::vector<RunRecord> records;
  // Absent when no instance succeeded or scoring itself failed.
  std::optional<metrics::MetricReport> report;
  std::size_t failures = 0;
  bool failed = false;
  std::string error;
};

PipelineResult run_pipeline(const PipelineSpec& spec,
                            std::span<const corpus::BenchmarkInstance> benchmark,
                            const RunContext& ctx = {});

struct ReportRow {
  std::string system;
  std::string status;  // "ok" or "failed"
  std::optional<metrics::MetricReport> metrics;
  std::size_t failures = 0;
  std::size_t total = 0;
  std::string error;

  bool operator==(const ReportRow&) const = default;
};
using ReportTable = std::vector<ReportRow>;

struct ExperimentConfig {
  std::filesystem::path benchmark_path;
  corpus::BenchmarkFormat benchmark_format = corpus::BenchmarkFormat::Tsv;
  corpus::LoadOptions load_options;
  std::vector<PipelineSpec> pipelines;
  RunContext context;
  std::filesystem::path output_dir;
  std::uint64_t seed = 7;
  // Canonical JSON of the source config, hashed into the manifest.
  std::string canonical_source;

  void validate() const;
};

// Paths inside `doc` resolve against `base_dir`.
ExperimentConfig experiment_from_json(const nlohmann::json& doc,
                                      const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Writes <output_dir>/<label>/records.jsonl per pipeline plus report.json
// and manifest.json at the top level.
ReportTable run_experiment(const ExperimentConfig& cfg);

std::uint64_t config_hash(std::string_view canonical);

enum class ReportFormat { Markdown, Csv, Json };
ReportFormat parse_report_format(std::string_view name);

std::string format_report(const ReportTable& table, ReportFormat format);
void emit_report(const ReportTable& table, ReportFormat format,
                 const std::filesystem::path& path);

nlohmann::json to_json(const ReportTable& table);
ReportTable report_table_from_json(const nlohmann::json& doc);
// Reads report.json from an experiment output directory.
ReportTable read_report(const std::filesystem::path& dir);

}  // namespace viram::runner
