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

#include "viram/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "viram/config.hpp"
#include "viram/error.hpp"
#include "viram/text.hpp"
#include "viram/version.hpp"

namespace viram::runner {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const TranslatorPtr& translator_of(const PipelineKind& kind) {
  static const TranslatorPtr kNone;
  return std::visit(Overloaded{
                        [](const Baseline& k) -> const TranslatorPtr& { return k.translator; },
                        [](const Oracle& k) -> const TranslatorPtr& { return k.translator; },
                        [](const CascadeNative& k) -> const TranslatorPtr& { return k.translator; },
                        [](const CascadeBackend& k) -> const TranslatorPtr& { return k.translator; },
                        [](const Direct& k) -> const TranslatorPtr& { return k.translator; },
                        [](const LlmPrompting&) -> const TranslatorPtr& { return kNone; },
                    },
                    kind);
}

void fail_records(std::vector<RunRecord>& records, const std::vector<std::size_t>& idx,
                  RecordStatus status) {
  for (auto i : idx) {
    records[i].status = status;
    records[i].hypothesis.clear();
  }
}

std::vector<std::size_t> ok_indices(const std::vector<RunRecord>& records) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].status == RecordStatus::Ok) idx.push_back(i);
  return idx;
}

void share_elapsed(std::vector<RunRecord>& records, const std::vector<std::size_t>& idx,
                   Clock::duration elapsed) {
  if (idx.empty()) return;
  const auto each = std::chrono::duration<double>(elapsed) / static_cast<double>(idx.size());
  for (auto i : idx) records[i].timing += each;
}

// Translates every still-ok record from its restored text when present.
void translate_stage(std::vector<RunRecord>& records, const backends::Translator& translator,
                     const RunContext& ctx, const std::string& label) {
  const auto idx = ok_indices(records);
  if (idx.empty()) return;
  std::vector<std::string> sources;
  sources.reserve(idx.size());
  for (auto i : idx) sources.push_back(records[i].restored.value_or(records[i].input_sent));
  const auto t0 = Clock::now();
  std::vector<std::string> hyps;
  try {
    hyps = translator.translate(sources, ctx.source_lang, ctx.target_lang);
  } catch (const Error& e) {
    spdlog::error("{}: translation failed: {}", label, e.what());
    share_elapsed(records, idx, Clock::now() - t0);
    fail_records(records, idx, RecordStatus::BackendFailed);
    return;
  }
  share_elapsed(records, idx, Clock::now() - t0);
  if (hyps.size() != idx.size()) {
    spdlog::error("{}: translator returned {} outputs for {} inputs", label, hyps.size(),
                  idx.size());
    fail_records(records, idx, RecordStatus::BackendFailed);
    return;
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto& r = records[idx[k]];
    if (text::trim(hyps[k]).empty()) {
      spdlog::warn("{}: empty translation for {}", label, r.instance_id);
      r.status = RecordStatus::BackendFailed;
      continue;
    }
    r.hypothesis = std::move(hyps[k]);
  }
}

void native_restore_stage(std::vector<RunRecord>& records, const restore::RestorerModel& model,
                          const RunContext& ctx, const std::string& label) {
  for (auto& r : records) {
    const auto t0 = Clock::now();
    try {
      r.restored = restore::restore(model, r.input_sent, ctx.inventory);
    } catch (const Error& e) {
      spdlog::warn("{}: restoration failed for {}: {}", label, r.instance_id, e.what());
      r.status = RecordStatus::BackendFailed;
    }
    r.timing += Clock::now() - t0;
  }
}

void backend_restore_stage(std::vector<RunRecord>& records, const backends::EndpointConfig& ep,
                           const std::string& label) {
  auto idx = ok_indices(records);
  std::vector<std::string> texts;
  for (auto i : idx) texts.push_back(records[i].input_sent);
  const auto t0 = Clock::now();
  try {
    auto restored = restore_via_backend(ep, texts);
    share_elapsed(records, idx, Clock::now() - t0);
    for (std::size_t k = 0; k < idx.size(); ++k) records[idx[k]].restored = std::move(restored[k]);
  } catch (const Error& e) {
    spdlog::error("{}: /restore failed: {}", label, e.what());
    share_elapsed(records, idx, Clock::now() - t0);
    fail_records(records, idx, RecordStatus::BackendFailed);
  }
}

void llm_stage(std::vector<RunRecord>& records, const LlmPrompting& spec,
               std::span<const prompts::ShotExample> shots, const std::string& label) {
  const auto& templates = prompts::TemplateSet::builtin();
  backends::parallel_for(records.size(), std::max(1, spec.chat->max_parallel()),
                         [&](std::size_t i) {
                           auto& r = records[i];
                           const auto t0 = Clock::now();
                           std::string raw;
                           try {
                             raw = spec.chat->complete(prompts::render_prompt(
                                 spec.strategy, r.input_sent, shots, templates));
                           } catch (const Error& e) {
                             spdlog::warn("{}: chat failed for {}: {}", label, r.instance_id,
                                          e.what());
                             r.status = RecordStatus::BackendFailed;
                             r.timing += Clock::now() - t0;
                             return;
                           }
                           try {
                             auto parsed = prompts::parse_reply(spec.strategy, raw);
                             if (parsed.non_devanagari)
                               spdlog::warn("{}: reply for {} has no Devanagari text", label,
                                            r.instance_id);
                             r.restored = parsed.restored_english;
                             if (parsed.marathi.empty()) {
                               r.status = RecordStatus::ParseFailed;
                             } else {
                               r.hypothesis = std::move(parsed.marathi);
                             }
                           } catch (const ReplyParseError& e) {
                             spdlog::warn("{}: unparseable reply for {}: {}", label,
                                          r.instance_id, e.what());
                             r.status = RecordStatus::ParseFailed;
                           }
                           r.timing += Clock::now() - t0;
                         });
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

void PipelineSpec::validate() const {
  if (label.empty()) throw PreconditionError("pipeline label is empty");
  for (char c : label) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) throw PreconditionError("pipeline label '" + label + "' has characters outside [A-Za-z0-9._-]");
  }
  if (label == "." || label == "..") throw PreconditionError("pipeline label '" + label + "' is reserved");
  std::visit(Overloaded{
                 [&](const CascadeNative& k) {
                   if (!k.model) throw PreconditionError(label + ": restorer model not loaded");
                   if (!k.model->trained) throw PreconditionError(label + ": restorer model is untrained");
                 },
                 [&](const CascadeBackend& k) { k.restore_ep.validate(); },
                 [&](const LlmPrompting& k) {
                   if (!k.chat) throw PreconditionError(label + ": no chat model");
                   if (prompts::required_shots(k.strategy) == 0 && !k.shot_ids.empty())
                     throw PreconditionError(label + ": shot ids given for a zero-shot strategy");
                 },
                 [](const auto&) {},
             },
             kind);
  if (!std::holds_alternative<LlmPrompting>(kind) && !translator_of(kind))
    throw PreconditionError(label + ": no translator");
}

std::string_view kind_name(const PipelineKind& kind) {
  return std::visit(Overloaded{
                        [](const Baseline&) { return std::string_view("baseline"); },
                        [](const Oracle&) { return std::string_view("oracle"); },
                        [](const CascadeNative&) { return std::string_view("cascade_native"); },
                        [](const CascadeBackend&) { return std::string_view("cascade_backend"); },
                        [](const Direct&) { return std::string_view("direct"); },
                        [](const LlmPrompting&) { return std::string_view("llm"); },
                    },
                    kind);
}

bool uses_meant_input(const PipelineKind& kind) {
  if (std::holds_alternative<Oracle>(kind)) return true;
  if (auto* llm = std::get_if<LlmPrompting>(&kind))
    return llm->strategy == prompts::Strategy::OracleDirect;
  return false;
}

std::string_view status_name(RecordStatus s) {
  switch (s) {
    case RecordStatus::Ok: return "ok";
    case RecordStatus::ParseFailed: return "parse_failed";
    case RecordStatus::BackendFailed: return "backend_failed";
  }
  return "ok";
}

RecordStatus parse_status(std::string_view name) {
  if (name == "ok") return RecordStatus::Ok;
  if (name == "parse_failed") return RecordStatus::ParseFailed;
  if (name == "backend_failed") return RecordStatus::BackendFailed;
  throw ParseError("unknown record status '" + std::string(name) + "'");
}

nlohmann::ordered_json to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["instance_id"] = r.instance_id;
  j["input_sent"] = r.input_sent;
  j["restored"] = r.restored ? nlohmann::ordered_json(*r.restored) : nlohmann::ordered_json();
  j["hypothesis"] = r.hypothesis;
  j["status"] = status_name(r.status);
  j["timing"] = r.timing.count();
  return j;
}

RunRecord record_from_json(const nlohmann::json& obj) {
  try {
    RunRecord r;
    r.instance_id = obj.at("instance_id").get<std::string>();
    r.input_sent = obj.at("input_sent").get<std::string>();
    if (!obj.at("restored").is_null()) r.restored = obj.at("restored").get<std::string>();
    r.hypothesis = obj.at("hypothesis").get<std::string>();
    r.status = parse_status(obj.at("status").get<std::string>());
    r.timing = std::chrono::duration<double>(obj.at("timing").get<double>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad run record: ") + e.what());
  }
}

PipelineResult run_pipeline(const PipelineSpec& spec,
                            std::span<const corpus::BenchmarkInstance> benchmark,
                            const RunContext& ctx) {
  spec.validate();
  if (benchmark.empty()) throw PreconditionError("benchmark is empty");

  std::vector<corpus::BenchmarkInstance> eval_set(benchmark.begin(), benchmark.end());
  std::vector<prompts::ShotExample> shots;
  if (auto* llm = std::get_if<LlmPrompting>(&spec.kind)) {
    if (prompts::required_shots(llm->strategy) > 0) {
      const auto& ids = llm->shot_ids.empty() ? prompts::default_shot_ids() : llm->shot_ids;
      auto sel = prompts::select_and_exclude_shots(benchmark, ids);
      shots = std::move(sel.shots);
      eval_set = std::move(sel.eval_set);
    }
  }

  const bool meant = uses_meant_input(spec.kind);
  PipelineResult out;
  out.records.reserve(eval_set.size());
  std::map<std::string, std::string> refs;
  for (const auto& inst : eval_set) {
    RunRecord r;
    r.instance_id = inst.id;
    r.input_sent = meant ? inst.english_meant : inst.english_written;
    out.records.push_back(std::move(r));
    refs[inst.id] = inst.marathi_meant;
  }

  std::visit(Overloaded{
                 [&](const CascadeNative& k) {
                   native_restore_stage(out.records, *k.model, ctx, spec.label);
                   translate_stage(out.records, *k.translator, ctx, spec.label);
                 },
                 [&](const CascadeBackend& k) {
                   backend_restore_stage(out.records, k.restore_ep, spec.label);
                   translate_stage(out.records, *k.translator, ctx, spec.label);
                 },
                 [&](const LlmPrompting& k) { llm_stage(out.records, k, shots, spec.label); },
                 [&](const auto& k) { translate_stage(out.records, *k.translator, ctx, spec.label); },
             },
             spec.kind);

  std::vector<std::string> hyps, gold, sources;
  for (const auto& r : out.records) {
    if (r.status != RecordStatus::Ok) {
      ++out.failures;
      continue;
    }
    hyps.push_back(r.hypothesis);
    gold.push_back(refs.at(r.instance_id));
    sources.push_back(r.input_sent);
  }

  const auto total = out.records.size();
  if (out.failures * 2 > total) {
    out.failed = true;
    out.error = std::to_string(out.failures) + " of " + std::to_string(total) + " instances failed";
    spdlog::error("{}: {}", spec.label, out.error);
  } else if (out.failures > 0) {
    spdlog::warn("{}: {} of {} instances failed and are excluded from scoring", spec.label,
                 out.failures, total);
  }
  if (hyps.empty()) return out;

  metrics::ReportEndpoints eps{ctx.embed, ctx.scorer, sources};
  try {
    out.report = metrics::build_report(spec.label, hyps, gold, eps, ctx.metric_cfg);
  } catch (const Error& e) {
    out.failed = true;
    out.error = std::string("scoring failed: ") + e.what();
    spdlog::error("{}: {}", spec.label, out.error);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (pipelines.empty()) throw PreconditionError("experiment has no pipelines");
  std::set<std::string> seen;
  for (const auto& p : pipelines) {
    p.validate();
    if (!seen.insert(p.label).second)
      throw PreconditionError("duplicate pipeline label '" + p.label + "'");
  }
  if (output_dir.empty()) throw PreconditionError("output_dir is not set");
  context.metric_cfg.validate();
  if (context.embed) context.embed->validate();
  if (context.scorer) context.scorer->validate();
}

std::uint64_t config_hash(std::string_view canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ReportTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto benchmark =
      corpus::load_benchmark(cfg.benchmark_path, cfg.benchmark_format, cfg.load_options);
  if (benchmark.empty()) throw PreconditionError("benchmark is empty");

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error("cannot create output_dir " + cfg.output_dir.string() + ": " + ec.message());

  const auto started = utc_timestamp();
  ReportTable table;
  json pipelines_meta = json::array();
  for (const auto& spec : cfg.pipelines) {
    spdlog::info("running pipeline {} ({})", spec.label, kind_name(spec.kind));
    ReportRow row;
    row.system = spec.label;
    PipelineResult res;
    try {
      res = run_pipeline(spec, benchmark, cfg.context);
    } catch (const Error& e) {
      spdlog::error("{}: {}", spec.label, e.what());
      res.failed = true;
      res.error = e.what();
    }
    row.status = res.failed ? "failed" : "ok";
    row.error = res.error;
    row.metrics = res.report;
    row.failures = res.failures;
    row.total = res.records.size();

    const auto dir = cfg.output_dir / spec.label;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
    std::string lines;
    for (const auto& r : res.records) lines += to_json(r).dump() + "\n";
    write_file(dir / "records.jsonl", lines);

    json meta{{"label", spec.label}, {"kind", kind_name(spec.kind)}};
    if (auto* d = std::get_if<Direct>(&spec.kind)) meta["system_label"] = d->system_label;
    if (auto* c = std::get_if<CascadeNative>(&spec.kind)) meta["model_path"] = c->model_path.string();
    if (auto* c = std::get_if<CascadeBackend>(&spec.kind)) meta["restore_url"] = c->restore_ep.base_url;
    if (auto* l = std::get_if<LlmPrompting>(&spec.kind)) {
      meta["strategy"] = prompts::strategy_name(l->strategy);
      meta["shot_ids"] = l->shot_ids;
    }
    pipelines_meta.push_back(std::move(meta));
    table.push_back(std::move(row));
  }

  write_file(cfg.output_dir / "report.json", to_json(table).dump(2) + "\n");
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg.canonical_source)));
  json manifest{
      {"toolkit_version", std::string(kVersion)},
      {"config_hash", std::string(hash)},
      {"started_at", started},
      {"finished_at", utc_timestamp()},
      {"seed", cfg.seed},
      {"benchmark", cfg.benchmark_path.string()},
      {"n_instances", benchmark.size()},
      {"pipelines", pipelines_meta},
  };
  write_file(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return table;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw PreconditionError("unknown report format '" + std::string(name) + "'");
}

nlohmann::json to_json(const ReportTable& table) {
  json rows = json::array();
  for (const auto& r : table) {
    rows.push_back({
        {"system", r.system},
        {"status", r.status},
        {"metrics", r.metrics ? metrics::to_json(*r.metrics) : json()},
        {"failures", r.failures},
        {"total", r.total},
        {"error", r.error},
    });
  }
  return json{{"rows", rows}};
}

ReportTable report_table_from_json(const nlohmann::json& doc) {
  try {
    ReportTable table;
    for (const auto& j : doc.at("rows")) {
      ReportRow r;
      r.system = j.at("system").get<std::string>();
      r.status = j.at("status").get<std::string>();
      if (!j.at("metrics").is_null()) r.metrics = metrics::report_from_json(j.at("metrics"));
      r.failures = j.at("failures").get<std::size_t>();
      r.total = j.at("total").get<std::size_t>();
      r.error = j.value("error", "");
      table.push_back(std::move(r));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report table: ") + e.what());
  }
}

ReportTable read_report(const std::filesystem::path& dir) {
  const auto path = dir / "report.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return report_table_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_report(const ReportTable& table, ReportFormat format) {
  if (table.empty()) throw PreconditionError("report table is empty");
  if (format == ReportFormat::Json) return to_json(table).dump(2) + "\n";

  auto opt = [](const std::optional<double>& v, int decimals, const char* missing) {
    return v ? fixed(*v, decimals) : std::string(missing);
  };
  std::ostringstream out;
  if (format == ReportFormat::Markdown) {
    out << "| System | BLEU | chrF++ | chrF2++ | Cosine | Learned | N | Failures |\n";
    out << "|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : table) {
      out << "| " << r.system << (r.status == "ok" ? "" : " (failed)") << " | ";
      if (r.metrics) {
        const auto& m = *r.metrics;
        out << fixed(m.bleu, 2) << " | " << fixed(m.chrf_pp, 2) << " | " << fixed(m.chrf2_pp, 2)
            << " | " << opt(m.cosine_embed, 4, "-") << " | " << opt(m.learned_score, 4, "-")
            << " | " << m.n_instances;
      } else {
        out << "- | - | - | - | - | 0";
      }
      out << " | " << r.failures << " |\n";
    }
    return out.str();
  }

  auto csv_field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << "system,status,bleu,chrf_pp,chrf2_pp,cosine,learned,n,failures,total\n";
  for (const auto& r : table) {
    out << csv_field(r.system) << ',' << r.status << ',';
    if (r.metrics) {
      const auto& m = *r.metrics;
      out << fixed(m.bleu, 2) << ',' << fixed(m.chrf_pp, 2) << ',' << fixed(m.chrf2_pp, 2) << ','
          << opt(m.cosine_embed, 4, "") << ',' << opt(m.learned_score, 4, "") << ','
          << m.n_instances;
    } else {
      out << ",,,,,0";
    }
    out << ',' << r.failures << ',' << r.total << '\n';
  }
  return out.str();
}

void emit_report(const ReportTable& table, ReportFormat format, const std::filesystem::path& path) {
  const auto content = format_report(table, format);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  write_file(path, content);
}

// ---- configuration ----

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

const std::set<std::string> kPipelineKeys = {
    "label", "kind", "translate", "translate_mock", "lookup_file", "passthrough_on_miss",
    "model", "restore", "system_label", "strategy", "chat", "shot_ids"};

TranslatorPtr translator_from(const json& p, const fs::path& base, const std::string& label) {
  if (p.contains("translate")) {
    if (p.contains("translate_mock"))
      throw PreconditionError(label + ": give either translate or translate_mock");
    return std::make_shared<backends::HttpTranslator>(backends::endpoint_from_json(p.at("translate")));
  }
  const auto mock = p.value("translate_mock", std::string());
  const bool passthrough = p.value("passthrough_on_miss", false);
  if (mock == "identity") return std::make_shared<backends::MockTranslator>(backends::MockTranslator::identity());
  if (mock == "lookup") {
    if (!p.contains("lookup_file")) throw PreconditionError(label + ": lookup translator needs lookup_file");
    return std::make_shared<backends::MockTranslator>(backends::MockTranslator::lookup_file(
        resolve(base, p.at("lookup_file").get<std::string>()).string(), passthrough));
  }
  if (mock.empty()) throw PreconditionError(label + ": no translate endpoint");
  throw PreconditionError(label + ": unknown translate_mock '" + mock + "'");
}

PipelineSpec pipeline_from_json(const json& p, const fs::path& base) {
  if (!p.is_object()) throw PreconditionError("pipeline entries must be tables");
  PipelineSpec spec;
  spec.label = p.at("label").get<std::string>();
  for (const auto& [key, _] : p.items())
    if (!kPipelineKeys.contains(key))
      throw PreconditionError(spec.label + ": unknown pipeline key '" + key + "'");
  const auto kind = p.at("kind").get<std::string>();
  if (kind == "baseline") {
    spec.kind = Baseline{translator_from(p, base, spec.label)};
  } else if (kind == "oracle") {
    spec.kind = Oracle{translator_from(p, base, spec.label)};
  } else if (kind == "cascade_native") {
    CascadeNative k;
    k.model_path = resolve(base, p.at("model").get<std::string>());
    k.model = std::make_shared<const restore::RestorerModel>(restore::load_model(k.model_path));
    k.translator = translator_from(p, base, spec.label);
    spec.kind = std::move(k);
  } else if (kind == "cascade_backend") {
    spec.kind = CascadeBackend{backends::endpoint_from_json(p.at("restore")),
                               translator_from(p, base, spec.label)};
  } else if (kind == "direct") {
    spec.kind = Direct{translator_from(p, base, spec.label), p.value("system_label", spec.label)};
  } else if (kind == "llm") {
    LlmPrompting k;
    k.strategy = prompts::parse_strategy(p.at("strategy").get<std::string>());
    k.chat = std::make_shared<backends::HttpChatModel>(backends::endpoint_from_json(p.at("chat")));
    if (p.contains("shot_ids")) k.shot_ids = p.at("shot_ids").get<std::vector<std::string>>();
    spec.kind = std::move(k);
  } else {
    throw PreconditionError(spec.label + ": unknown pipeline kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

ExperimentConfig experiment_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  try {
    ExperimentConfig cfg;
    cfg.benchmark_path = resolve(base_dir, doc.at("benchmark").get<std::string>());
    cfg.benchmark_format = doc.contains("benchmark_format")
                               ? (doc.at("benchmark_format").get<std::string>() == "jsonl"
                                      ? corpus::BenchmarkFormat::Jsonl
                                      : corpus::BenchmarkFormat::Tsv)
                               : corpus::format_from_path(cfg.benchmark_path);
    if (doc.contains("allowed_types"))
      cfg.load_options.allowed_types = doc.at("allowed_types").get<std::vector<std::string>>();
    cfg.output_dir = resolve(base_dir, doc.at("output_dir").get<std::string>());
    cfg.seed = doc.value("seed", std::uint64_t{7});
    if (doc.contains("metrics")) cfg.context.metric_cfg = metrics::metric_config_from_json(doc.at("metrics"));
    if (doc.contains("embed")) cfg.context.embed = backends::endpoint_from_json(doc.at("embed"));
    if (doc.contains("scorer")) cfg.context.scorer = backends::endpoint_from_json(doc.at("scorer"));
    if (doc.contains("source_lang"))
      cfg.context.source_lang = backends::LanguageTag(doc.at("source_lang").get<std::string>());
    if (doc.contains("target_lang"))
      cfg.context.target_lang = backends::LanguageTag(doc.at("target_lang").get<std::string>());
    const json* list = doc.contains("pipeline") ? &doc.at("pipeline")
                       : doc.contains("pipelines") ? &doc.at("pipelines")
                                                   : nullptr;
    if (list) {
      if (!list->is_array()) throw PreconditionError("pipelines must be an array");
      for (const auto& p : *list) cfg.pipelines.push_back(pipeline_from_json(p, base_dir));
    }
    cfg.canonical_source = doc.dump();
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  const auto doc = config::load_config_file(path);
  return experiment_from_json(doc, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

}  // namespace viram::runner
