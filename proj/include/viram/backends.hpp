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

// Clients for the JSON-over-HTTP model services (translate, restore, embed,
// score, chat) and in-process mocks with the same interfaces.
//
// Wire protocol, all UTF-8 JSON:
//   POST /translate {"source_lang", "target_lang", "texts": [...]} -> {"translations": [...]}
//   POST /restore   {"texts": [...]}                              -> {"texts": [...]}
//   POST /embed     {"texts": [...]}                              -> {"vectors": [[...]]}
//   POST /score     {"sources", "hypotheses", "references"}       -> {"scores": [...]}
//   POST /chat      {"prompt": "..."}                             -> {"text": "..."}
//   GET  /health                                                  -> {"status": "ok"}
// Errors are non-2xx responses with {"error": "..."}.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace viram::backends {

using Seconds = std::chrono::duration<double>;

struct EndpointConfig {
  std::string base_url;
  Seconds timeout{30.0};
  int max_retries = 2;
  Seconds retry_backoff{0.5};
  // Name of the environment variable holding a bearer token, read per call.
  std::optional<std::string> auth_token_env;
  int max_parallel = 4;
  int batch_size = 16;

  void validate() const;
};

// Reads endpoint fields from a JSON object ("url" or "base_url", "timeout",
// "max_retries", "retry_backoff", "auth_token_env", "max_parallel",
// "batch_size"); absent fields keep their defaults.
EndpointConfig endpoint_from_json(const nlohmann::json& obj);

// FLORES-style code such as "eng_Latn".
class LanguageTag {
 public:
  explicit LanguageTag(std::string code);
  const std::string& code() const { return code_; }
  bool operator==(const LanguageTag&) const = default;

 private:
  std::string code_;
};

LanguageTag english();
LanguageTag marathi();

std::vector<std::string> translate_batch(const EndpointConfig& ep,
                                         const std::vector<std::string>& sources,
                                         const LanguageTag& src, const LanguageTag& tgt);

std::vector<std::string> restore_via_backend(const EndpointConfig& ep,
                                             const std::vector<std::string>& texts);

std::vector<std::vector<double>> embed(const EndpointConfig& ep,
                                       const std::vector<std::string>& texts);

std::vector<double> score_pairs(const EndpointConfig& ep, const std::vector<std::string>& sources,
                                const std::vector<std::string>& hypotheses,
                                const std::vector<std::string>& references);

std::string chat_complete(const EndpointConfig& ep, const std::string& prompt);

// True when GET /health answers {"status": "ok"}.
bool health(const EndpointConfig& ep);

// Runs `task(i)` for i in [0, count) on at most `max_parallel` threads. The
// first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, int max_parallel, const std::function<void(std::size_t)>& task);

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::vector<std::string> translate(const std::vector<std::string>& sources,
                                             const LanguageTag& src,
                                             const LanguageTag& tgt) const = 0;
};

class HttpTranslator final : public Translator {
 public:
  explicit HttpTranslator(EndpointConfig ep);
  std::vector<std::string> translate(const std::vector<std::string>& sources,
                                     const LanguageTag& src, const LanguageTag& tgt) const override;
  const EndpointConfig& endpoint() const { return ep_; }

 private:
  EndpointConfig ep_;
};

class MockTranslator final : public Translator {
 public:
  enum class Mode { Identity, Lookup };

  static MockTranslator identity();
  // Unmapped sources raise PreconditionError unless passthrough_on_miss.
  static MockTranslator lookup(std::map<std::string, std::string> table,
                               bool passthrough_on_miss = false);
  // Two-column TSV: source<TAB>target.
  static MockTranslator lookup_file(const std::string& path, bool passthrough_on_miss = false);

  std::vector<std::string> translate(const std::vector<std::string>& sources,
                                     const LanguageTag& src, const LanguageTag& tgt) const override;

  Mode mode() const { return mode_; }

 private:
  MockTranslator(Mode mode, std::map<std::string, std::string> table, bool passthrough)
      : mode_(mode), table_(std::move(table)), passthrough_(passthrough) {}

  Mode mode_;
  std::map<std::string, std::string> table_;
  bool passthrough_;
};

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual std::string complete(const std::string& prompt) const = 0;
  // Requests in flight at once when a caller fans out many prompts.
  virtual int max_parallel() const { return 1; }
};

class HttpChatModel final : public ChatModel {
 public:
  explicit HttpChatModel(EndpointConfig ep);
  std::string complete(const std::string& prompt) const override;
  int max_parallel() const override { return ep_.max_parallel; }

 private:
  EndpointConfig ep_;
};

// Answers with a caller-supplied function; must be thread-safe.
class ScriptedChatModel final : public ChatModel {
 public:
  explicit ScriptedChatModel(std::function<std::string(const std::string&)> reply)
      : reply_(std::move(reply)) {}
  std::string complete(const std::string& prompt) const override { return reply_(prompt); }

 private:
  std::function<std::string(const std::string&)> reply_;
};

}  // namespace viram::backends
