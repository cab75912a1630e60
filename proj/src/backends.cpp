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

#include "viram/backends.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::backends {
namespace {

struct ParsedUrl {
  std::string host;
  int port = 80;
  std::string prefix;  // without trailing slash
};

ParsedUrl parse_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0)
    throw PreconditionError("endpoint URL must start with http:// (got '" + url + "')");
  std::string rest = url.substr(kScheme.size());
  ParsedUrl out;
  const auto slash = rest.find('/');
  if (slash != std::string::npos) {
    out.prefix = rest.substr(slash);
    rest.resize(slash);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  const auto colon = rest.rfind(':');
  if (colon != std::string::npos) {
    try {
      out.port = std::stoi(rest.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw PreconditionError("invalid port in endpoint URL '" + url + "'");
    }
    rest.resize(colon);
  }
  if (rest.empty()) throw PreconditionError("endpoint URL '" + url + "' has no host");
  out.host = rest;
  return out;
}

bool transient_status(int status) {
  return status == 429 || status == 502 || status == 503 || status == 504;
}

std::string error_message(const httplib::Result& res) {
  std::string body = res->body;
  try {
    auto j = nlohmann::json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string())
      return j["error"].get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  if (body.size() > 200) body = body.substr(0, 200) + "...";
  return body;
}

std::string auth_token(const EndpointConfig& ep) {
  if (!ep.auth_token_env) return {};
  const char* token = std::getenv(ep.auth_token_env->c_str());
  return token ? token : "";
}

// A server that echoes request headers must not leak the token into messages.
std::string redact(std::string message, const std::string& token) {
  if (token.empty()) return message;
  for (auto pos = message.find(token); pos != std::string::npos; pos = message.find(token, pos))
    message.replace(pos, token.size(), "[redacted]");
  return message;
}

std::unique_ptr<httplib::Client> make_client(const EndpointConfig& ep, const ParsedUrl& url,
                                             const std::string& token) {
  auto cli = std::make_unique<httplib::Client>(url.host, url.port);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(ep.timeout);
  cli->set_connection_timeout(us);
  cli->set_read_timeout(us);
  cli->set_write_timeout(us);
  if (!token.empty()) cli->set_bearer_token_auth(token);
  return cli;
}

nlohmann::json request_json(const EndpointConfig& ep, const std::string& route,
                            const nlohmann::json* body) {
  const ParsedUrl url = parse_url(ep.base_url);
  const std::string path = url.prefix + route;
  const std::string payload = body ? body->dump() : std::string();
  const int attempts = 1 + ep.max_retries;
  const std::string token = auth_token(ep);
  int last_status = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      const auto wait = ep.retry_backoff * std::pow(2.0, attempt - 2);
      std::this_thread::sleep_for(std::chrono::duration_cast<std::chrono::microseconds>(wait));
    }
    auto cli = make_client(ep, url, token);
    auto res = body ? cli->Post(path, payload, "application/json") : cli->Get(path);
    if (!res) {
      last_status = 0;
      last_error = httplib::to_string(res.error());
      spdlog::warn("{} {}{} attempt {}/{} failed: {}", body ? "POST" : "GET", ep.base_url, route,
                   attempt, attempts, last_error);
      continue;
    }
    const int status = res->status;
    if (status >= 200 && status < 300) {
      spdlog::debug("{}{} -> {} (attempt {})", ep.base_url, route, status, attempt);
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::parse_error&) {
        throw ProtocolError(route + ": response is not valid JSON", status);
      }
    }
    if (transient_status(status)) {
      last_status = status;
      last_error = "HTTP " + std::to_string(status) + ": " + redact(error_message(res), token);
      spdlog::warn("{}{} attempt {}/{} got HTTP {}", ep.base_url, route, attempt, attempts, status);
      continue;
    }
    throw ProtocolError(
        route + ": HTTP " + std::to_string(status) + ": " + redact(error_message(res), token),
        status);
  }
  throw BackendUnavailable(ep.base_url + route + " unavailable after " + std::to_string(attempts) +
                               " attempt(s): " + last_error,
                           last_status);
}

const nlohmann::json& field(const nlohmann::json& obj, const char* name, const std::string& route) {
  if (!obj.is_object() || !obj.contains(name))
    throw ProtocolError(route + ": response lacks '" + name + "'");
  return obj[name];
}

std::vector<std::string> string_array(const nlohmann::json& arr, std::size_t expected,
                                      const std::string& route) {
  if (!arr.is_array()) throw ProtocolError(route + ": expected an array");
  if (arr.size() != expected)
    throw ProtocolError(route + ": expected " + std::to_string(expected) + " results, got " +
                        std::to_string(arr.size()));
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_string()) throw ProtocolError(route + ": expected string elements");
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Splits [0, n) into batch_size chunks, runs them concurrently and
// concatenates the per-batch results in input order.
template <typename T>
std::vector<T> batched(const EndpointConfig& ep, std::size_t n,
                       const std::function<std::vector<T>(std::size_t, std::size_t)>& run) {
  ep.validate();
  const std::size_t bs = static_cast<std::size_t>(ep.batch_size);
  const std::size_t n_batches = (n + bs - 1) / bs;
  std::vector<std::vector<T>> parts(n_batches);
  parallel_for(n_batches, ep.max_parallel, [&](std::size_t b) {
    const std::size_t begin = b * bs;
    parts[b] = run(begin, std::min(n, begin + bs));
  });
  std::vector<T> out;
  out.reserve(n);
  for (auto& p : parts)
    for (auto& v : p) out.push_back(std::move(v));
  return out;
}

nlohmann::json slice(const std::vector<std::string>& v, std::size_t b, std::size_t e) {
  return nlohmann::json(std::vector<std::string>(v.begin() + static_cast<std::ptrdiff_t>(b),
                                                 v.begin() + static_cast<std::ptrdiff_t>(e)));
}

}  // namespace

void EndpointConfig::validate() const {
  if (base_url.empty()) throw PreconditionError("endpoint base_url is empty");
  if (timeout.count() <= 0) throw PreconditionError("endpoint timeout must be positive");
  if (max_retries < 0) throw PreconditionError("max_retries must be >= 0");
  if (retry_backoff.count() < 0) throw PreconditionError("retry_backoff must be >= 0");
  if (max_parallel < 1) throw PreconditionError("max_parallel must be >= 1");
  if (batch_size < 1) throw PreconditionError("batch_size must be >= 1");
  parse_url(base_url);
}

EndpointConfig endpoint_from_json(const nlohmann::json& obj) {
  EndpointConfig ep;
  if (obj.is_string()) {
    ep.base_url = obj.get<std::string>();
  } else {
    if (!obj.is_object()) throw PreconditionError("endpoint must be a URL string or a table");
    if (obj.contains("url")) ep.base_url = obj["url"].get<std::string>();
    if (obj.contains("base_url")) ep.base_url = obj["base_url"].get<std::string>();
    if (obj.contains("timeout")) ep.timeout = Seconds(obj["timeout"].get<double>());
    if (obj.contains("max_retries")) ep.max_retries = obj["max_retries"].get<int>();
    if (obj.contains("retry_backoff")) ep.retry_backoff = Seconds(obj["retry_backoff"].get<double>());
    if (obj.contains("auth_token_env")) ep.auth_token_env = obj["auth_token_env"].get<std::string>();
    if (obj.contains("max_parallel")) ep.max_parallel = obj["max_parallel"].get<int>();
    if (obj.contains("batch_size")) ep.batch_size = obj["batch_size"].get<int>();
  }
  ep.validate();
  return ep;
}

LanguageTag::LanguageTag(std::string code) : code_(std::move(code)) {
  const auto us = code_.find('_');
  auto lower = [](unsigned char c) { return std::islower(c) != 0; };
  const bool ok = us != std::string::npos && us >= 2 && us <= 3 &&
                  std::all_of(code_.begin(), code_.begin() + static_cast<std::ptrdiff_t>(us), lower) &&
                  code_.size() - us - 1 == 4 &&
                  std::isupper(static_cast<unsigned char>(code_[us + 1])) &&
                  std::all_of(code_.begin() + static_cast<std::ptrdiff_t>(us) + 2, code_.end(),
                              lower);
  if (!ok)
    throw PreconditionError("language tag '" + code_ + "' must look like eng_Latn");
}

LanguageTag english() { return LanguageTag("eng_Latn"); }
LanguageTag marathi() { return LanguageTag("mar_Deva"); }

void parallel_for(std::size_t count, int max_parallel,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, max_parallel)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          if (failed.load()) return;
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!first_error) first_error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> translate_batch(const EndpointConfig& ep,
                                         const std::vector<std::string>& sources,
                                         const LanguageTag& src, const LanguageTag& tgt) {
  if (sources.empty()) throw PreconditionError("translate_batch: no sources");
  return batched<std::string>(ep, sources.size(), [&](std::size_t b, std::size_t e) {
    nlohmann::json body = {{"source_lang", src.code()},
                           {"target_lang", tgt.code()},
                           {"texts", slice(sources, b, e)}};
    auto res = request_json(ep, "/translate", &body);
    return string_array(field(res, "translations", "/translate"), e - b, "/translate");
  });
}

std::vector<std::string> restore_via_backend(const EndpointConfig& ep,
                                             const std::vector<std::string>& texts) {
  if (texts.empty()) throw PreconditionError("restore_via_backend: no texts");
  for (std::size_t i = 0; i < texts.size(); ++i)
    if (text::trim(texts[i]).empty())
      throw PreconditionError("restore_via_backend: text " + std::to_string(i) + " is empty");
  return batched<std::string>(ep, texts.size(), [&](std::size_t b, std::size_t e) {
    nlohmann::json body = {{"texts", slice(texts, b, e)}};
    auto res = request_json(ep, "/restore", &body);
    return string_array(field(res, "texts", "/restore"), e - b, "/restore");
  });
}

std::vector<std::vector<double>> embed(const EndpointConfig& ep,
                                       const std::vector<std::string>& texts) {
  if (texts.empty()) throw PreconditionError("embed: no texts");
  auto vectors = batched<std::vector<double>>(ep, texts.size(), [&](std::size_t b, std::size_t e) {
    nlohmann::json body = {{"texts", slice(texts, b, e)}};
    auto res = request_json(ep, "/embed", &body);
    const auto& arr = field(res, "vectors", "/embed");
    if (!arr.is_array() || arr.size() != e - b)
      throw ProtocolError("/embed: expected " + std::to_string(e - b) + " vectors");
    std::vector<std::vector<double>> out;
    for (const auto& v : arr) {
      if (!v.is_array()) throw ProtocolError("/embed: vector is not an array");
      std::vector<double> vec;
      vec.reserve(v.size());
      for (const auto& x : v) {
        if (!x.is_number()) throw ProtocolError("/embed: non-numeric vector element");
        vec.push_back(x.get<double>());
      }
      out.push_back(std::move(vec));
    }
    return out;
  });
  for (std::size_t i = 1; i < vectors.size(); ++i)
    if (vectors[i].size() != vectors[0].size())
      throw ProtocolError("/embed: vector " + std::to_string(i) + " has dimension " +
                          std::to_string(vectors[i].size()) + ", expected " +
                          std::to_string(vectors[0].size()));
  return vectors;
}

std::vector<double> score_pairs(const EndpointConfig& ep, const std::vector<std::string>& sources,
                                const std::vector<std::string>& hypotheses,
                                const std::vector<std::string>& references) {
  if (sources.size() != hypotheses.size() || hypotheses.size() != references.size())
    throw PreconditionError("score_pairs: sources, hypotheses and references differ in length");
  if (sources.empty()) throw PreconditionError("score_pairs: nothing to score");
  return batched<double>(ep, sources.size(), [&](std::size_t b, std::size_t e) {
    nlohmann::json body = {{"sources", slice(sources, b, e)},
                           {"hypotheses", slice(hypotheses, b, e)},
                           {"references", slice(references, b, e)}};
    auto res = request_json(ep, "/score", &body);
    const auto& arr = field(res, "scores", "/score");
    if (!arr.is_array() || arr.size() != e - b)
      throw ProtocolError("/score: expected " + std::to_string(e - b) + " scores");
    std::vector<double> out;
    for (const auto& x : arr) {
      if (!x.is_number()) throw ProtocolError("/score: non-numeric score");
      out.push_back(x.get<double>());
    }
    return out;
  });
}

std::string chat_complete(const EndpointConfig& ep, const std::string& prompt) {
  if (prompt.empty()) throw PreconditionError("chat_complete: empty prompt");
  ep.validate();
  nlohmann::json body = {{"prompt", prompt}};
  auto res = request_json(ep, "/chat", &body);
  const auto& t = field(res, "text", "/chat");
  if (!t.is_string()) throw ProtocolError("/chat: 'text' is not a string");
  return t.get<std::string>();
}

bool health(const EndpointConfig& ep) {
  EndpointConfig once = ep;
  once.max_retries = 0;
  try {
    auto res = request_json(once, "/health", nullptr);
    return res.is_object() && res.value("status", "") == "ok";
  } catch (const Error&) {
    return false;
  }
}

HttpTranslator::HttpTranslator(EndpointConfig ep) : ep_(std::move(ep)) { ep_.validate(); }

std::vector<std::string> HttpTranslator::translate(const std::vector<std::string>& sources,
                                                   const LanguageTag& src,
                                                   const LanguageTag& tgt) const {
  return translate_batch(ep_, sources, src, tgt);
}

MockTranslator MockTranslator::identity() { return MockTranslator(Mode::Identity, {}, false); }

MockTranslator MockTranslator::lookup(std::map<std::string, std::string> table,
                                      bool passthrough_on_miss) {
  return MockTranslator(Mode::Lookup, std::move(table), passthrough_on_miss);
}

MockTranslator MockTranslator::lookup_file(const std::string& path, bool passthrough_on_miss) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lookup table " + path);
  std::map<std::string, std::string> table;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("lookup row lacks a tab", ln);
    table[text::nfc(line.substr(0, tab))] = text::nfc(line.substr(tab + 1));
  }
  return lookup(std::move(table), passthrough_on_miss);
}

std::vector<std::string> MockTranslator::translate(const std::vector<std::string>& sources,
                                                   const LanguageTag&, const LanguageTag&) const {
  if (sources.empty()) throw PreconditionError("translate: no sources");
  if (mode_ == Mode::Identity) return sources;
  std::vector<std::string> out;
  out.reserve(sources.size());
  for (const auto& s : sources) {
    auto it = table_.find(s);
    if (it != table_.end())
      out.push_back(it->second);
    else if (passthrough_)
      out.push_back(s);
    else
      throw Error("lookup translator has no entry for '" + s + "'");
  }
  return out;
}

HttpChatModel::HttpChatModel(EndpointConfig ep) : ep_(std::move(ep)) { ep_.validate(); }

std::string HttpChatModel::complete(const std::string& prompt) const {
  return chat_complete(ep_, prompt);
}

}  // namespace viram::backends
