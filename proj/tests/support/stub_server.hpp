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

// In-process HTTP server speaking the backend wire protocol, with knobs for
// injecting failures and recording what clients sent.

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

namespace viram::testing {

class StubServer {
 public:
  StubServer();
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  // Answer the next `n` requests with `status` before behaving normally.
  void fail_next(int n, int status = 503);
  // Answer every request with `status` and an {"error": ...} body.
  void fail_always(int status, std::string message);
  void set_delay(std::chrono::milliseconds d) { delay_ = d; }

  std::function<std::string(const std::string&)> translate_fn = [](const std::string& s) {
    return "mr:" + s;
  };
  std::function<std::string(const std::string&)> restore_fn = [](const std::string& s) {
    return s;
  };
  std::function<std::string(const std::string&)> chat_fn = [](const std::string&) {
    return std::string("Marathi Translation (Devanagari Script): नमस्कार");
  };
  // Length of each /embed vector. With embed_mismatch every vector after the
  // first gets one extra entry.
  int embed_dim = 3;
  bool embed_mismatch = false;

  int requests() const { return requests_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }
  std::vector<std::size_t> batch_sizes() const;
  std::vector<std::string> auth_headers() const;
  std::vector<std::string> paths() const;

 private:
  bool gate(const httplib::Request& req, httplib::Response& res);
  void enter();
  void leave();

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;

  std::atomic<int> requests_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  std::atomic<int> fail_remaining_{0};
  std::atomic<int> fail_status_{503};
  int always_status_ = 0;
  std::string always_message_;
  std::chrono::milliseconds delay_{0};

  mutable std::mutex mu_;
  std::vector<std::size_t> batch_sizes_;
  std::vector<std::string> auth_headers_;
  std::vector<std::string> paths_;
};

}  // namespace viram::testing
