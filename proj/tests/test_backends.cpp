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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <mutex>
#include <set>

#include <gtest/gtest.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "fixtures.hpp"
#include "stub_server.hpp"
#include "viram/backends.hpp"
#include "viram/error.hpp"

namespace viram::backends {
namespace {

using testing::StubServer;
using Strings = std::vector<std::string>;

EndpointConfig endpoint(const StubServer& stub, int batch = 16, int parallel = 1) {
  EndpointConfig ep;
  ep.base_url = stub.url();
  ep.batch_size = batch;
  ep.max_parallel = parallel;
  ep.retry_backoff = Seconds(0.001);
  ep.timeout = Seconds(5);
  return ep;
}

Strings numbered(std::size_t n) {
  Strings out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("sentence " + std::to_string(i));
  return out;
}

TEST(Backends, TranslatePreservesOrderAcrossBatchesAndThreads) {
  for (int batch : {1, 7, 16}) {
    for (int parallel : {1, 4}) {
      StubServer stub;
      stub.set_delay(std::chrono::milliseconds(2));
      const auto src = numbered(37);
      const auto out = translate_batch(endpoint(stub, batch, parallel), src, english(), marathi());
      ASSERT_EQ(out.size(), src.size());
      for (std::size_t i = 0; i < src.size(); ++i) EXPECT_EQ(out[i], "mr:" + src[i]);
      for (auto b : stub.batch_sizes()) EXPECT_LE(b, static_cast<std::size_t>(batch));
      EXPECT_EQ(stub.batch_sizes().size(), (37 + batch - 1) / batch);
      EXPECT_LE(stub.max_in_flight(), parallel);
    }
  }
}

TEST(Backends, OtherRoutes) {
  StubServer stub;
  stub.restore_fn = [](const std::string& s) { return s + "."; };
  const auto ep = endpoint(stub, 2, 2);
  EXPECT_EQ(restore_via_backend(ep, {"a", "b", "c"}), (Strings{"a.", "b.", "c."}));
  const auto vecs = embed(ep, {"ab", "abc"});
  ASSERT_EQ(vecs.size(), 2u);
  EXPECT_EQ(vecs[1][0], 3.0);
  EXPECT_EQ(score_pairs(ep, {"s", "t"}, {"x", "y"}, {"x", "z"}), (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(chat_complete(ep, "hi"), "Marathi Translation (Devanagari Script): नमस्कार");
  EXPECT_TRUE(health(ep));
}

TEST(Backends, ContractViolations) {
  StubServer stub;
  const auto ep = endpoint(stub);
  EXPECT_THROW(restore_via_backend(ep, {"a", ""}), PreconditionError);
  EXPECT_THROW(score_pairs(ep, {"a"}, {"b", "c"}, {"d"}), PreconditionError);
  EXPECT_THROW(translate_batch(ep, {}, english(), marathi()), PreconditionError);
  stub.embed_mismatch = true;
  EXPECT_THROW(embed(ep, {"a", "b"}), ProtocolError);
}

TEST(Backends, RetriesAreBounded) {
  StubServer stub;
  auto ep = endpoint(stub);
  ep.max_retries = 2;
  stub.fail_next(2, 503);
  EXPECT_EQ(translate_batch(ep, {"x"}, english(), marathi()), (Strings{"mr:x"}));
  EXPECT_EQ(stub.requests(), 3);

  StubServer down;
  auto ep2 = endpoint(down);
  ep2.max_retries = 3;
  down.fail_always(503, "overloaded");
  try {
    translate_batch(ep2, {"x"}, english(), marathi());
    FAIL();
  } catch (const BackendUnavailable& e) {
    EXPECT_EQ(e.status(), 503);
  }
  EXPECT_EQ(down.requests(), 4);
}

TEST(Backends, NonRetryableErrorSurfacesServerMessage) {
  StubServer stub;
  stub.fail_always(400, "texts must be strings");
  try {
    translate_batch(endpoint(stub), {"x"}, english(), marathi());
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.status(), 400);
    EXPECT_NE(std::string(e.what()).find("texts must be strings"), std::string::npos);
  }
  EXPECT_EQ(stub.requests(), 1);
}

TEST(Backends, UnreachableHostIsUnavailable) {
  EndpointConfig ep;
  ep.base_url = "http://127.0.0.1:1";
  ep.max_retries = 1;
  ep.retry_backoff = Seconds(0.001);
  ep.timeout = Seconds(1);
  EXPECT_THROW(translate_batch(ep, {"x"}, english(), marathi()), BackendUnavailable);
  EXPECT_FALSE(health(ep));
}

TEST(Backends, TokenSentButNeverLogged) {
  StubServer stub;
  const std::string token = "sk-test-7f3a9c0e51";
  ::setenv("VIRAM_TEST_TOKEN", token.c_str(), 1);
  auto ep = endpoint(stub);
  ep.auth_token_env = "VIRAM_TEST_TOKEN";
  ep.max_retries = 1;

  std::ostringstream captured;
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(captured);
  auto logger = std::make_shared<spdlog::logger>("capture", sink);
  logger->set_level(spdlog::level::trace);
  auto previous = spdlog::default_logger();
  spdlog::set_default_logger(logger);

  stub.fail_next(1, 503);
  translate_batch(ep, {"x"}, english(), marathi());
  stub.fail_always(401, "bad token " + token);
  std::string message;
  try {
    translate_batch(ep, {"x"}, english(), marathi());
  } catch (const ProtocolError& e) {
    message = e.what();
  }
  spdlog::set_default_logger(previous);
  ::unsetenv("VIRAM_TEST_TOKEN");

  for (const auto& h : stub.auth_headers()) EXPECT_EQ(h, "Bearer " + token);
  EXPECT_FALSE(captured.str().empty());
  EXPECT_EQ(captured.str().find(token), std::string::npos);
  EXPECT_FALSE(message.empty());
  EXPECT_EQ(message.find(token), std::string::npos) << message;
}

TEST(Backends, EndpointConfigParsing) {
  auto ep = endpoint_from_json("http://localhost:9000/api");
  EXPECT_EQ(ep.base_url, "http://localhost:9000/api");
  ep = endpoint_from_json({{"url", "http://h:1"}, {"batch_size", 4}, {"max_parallel", 2}});
  EXPECT_EQ(ep.batch_size, 4);
  EXPECT_THROW(endpoint_from_json({{"url", "http://h:1"}, {"batch_size", 0}}), PreconditionError);
  EXPECT_THROW(endpoint_from_json("https://secure.example"), PreconditionError);
  EXPECT_THROW(endpoint_from_json(""), PreconditionError);
}

TEST(Backends, PathPrefixIsKept) {
  StubServer stub;
  auto ep = endpoint(stub);
  ep.base_url = stub.url() + "/v1";
  EXPECT_THROW(translate_batch(ep, {"x"}, english(), marathi()), ProtocolError);
  EXPECT_EQ(stub.paths().back(), "/v1/translate");
}

TEST(Backends, LanguageTags) {
  EXPECT_EQ(english().code(), "eng_Latn");
  EXPECT_NO_THROW(LanguageTag("mar_Deva"));
  EXPECT_THROW(LanguageTag("english"), PreconditionError);
  EXPECT_THROW(LanguageTag("ENG_Latn"), PreconditionError);
  EXPECT_THROW(LanguageTag("eng_latn"), PreconditionError);
}

TEST(Backends, ParallelForRethrowsAndCoversAll) {
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 5) throw Error("boom");
                            }),
               Error);
}

TEST(Mock, IdentityAndLookup) {
  const auto id = MockTranslator::identity();
  EXPECT_EQ(id.translate({"a", "b"}, english(), marathi()), (Strings{"a", "b"}));
  const auto strict = MockTranslator::lookup({{"a", "अ"}});
  EXPECT_EQ(strict.translate({"a"}, english(), marathi()), (Strings{"अ"}));
  EXPECT_THROW(strict.translate({"b"}, english(), marathi()), Error);
  const auto loose = MockTranslator::lookup({{"a", "अ"}}, true);
  EXPECT_EQ(loose.translate({"a", "b"}, english(), marathi()), (Strings{"अ", "b"}));
}

TEST(Mock, LookupFile) {
  const auto dir = testing::scratch_dir("lookup");
  std::ofstream(dir / "t.tsv") << "Hello, world.\tनमस्कार, जग.\n";
  const auto m = MockTranslator::lookup_file((dir / "t.tsv").string());
  EXPECT_EQ(m.translate({"Hello, world."}, english(), marathi()), (Strings{"नमस्कार, जग."}));
}

TEST(Chat, HttpAndScripted) {
  StubServer stub;
  stub.chat_fn = [](const std::string& p) { return "echo:" + p; };
  HttpChatModel http(endpoint(stub, 16, 3));
  EXPECT_EQ(http.complete("hello"), "echo:hello");
  EXPECT_EQ(http.max_parallel(), 3);
  ScriptedChatModel scripted([](const std::string& p) { return p + "!"; });
  EXPECT_EQ(scripted.complete("x"), "x!");
}

}  // namespace
}  // namespace viram::backends
