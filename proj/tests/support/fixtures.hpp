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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "viram/corpus.hpp"
#include "viram/restorer.hpp"

namespace viram::testing {

std::filesystem::path data_dir();
std::filesystem::path golden_dir();

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

// Punctuated sentences following two rules: a comma before every "but" and a
// period at the end. Nothing else carries punctuation.
std::vector<std::string> rule_corpus(std::size_t count, std::uint64_t seed);

// Hand-built restorer that encodes exactly those two rules.
restore::RestorerModel rule_model();

// Benchmark whose written side is the meant side with all punctuation
// removed, meant sentences drawn from rule_corpus.
std::vector<corpus::BenchmarkInstance> rule_benchmark(std::size_t count, std::uint64_t seed);

}  // namespace viram::testing
