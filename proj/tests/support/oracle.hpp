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

// Brute-force reference scorers used to cross-check the metrics module. They
// share no code with it: tokens come from plain whitespace splitting and every
// n-gram count is a linear scan.

#include <string>
#include <vector>

namespace viram::testing {

double oracle_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   int max_order = 4);

double oracle_chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   double beta, int char_order = 6, int word_order = 2);

}  // namespace viram::testing
