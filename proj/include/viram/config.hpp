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

// Reader for experiment configuration files. TOML files are parsed with a
// small built-in reader covering the subset the configs use: tables, arrays
// of tables, dotted keys, strings, integers, floats, booleans, arrays and
// inline tables. Dates and multi-line strings are rejected.

#include <filesystem>
#include <string_view>

#include <json.hpp>

namespace viram::config {

nlohmann::json parse_toml(std::string_view text);

// Dispatches on extension: .json is parsed as JSON, anything else as TOML.
nlohmann::json load_config_file(const std::filesystem::path& path);

}  // namespace viram::config
