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

#include "viram/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "viram/error.hpp"
#include "viram/text.hpp"

namespace viram::config {
namespace {

using nlohmann::json;

class TomlReader {
 public:
  explicit TomlReader(std::string_view src) : src_(src) {}

  json run() {
    json root = json::object();
    json* current = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        const bool array = peek(1) == '[';
        pos_ += array ? 2 : 1;
        skip_inline_ws();
        auto path = read_key_path();
        skip_inline_ws();
        expect(']');
        if (array) expect(']');
        current = array ? &open_array_table(root, path) : &open_table(root, path);
      } else {
        auto path = read_key_path();
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        assign(*current, path, read_value());
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_ws() {
    while (peek() == ' ' || peek() == '\t') ++pos_;
  }
  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }
  void newline() {
    if (peek() == '\r') ++pos_;
    if (peek() != '\n') fail("expected end of line");
    ++pos_;
    ++line_;
  }
  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_ws();
      skip_comment();
      if (eof()) return;
      if (peek() == '\n' || peek() == '\r') {
        newline();
        continue;
      }
      return;
    }
  }
  // Whitespace, comments and newlines, as allowed inside arrays.
  void skip_any_ws() {
    while (!eof()) {
      skip_inline_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        newline();
      } else {
        return;
      }
    }
  }
  void end_of_line() {
    skip_inline_ws();
    skip_comment();
    if (!eof()) newline();
  }

  static bool bare_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  }

  std::string read_key() {
    if (peek() == '"') return read_basic_string();
    if (peek() == '\'') return read_literal_string();
    const auto start = pos_;
    while (bare_char(peek())) ++pos_;
    if (pos_ == start) fail("expected a key");
    return std::string(src_.substr(start, pos_ - start));
  }

  std::vector<std::string> read_key_path() {
    std::vector<std::string> path{read_key()};
    while (true) {
      skip_inline_ws();
      if (peek() != '.') break;
      ++pos_;
      skip_inline_ws();
      path.push_back(read_key());
    }
    return path;
  }

  void append_hex(std::string& out, int digits) {
    std::uint32_t cp = 0;
    const auto* first = src_.data() + pos_;
    if (pos_ + digits > src_.size()) fail("truncated unicode escape");
    auto [ptr, ec] = std::from_chars(first, first + digits, cp, 16);
    if (ec != std::errc{} || ptr != first + digits) fail("bad unicode escape");
    pos_ += digits;
    out += text::to_utf8(static_cast<char32_t>(cp));
  }

  std::string read_basic_string() {
    expect('"');
    if (peek() == '"' && peek(1) == '"') fail("multi-line strings are not supported");
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      char e = src_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'u': append_hex(out, 4); break;
        case 'U': append_hex(out, 8); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    return out;
  }

  std::string read_literal_string() {
    expect('\'');
    if (peek() == '\'' && peek(1) == '\'') fail("multi-line strings are not supported");
    const auto start = pos_;
    while (peek() != '\'') {
      if (eof() || peek() == '\n') fail("unterminated string");
      ++pos_;
    }
    std::string out(src_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  json read_number_or_bool() {
    const auto start = pos_;
    while (!eof() && (bare_char(peek()) || peek() == '.' || peek() == '+')) ++pos_;
    std::string tok(src_.substr(start, pos_ - start));
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.empty()) fail("expected a value");
    std::string digits;
    for (char c : tok)
      if (c != '_') digits += c;
    const bool is_float = digits.find_first_of(".eE") != std::string::npos &&
                          digits.rfind("0x", 0) != 0;
    const char* b = digits.data();
    const char* e = b + digits.size();
    if (*b == '+') ++b;
    if (is_float) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc{} || ptr != e) fail("bad number '" + tok + "'");
      return v;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) fail("unsupported value '" + tok + "'");
    return v;
  }

  json read_value() {
    switch (peek()) {
      case '"': return read_basic_string();
      case '\'': return read_literal_string();
      case '[': {
        ++pos_;
        json arr = json::array();
        while (true) {
          skip_any_ws();
          if (peek() == ']') break;
          arr.push_back(read_value());
          skip_any_ws();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          if (peek() != ']') fail("expected ',' or ']' in array");
        }
        ++pos_;
        return arr;
      }
      case '{': {
        ++pos_;
        json tbl = json::object();
        skip_inline_ws();
        if (peek() == '}') {
          ++pos_;
          return tbl;
        }
        while (true) {
          skip_inline_ws();
          auto path = read_key_path();
          skip_inline_ws();
          expect('=');
          skip_inline_ws();
          assign(tbl, path, read_value());
          skip_inline_ws();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          expect('}');
          return tbl;
        }
      }
      default: return read_number_or_bool();
    }
  }

  // Walks a table path; intermediate arrays of tables resolve to their last element.
  json& descend(json& node, const std::string& key) {
    if (!node.contains(key)) node[key] = json::object();
    json& child = node[key];
    if (child.is_array() && !child.empty() && child.back().is_object()) return child.back();
    if (!child.is_object()) fail("key '" + key + "' is not a table");
    return child;
  }

  json& open_table(json& root, const std::vector<std::string>& path) {
    json* node = &root;
    for (const auto& k : path) node = &descend(*node, k);
    return *node;
  }

  json& open_array_table(json& root, const std::vector<std::string>& path) {
    json* node = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &descend(*node, path[i]);
    json& arr = (*node)[path.back()];
    if (arr.is_null()) arr = json::array();
    if (!arr.is_array()) fail("key '" + path.back() + "' is not an array of tables");
    arr.push_back(json::object());
    return arr.back();
  }

  void assign(json& table, const std::vector<std::string>& path, json value) {
    json* node = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &descend(*node, path[i]);
    if (node->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*node)[path.back()] = std::move(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

nlohmann::json parse_toml(std::string_view text) { return TomlReader(text).run(); }

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") {
    try {
      return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what(), 0);
    }
  }
  try {
    return parse_toml(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace viram::config
