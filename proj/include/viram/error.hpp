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

#include <stdexcept>
#include <string>
#include <vector>

namespace viram {

// Base class for every error the toolkit raises. Callers that only need to
// report a failure can catch this; the subclasses exist for the cases where
// the caller reacts differently (e.g. the runner records backend failures per
// instance but aborts on configuration errors).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or text. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Data parsed fine but breaks a domain invariant. Carries the offending ids.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> ids = {})
      : Error(what), ids_(std::move(ids)) {}
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

// Text that reduces to nothing where something is required.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// A backend could not be reached after all retries. `status` is the last HTTP
// status seen, or 0 for transport-level failures.
class BackendUnavailable : public Error {
 public:
  BackendUnavailable(const std::string& what, int status)
      : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// A backend answered, but not in the agreed wire format.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, int status = 0)
      : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// A model reply did not contain the expected markers. `raw` is kept so the
// runner can persist it.
class ReplyParseError : public Error {
 public:
  ReplyParseError(const std::string& what, std::string raw)
      : Error(what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

}  // namespace viram
