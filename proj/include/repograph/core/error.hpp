// Copyright 2026 The Repograph Authors
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

namespace repograph {

// Base for every error raised by the library. Subclasses let callers (the
// CLI and the HTTP service in particular) map failures onto exit codes and
// status codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mutation would violate the graph schema (node field rules, edge
// endpoint kinds, the Contains forest, a second Root, ...).
class SchemaError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public Error {
 public:
  using Error::Error;
};

// Malformed input document. `location` is a JSON pointer or line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location)
      : Error(what + " (at " + location + ")"), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// Revision does not resolve, is not a descendant, or does not match the
// graph's pinned revision.
class RevisionError : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace repograph
