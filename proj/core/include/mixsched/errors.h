// Copyright 2026 The mixsched Authors
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

#ifndef MIXSCHED_ERRORS_H_
#define MIXSCHED_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixsched {

// Malformed interference graph (self-conflict or index out of range).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exact scheduler or the exact expectation engine refused an instance
// that is too large to enumerate.
class EnumerationCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A traffic, channel, utility or link parameter violates its invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Schema or invariant violation in a configuration document. `path` names
// the offending field, e.g. "links[3].arrivals.mean".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Raised by the offline solver when a deficit multiplier diverges.
class QosInfeasibleError : public std::runtime_error {
 public:
  QosInfeasibleError(std::size_t link, const std::string& message)
      : std::runtime_error(message), link_(link) {}

  std::size_t link() const { return link_; }

 private:
  std::size_t link_;
};

}  // namespace mixsched

#endif  // MIXSCHED_ERRORS_H_
