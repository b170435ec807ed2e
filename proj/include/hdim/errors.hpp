// Copyright 2026 The hdim Authors
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

#ifndef HDIM_ERRORS_HPP
#define HDIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdim {

// Values double as process exit codes of the command-line tool.
enum class ErrorKind {
  kConfig = 2,
  kCapacity = 3,
  kInfeasibleSelection = 4,
  kInconsistency = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Malformed input: bad flags, unparsable cycle notation, invalid specs.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorKind::kCapacity, what) {}
};

/// Raised when a computed quantity contradicts an identity that must hold,
/// e.g. e > m~ in a subtraction or m~_n < n.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what)
      : Error(ErrorKind::kInconsistency, what) {}
};

/// No union of blocks reaches the requested orbit count. The certificate is
/// the multiset of block sizes (in orbits), sorted ascending.
class SelectionInfeasible : public Error {
 public:
  SelectionInfeasible(const std::string& what, std::vector<std::size_t> blocks,
                      std::size_t target)
      : Error(ErrorKind::kInfeasibleSelection, what),
        block_sizes_(std::move(blocks)),
        target_(target) {}
  const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }
  std::size_t target() const { return target_; }

 private:
  std::vector<std::size_t> block_sizes_;
  std::size_t target_;
};

}  // namespace hdim

#endif  // HDIM_ERRORS_HPP
