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

#ifndef HDIM_FORMULA_HPP
#define HDIM_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace hdim {

/// Integer expression in the level index k.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/' | '%') factor)*
///   factor := unary ('^' factor)?          right associative
///   unary  := '-' unary | atom
///   atom   := integer | 'k' | '(' expr ')'
///
/// Division truncates toward zero. Evaluation throws ConfigError on overflow,
/// division by zero or a negative exponent.
class DegreeFormula {
 public:
  static DegreeFormula parse(std::string_view text);

  std::int64_t eval(std::int64_t k) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace hdim

#endif  // HDIM_FORMULA_HPP
