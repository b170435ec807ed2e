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

#include "hdim/formula.hpp"

#include <cctype>
#include <limits>

#include "hdim/errors.hpp"

namespace hdim {

struct DegreeFormula::Node {
  char op = 0;  // 'n' number, 'k' variable, '~' negation, else binary
  std::int64_t value = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const DegreeFormula::Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("degree formula '" + std::string(text_) + "': " + why +
                      " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<DegreeFormula::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) {
        n = binary('+', n, term());
      } else if (accept('-')) {
        n = binary('-', n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = power();
    for (;;) {
      if (accept('*')) {
        n = binary('*', n, power());
      } else if (accept('/')) {
        n = binary('/', n, power());
      } else if (accept('%')) {
        n = binary('%', n, power());
      } else {
        return n;
      }
    }
  }

  NodePtr power() {
    NodePtr base = unary();
    if (accept('^')) return binary('^', base, power());
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return binary('~', unary(), nullptr);
    return atom();
  }

  NodePtr atom() {
    skip();
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (pos_ < text_.size() && text_[pos_] == 'k') {
      ++pos_;
      auto n = std::make_shared<DegreeFormula::Node>();
      n->op = 'k';
      return n;
    }
    if (pos_ < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const int digit = text_[pos_] - '0';
        if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
          fail("integer literal too large");
        }
        v = v * 10 + digit;
        ++pos_;
      }
      auto n = std::make_shared<DegreeFormula::Node>();
      n->op = 'n';
      n->value = v;
      return n;
    }
    fail("expected a number, 'k' or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void overflow() {
  throw ConfigError("degree formula overflows 64-bit integers");
}

std::int64_t evaluate(const DegreeFormula::Node& n, std::int64_t k) {
  switch (n.op) {
    case 'n':
      return n.value;
    case 'k':
      return k;
    case '~': {
      const std::int64_t v = evaluate(*n.lhs, k);
      std::int64_t r = 0;
      if (__builtin_sub_overflow(std::int64_t{0}, v, &r)) overflow();
      return r;
    }
    default:
      break;
  }
  const std::int64_t a = evaluate(*n.lhs, k);
  const std::int64_t b = evaluate(*n.rhs, k);
  std::int64_t r = 0;
  switch (n.op) {
    case '+':
      if (__builtin_add_overflow(a, b, &r)) overflow();
      return r;
    case '-':
      if (__builtin_sub_overflow(a, b, &r)) overflow();
      return r;
    case '*':
      if (__builtin_mul_overflow(a, b, &r)) overflow();
      return r;
    case '/':
    case '%':
      if (b == 0) throw ConfigError("degree formula divides by zero");
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) overflow();
      return n.op == '/' ? a / b : a % b;
    case '^': {
      if (b < 0) throw ConfigError("degree formula has a negative exponent");
      if (a == 0) return b == 0 ? 1 : 0;
      if (a == 1) return 1;
      if (a == -1) return b % 2 == 0 ? 1 : -1;
      r = 1;
      for (std::int64_t i = 0; i < b; ++i) {
        if (__builtin_mul_overflow(r, a, &r)) overflow();
      }
      return r;
    }
    default:
      throw ConfigError("degree formula: unknown operator");
  }
}

}  // namespace

DegreeFormula DegreeFormula::parse(std::string_view text) {
  DegreeFormula f;
  f.text_ = std::string(text);
  f.root_ = Parser(text).parse();
  return f;
}

std::int64_t DegreeFormula::eval(std::int64_t k) const {
  if (!root_) throw ConfigError("empty degree formula");
  return evaluate(*root_, k);
}

}  // namespace hdim
