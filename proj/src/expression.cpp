// Copyright 2026 The Highlights Authors.
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

#include "highlights/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <variant>

#include "highlights/error.hpp"

namespace hl {

struct Expression::Node {
  struct Literal {
    double value;
  };
  struct Reference {
    std::string name;
  };
  struct Binary {
    char op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  struct Negate {
    std::shared_ptr<const Node> operand;
  };
  std::variant<Literal, Reference, Binary, Negate> body;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto node = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::BadDerivation, "expression '" + std::string(text_) + "': " + what +
                                         " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
    return std::make_shared<Expression::Node>(
        Expression::Node{Expression::Node::Binary{op, std::move(lhs), std::move(rhs)}});
  }

  NodePtr sum() {
    auto lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = binary('+', lhs, product());
      } else if (accept('-')) {
        lhs = binary('-', lhs, product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary('*', lhs, unary());
      } else if (accept('/')) {
        lhs = binary('/', lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      return std::make_shared<Expression::Node>(
          Expression::Node{Expression::Node::Negate{unary()}});
    }
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      auto inner = sum();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0;
      auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
      if (res.ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(res.ptr - text_.data());
      return std::make_shared<Expression::Node>(Expression::Node{Expression::Node::Literal{value}});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return std::make_shared<Expression::Node>(Expression::Node{
          Expression::Node::Reference{std::string(text_.substr(start, pos_ - start))}});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<double> eval(const Expression::Node& node, const Expression::Lookup& lookup) {
  using N = Expression::Node;
  if (auto* lit = std::get_if<N::Literal>(&node.body)) return lit->value;
  if (auto* ref = std::get_if<N::Reference>(&node.body)) return lookup(ref->name);
  if (auto* neg = std::get_if<N::Negate>(&node.body)) {
    auto v = eval(*neg->operand, lookup);
    if (!v) return std::nullopt;
    return -*v;
  }
  const auto& bin = std::get<N::Binary>(node.body);
  auto a = eval(*bin.lhs, lookup);
  auto b = eval(*bin.rhs, lookup);
  if (!a || !b) return std::nullopt;
  switch (bin.op) {
    case '+': return *a + *b;
    case '-': return *a - *b;
    case '*': return *a * *b;
    default:
      if (*b == 0.0) return std::nullopt;
      return *a / *b;
  }
}

void collect(const Expression::Node& node, std::vector<std::string>& out) {
  using N = Expression::Node;
  if (auto* ref = std::get_if<N::Reference>(&node.body)) {
    if (std::find(out.begin(), out.end(), ref->name) == out.end()) out.push_back(ref->name);
  } else if (auto* neg = std::get_if<N::Negate>(&node.body)) {
    collect(*neg->operand, out);
  } else if (auto* bin = std::get_if<N::Binary>(&node.body)) {
    collect(*bin->lhs, out);
    collect(*bin->rhs, out);
  }
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(e.text_).parse();
  return e;
}

std::optional<double> Expression::evaluate(const Lookup& lookup) const {
  return eval(*root_, lookup);
}

std::vector<std::string> Expression::references() const {
  std::vector<std::string> out;
  collect(*root_, out);
  return out;
}

}  // namespace hl
