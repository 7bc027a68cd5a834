// Copyright 2026 The fusionlw Authors
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

// Evaluator for the small expression language used in category files:
//   1 + sqrt(3),  exp(i*pi*7/12)/sqrt(2),  -0.5*(exp(i*pi/6) - 1)
// Supported: decimal literals, i, pi, named constants, sqrt(), exp(),
// unary +/-, binary + - * /, parentheses.

#include <cctype>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fusionlw {

using cplx = std::complex<double>;

class ExprError : public std::runtime_error {
 public:
  ExprError(std::string what, std::size_t column)
      : std::runtime_error(std::move(what)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

using ConstantTable = std::map<std::string, cplx, std::less<>>;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const ConstantTable& constants)
      : text_(text), constants_(constants) {}

  cplx parse() {
    cplx value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  std::string_view text_;
  const ConstantTable& constants_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg + " at column " + std::to_string(pos_ + 1), pos_ + 1);
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

  cplx expression() {
    cplx value = term();
    for (;;) {
      if (accept('+'))
        value += term();
      else if (accept('-'))
        value -= term();
      else
        return value;
    }
  }

  cplx term() {
    cplx value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        cplx denom = unary();
        if (denom == cplx(0.0)) fail("division by zero");
        value /= denom;
      } else {
        return value;
      }
    }
  }

  cplx unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  cplx primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      cplx value = expression();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  cplx number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits();
      else
        pos_ = save;  // not an exponent, e.g. "2e" is rejected later
    }
    std::string literal(text_.substr(start, pos_ - start));
    if (literal == ".") fail("malformed number");
    return cplx(std::stod(literal), 0.0);
  }

  cplx identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "sqrt" || name == "exp") {
      if (!accept('(')) fail("expected '(' after " + std::string(name));
      cplx arg = expression();
      if (!accept(')')) fail("expected ')'");
      return name == "sqrt" ? std::sqrt(arg) : std::exp(arg);
    }
    if (name == "i") return cplx(0.0, 1.0);
    if (name == "pi") return cplx(3.14159265358979323846, 0.0);
    if (auto it = constants_.find(name); it != constants_.end()) return it->second;
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }
};

}  // namespace detail

inline cplx evaluate_expression(std::string_view text, const ConstantTable& constants = {}) {
  return detail::ExprParser(text, constants).parse();
}

}  // namespace fusionlw
