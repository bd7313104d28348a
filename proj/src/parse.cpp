#include "icisqf/parse.hpp"

#include <algorithm>
#include <cctype>

namespace icisqf {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars), nvars_(static_cast<int>(vars.size())) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (accept('^')) {
      skip_ws();
      b = b.pow(static_cast<unsigned>(nat()));
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  long nat() {
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.size() > 6) {
      pos_ = start;
      fail("exponent too large");
    }
    return std::stol(d);
  }

  Poly rational() {
    std::string num;
    if (text_[pos_] == '-') {
      num.push_back('-');
      ++pos_;
    }
    num += digits();
    mpz_class n(num), d(1);
    skip_ws();
    // A '/' here always belongs to the rational literal: there is no division
    // operator in the grammar.
    if (accept('/')) {
      skip_ws();
      const std::size_t at = pos_;
      d = mpz_class(digits());
      if (d == 0) {
        pos_ = at;
        fail("zero denominator");
      }
    }
    Rational q(n, d);
    q.canonicalize();
    return Poly::constant(nvars_, q);
  }

  Poly variable() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    return Poly::variable(nvars_, static_cast<int>(it - vars_.begin()));
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).run();
}

}  // namespace icisqf
