#include "flp/parse.hpp"

#include <cctype>
#include <limits>

#include "flp/error.hpp"

namespace flp {

NameTable NameTable::coordinates(int m) {
  NameTable t;
  for (int a = 1; a <= m; ++a) t.declare("x" + std::to_string(a), Scalar(Variable::coordinate(a)));
  return t;
}

NameTable NameTable::total_space(int n, int m) {
  NameTable t = coordinates(m);
  for (int i = 1; i <= n; ++i) t.declare("y" + std::to_string(i), Scalar(Variable::fiber(i)));
  return t;
}

void NameTable::declare(std::string name, Scalar value) { names_[std::move(name)] = std::move(value); }

const Scalar* NameTable::find(std::string_view name) const {
  auto it = names_.find(name);
  return it == names_.end() ? nullptr : &it->second;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const NameTable& names) : text_(text), names_(names) {}

  Scalar parse() {
    Scalar value = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

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

  Scalar expr() {
    const bool negate = accept('-');
    Scalar value = term();
    if (negate) value = -value;
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  Scalar term() {
    Scalar value = factor();
    while (accept('*')) value *= factor();
    return value;
  }

  Scalar factor() {
    Scalar value = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      const std::string digits = take_digits();
      if (digits.empty()) fail("expected a nonnegative integer exponent");
      if (digits.size() > 6) {
        pos_ = start;
        fail("exponent too large");
      }
      value = value.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return value;
  }

  Scalar base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const Scalar* value = names_.find(name);
      if (!value) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return *value;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Scalar rational() {
    const std::string numerator = take_digits();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      const std::string denominator = take_digits();
      if (denominator.empty()) fail("expected a denominator");
      const Rational d = Rational::parse(denominator);
      if (d.is_zero()) {
        pos_ = start;
        fail("zero denominator");
      }
      return Scalar(Rational::parse(numerator) / d);
    }
    return Scalar(Rational::parse(numerator));
  }

  std::string take_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const NameTable& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const NameTable& names) { return Parser(text, names).parse(); }

}  // namespace flp
