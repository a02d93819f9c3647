#include "berry/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "berry/chart.hpp"
#include "berry/errors.hpp"

namespace berry {

namespace {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := ('-' | '+') unary | atom
// atom   := number | "pi" | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  double parse() {
    const double value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  double expr() {
    double value = term();
    while (true) {
      if (consume('+')) {
        value += term();
      } else if (consume('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  double term() {
    double value = unary();
    while (true) {
      if (consume('*')) {
        value *= unary();
      } else if (consume('/')) {
        const double divisor = unary();
        if (divisor == 0.0) fail("division by zero");
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  double unary() {
    if (consume('-')) return -unary();
    if (consume('+')) return unary();
    return atom();
  }

  double atom() {
    skip_space();
    if (consume('(')) {
      const double value = expr();
      if (!consume(')')) fail("missing ')'");
      return value;
    }
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return kPi;
    }
    return number();
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (pos_ == start) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end of input");
    double value = 0.0;
    const auto token = text_.substr(start, pos_ - start);
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
      fail("bad number '" + std::string(token) + "'");
    }
    return value;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::config, "bad expression '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view text) {
  const double value = Parser(text).parse();
  if (!std::isfinite(value)) throw Error(Errc::config, "expression is not finite");
  return value;
}

}  // namespace berry
