#include <cctype>
#include <stdexcept>

#include "qmk/exactnum.hpp"

namespace qmk {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExactNumber parse() {
    ExactNumber v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse number \"" + std::string(text_) + "\": " + why);
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

  ExactNumber expr() {
    ExactNumber v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  ExactNumber term() {
    ExactNumber v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        ExactNumber d = unary();
        if (d.sign() == 0) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  ExactNumber unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  ExactNumber primary() {
    skip_space();
    if (accept('(')) {
      ExactNumber v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      ExactNumber v = expr();
      if (!accept(')')) fail("missing ')'");
      if (!v.is_rational()) fail("sqrt of an irrational");
      const Rational& q = v.rational();
      if (q.sign() < 0) fail("sqrt of a negative number");
      // sqrt(a/b) = sqrt(a*b)/b
      return ExactNumber::quadratic(0, 1, q.den(), Integer(q.num() * q.den()));
    }
    return number();
  }

  ExactNumber number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string whole(text_.substr(start, pos_ - start));
    std::string fraction;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t fstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      fraction = std::string(text_.substr(fstart, pos_ - fstart));
      if (whole.empty() && fraction.empty()) fail("lone '.'");
    } else if (whole.empty()) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                               : "unexpected end of input");
    }
    Integer num(whole + fraction, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction.size());
    return Rational(num, den);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactNumber parse_exact(std::string_view text) { return ExprParser(text).parse(); }

Rational parse_rational(std::string_view text) {
  ExactNumber v = parse_exact(text);
  if (!v.is_rational()) {
    throw std::invalid_argument("expected a rational number, got " + v.to_string());
  }
  return v.rational();
}

}  // namespace qmk
