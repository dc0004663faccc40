#include "brmult/polyparse.hpp"

#include <cctype>

namespace brm {

namespace {

template <Field K>
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars, const K& field, int line,
         int column_offset)
      : s_(text), vars_(vars), k_(field), n_(static_cast<int>(vars.size())), line_(line),
        offset_(column_offset) {}

  Poly<K> parse() {
    skip_ws();
    if (pos_ == s_.size()) fail(pos_, "expected a polynomial");
    Poly<K> p = expr();
    skip_ws();
    if (pos_ != s_.size()) {
      if (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(') {
        fail(pos_, "expected operator (juxtaposition is not multiplication; use '*')");
      }
      fail(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw ParseError(line_, offset_ + static_cast<int>(at) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly<K> expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly<K> acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly<K> term() {
    Poly<K> acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  Poly<K> power() {
    Poly<K> base = atom();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      const std::size_t caret = pos_;
      ++pos_;
      skip_ws();
      if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        fail(caret, "expected a non-negative integer exponent after '^'");
      }
      const auto e = integer();
      if (e > 255) fail(caret, "exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail(start, "integer literal too large");
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Poly<K> atom() {
    skip_ws();
    if (pos_ == s_.size()) fail(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<K> inner = expr();
      if (!accept(')')) fail(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Poly<K>::from_int(k_, n_, integer());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = s_.substr(start, pos_ - start);
      for (int i = 0; i < n_; ++i) {
        if (vars_[static_cast<std::size_t>(i)] == name) return Poly<K>::variable(k_, n_, i);
      }
      fail(start, "unknown variable '" + std::string(name) + "'");
    }
    fail(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  const K& k_;
  int n_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

template <Field K>
Poly<K> parse_poly(std::string_view text, const std::vector<std::string>& vars, const K& field, int line,
                   int column_offset) {
  return Parser<K>(text, vars, field, line, column_offset).parse();
}

template Poly<PrimeField> parse_poly(std::string_view, const std::vector<std::string>&, const PrimeField&,
                                     int, int);
template Poly<RationalField> parse_poly(std::string_view, const std::vector<std::string>&,
                                        const RationalField&, int, int);

}  // namespace brm
