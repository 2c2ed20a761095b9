#include "rcg/parse.hpp"

#include <cctype>
#include <optional>

namespace rcg {
namespace {

class Parser {
 public:
  Parser(std::string_view text, bool newline_is_space) : s_(text), newline_is_space_(newline_is_space) {}

  /// True once X or O(...) has been read.
  bool saw_series() const { return saw_series_; }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || (newline_is_space_ && c == '\n'))
        ++pos_;
      else
        break;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", pos_);
  }

  PuiseuxScalar scalar() {
    PuiseuxScalar out;
    const char first = peek();
    if (first == '+' || first == '-') {
      ++pos_;
      out = term();
      if (first == '-') out = -out;
    } else {
      out = term();
    }
    while (true) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        out += term();
      } else if (c == '-') {
        ++pos_;
        out -= term();
      } else {
        return out;
      }
    }
  }

 private:
  PuiseuxScalar term() {
    PuiseuxScalar out = unary();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        out *= unary();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        out *= exact_inverse(unary(), at);
      } else {
        return out;
      }
    }
  }

  PuiseuxScalar unary() {
    if (accept('-')) return -unary();
    return factor();
  }

  PuiseuxScalar factor() {
    const char c = peek();
    const std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) return PuiseuxScalar(Rational(integer()));
    if (c == '(') {
      ++pos_;
      PuiseuxScalar v = scalar();
      expect(')');
      return v;
    }
    if (keyword("sqrt")) {
      expect('(');
      const std::size_t arg_at = pos_;
      PuiseuxScalar v = scalar();
      expect(')');
      return exact_sqrt(v, arg_at);
    }
    if (c == 'X') {
      ++pos_;
      saw_series_ = true;
      return PuiseuxScalar::monomial(TowerScalar(1), exponent());
    }
    if (c == 'O') {
      ++pos_;
      saw_series_ = true;
      expect('(');
      if (!accept('X')) fail("expected 'X' inside O(...)", pos_);
      const Rational e = exponent();
      expect(')');
      return PuiseuxScalar::big_o(e);
    }
    if (c == '\0') fail("unexpected end of input", at);
    fail(std::string("unexpected character '") + c + "'", at);
  }

  bool keyword(std::string_view word) {
    skip_space();
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", start);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  /// Optional "^" exponent after X; 1 when absent.
  Rational exponent() {
    if (!accept('^')) return Rational(1);
    if (!accept('(')) return Rational(integer());
    const bool negative = accept('-');
    Integer num = integer();
    Integer den = 1;
    if (accept('/')) {
      const std::size_t at = pos_;
      den = integer();
      if (den == 0) fail("zero denominator in exponent", at);
    }
    expect(')');
    Rational e(negative ? Integer(-num) : num, den);
    e.canonicalize();
    return e;
  }

  /// Single-term exact divisor only.
  PuiseuxScalar exact_inverse(const PuiseuxScalar& v, std::size_t at) const {
    if (!v.is_exact() || v.terms().size() > 1)
      fail("division needs an exact single-term divisor", at);
    if (v.terms().empty()) throw DomainError(DomainErrorKind::DivisionByZero, "division by zero in input");
    const auto& t = v.terms().front();
    return PuiseuxScalar::monomial(t.coeff.inverse(), -t.exponent);
  }

  PuiseuxScalar exact_sqrt(const PuiseuxScalar& v, std::size_t at) const {
    if (!v.is_exact() || v.terms().size() > 1) fail("sqrt needs a constant or an exact single-term argument", at);
    if (v.terms().empty() || v.terms().front().coeff.sign() <= 0)
      throw DomainError(DomainErrorKind::NotPositive, "square root of a non-positive value in input");
    const auto& t = v.terms().front();
    return PuiseuxScalar::monomial(sqrt_positive(t.coeff), t.exponent / 2);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  bool newline_is_space_;
  bool saw_series_ = false;
};

struct ParsedRows {
  std::vector<std::vector<PuiseuxScalar>> rows;
  std::vector<std::vector<std::size_t>> starts;
};

ParsedRows parse_rows(std::string_view text, Parser& p) {
  ParsedRows out;
  std::vector<PuiseuxScalar> row;
  std::vector<std::size_t> starts;
  const auto close_row = [&]() {
    if (row.empty()) return;
    if (!out.rows.empty() && row.size() != out.rows.front().size())
      p.fail("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(out.rows.front().size()),
             starts.front());
    out.rows.push_back(std::move(row));
    out.starts.push_back(std::move(starts));
    row.clear();
    starts.clear();
  };
  while (true) {
    const char c = p.peek();
    if (c == '\0') break;
    if (c == ';' || c == '\n') {
      p.accept(c);
      close_row();
      continue;
    }
    starts.push_back(p.pos());
    row.push_back(p.scalar());
    const char next = p.peek();
    if (next == ',') {
      p.accept(',');
      const char after = p.peek();
      if (after == ';' || after == '\n' || after == '\0') p.fail("expected an entry after ','", p.pos());
    } else if (next != ';' && next != '\n' && next != '\0') {
      p.fail(std::string("unexpected character '") + next + "'", p.pos());
    }
  }
  close_row();
  if (out.rows.empty()) p.fail("empty matrix", text.size());
  if (out.rows.size() != out.rows.front().size())
    p.fail("matrix is " + std::to_string(out.rows.size()) + "x" + std::to_string(out.rows.front().size()) +
               ", expected a square matrix",
           0);
  return out;
}

PuiseuxScalar parse_full(Parser& p) {
  if (p.at_end()) p.fail("empty input", 0);
  PuiseuxScalar v = p.scalar();
  if (!p.at_end()) p.fail(std::string("unexpected character '") + p.peek() + "'", p.pos());
  return v;
}

/// Position of the first X or O in the text, for tower-mode errors.
std::size_t series_position(std::string_view text) {
  const auto i = text.find_first_of("XO");
  return i == std::string_view::npos ? 0 : i;
}

}  // namespace

ScalarValue parse_scalar(std::string_view text) {
  Parser p(text, true);
  PuiseuxScalar v = parse_full(p);
  if (p.saw_series()) return v;
  return v.known_zero() ? TowerScalar(0) : v.constant_term();
}

TowerScalar parse_tower(std::string_view text) {
  Parser p(text, true);
  PuiseuxScalar v = parse_full(p);
  if (p.saw_series()) p.fail("X is only available over the Puiseux field", series_position(text));
  return v.known_zero() ? TowerScalar(0) : v.constant_term();
}

PuiseuxScalar parse_puiseux(std::string_view text) {
  Parser p(text, true);
  return parse_full(p);
}

TowerMatrix parse_tower_matrix(std::string_view text) {
  Parser p(text, false);
  const ParsedRows r = parse_rows(text, p);
  if (p.saw_series()) p.fail("X is only available over the Puiseux field", series_position(text));
  const std::size_t n = r.rows.size();
  TowerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = r.rows[i][j].known_zero() ? TowerScalar(0) : r.rows[i][j].constant_term();
  return m;
}

PuiseuxMatrix parse_puiseux_matrix(std::string_view text) {
  Parser p(text, false);
  const ParsedRows r = parse_rows(text, p);
  return PuiseuxMatrix::from_rows(r.rows);
}

}  // namespace rcg
