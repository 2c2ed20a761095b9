#include "rcg/puiseux.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "mpfr_bounds.hpp"
#include "rcg/error.hpp"

namespace rcg {
namespace {

using TermMap = std::map<Rational, TowerScalar, std::greater<>>;

std::vector<PuiseuxTerm> to_terms(const TermMap& m, const std::optional<Rational>& tail) {
  std::vector<PuiseuxTerm> out;
  out.reserve(m.size());
  for (const auto& [e, c] : m) {
    if (tail && e <= *tail) break;
    if (c.is_zero()) continue;
    out.push_back({e, c});
  }
  return out;
}

/// Exact product of the stored terms, keeping only exponents > floor_bound.
std::vector<PuiseuxTerm> mul_terms(const std::vector<PuiseuxTerm>& a, const std::vector<PuiseuxTerm>& b,
                                   const std::optional<Rational>& floor_bound) {
  TermMap acc;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Rational e = x.exponent + y.exponent;
      if (floor_bound && e <= *floor_bound) break;  // b is sorted decreasingly
      auto [it, inserted] = acc.try_emplace(e, x.coeff * y.coeff);
      if (!inserted) it->second += x.coeff * y.coeff;
    }
  }
  return to_terms(acc, floor_bound);
}

std::vector<PuiseuxTerm> add_terms(const std::vector<PuiseuxTerm>& a, const std::vector<PuiseuxTerm>& b, int sign_b) {
  TermMap acc;
  for (const auto& x : a) acc.emplace(x.exponent, x.coeff);
  for (const auto& y : b) {
    const TowerScalar c = sign_b > 0 ? y.coeff : -y.coeff;
    auto [it, inserted] = acc.try_emplace(y.exponent, c);
    if (!inserted) it->second += c;
  }
  return to_terms(acc, std::nullopt);
}

/// Normalized relative part: a = c X^e (1 + t). Returns t's terms (exponents < 0).
std::vector<PuiseuxTerm> relative_tail_terms(const PuiseuxScalar& a) {
  const auto& lead = a.terms().front();
  const TowerScalar inv_c = lead.coeff.inverse();
  std::vector<PuiseuxTerm> t;
  for (std::size_t i = 1; i < a.terms().size(); ++i) {
    t.push_back({a.terms()[i].exponent - lead.exponent, a.terms()[i].coeff * inv_c});
  }
  return t;
}

Rational effective_order(const PuiseuxScalar& a, const Rational& requested) {
  if (sgn(requested) <= 0) throw DomainError(DomainErrorKind::NotPositive, "truncation order must be positive");
  if (!a.tail()) return requested;
  return std::min(requested, Rational(a.terms().front().exponent - *a.tail()));
}

std::vector<PuiseuxTerm> shifted(const std::vector<PuiseuxTerm>& t, const Rational& de, const TowerScalar& scale) {
  std::vector<PuiseuxTerm> out;
  out.reserve(t.size());
  for (const auto& x : t) out.push_back({x.exponent + de, x.coeff * scale});
  return out;
}

}  // namespace

PuiseuxScalar::PuiseuxScalar(const TowerScalar& c) {
  if (!c.is_zero()) terms_.push_back({Rational(0), c});
}

PuiseuxScalar PuiseuxScalar::monomial(const TowerScalar& coeff, const Rational& exponent) {
  PuiseuxScalar out;
  if (!coeff.is_zero()) out.terms_.push_back({exponent, coeff});
  return out;
}

PuiseuxScalar PuiseuxScalar::from_terms(std::vector<PuiseuxTerm> terms, std::optional<Rational> tail) {
  TermMap acc;
  for (auto& t : terms) {
    auto [it, inserted] = acc.try_emplace(t.exponent, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  PuiseuxScalar out;
  out.terms_ = to_terms(acc, tail);
  out.tail_ = std::move(tail);
  return out;
}

Integer PuiseuxScalar::ramification() const {
  Integer m = 1;
  for (const auto& t : terms_) m = lcm(m, t.exponent.get_den());
  return m;
}

std::optional<Rational> PuiseuxScalar::lead_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent;
}

Rational PuiseuxScalar::top_exponent() const {
  if (!terms_.empty()) return terms_.front().exponent;
  if (tail_) return *tail_;
  throw DomainError(DomainErrorKind::DivisionByZero, "exact zero has no leading exponent");
}

int PuiseuxScalar::sign() const {
  if (!terms_.empty()) return terms_.front().coeff.sign();
  if (tail_) throw IndeterminateSign("sign of " + to_string() + " is unknown; raise the truncation order");
  return 0;
}

bool PuiseuxScalar::is_zero() const { return sign() == 0; }

bool PuiseuxScalar::is_constant() const {
  return is_exact() && std::all_of(terms_.begin(), terms_.end(), [](const PuiseuxTerm& t) { return sgn(t.exponent) == 0; });
}

TowerScalar PuiseuxScalar::constant_term() const {
  for (const auto& t : terms_) {
    if (sgn(t.exponent) == 0) return t.coeff;
  }
  return TowerScalar();
}

PuiseuxScalar PuiseuxScalar::truncated(const Rational& e) const {
  std::optional<Rational> tail = tail_ ? std::max(*tail_, e) : e;
  PuiseuxScalar out;
  for (const auto& t : terms_) {
    if (t.exponent <= *tail) break;
    out.terms_.push_back(t);
  }
  out.tail_ = tail;
  return out;
}

PuiseuxScalar PuiseuxScalar::operator-() const {
  PuiseuxScalar out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

namespace {

std::optional<Rational> max_tail(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

}  // namespace

PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  return PuiseuxScalar::from_terms(add_terms(a.terms_, b.terms_, 1), max_tail(a.tail_, b.tail_));
}

PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  return PuiseuxScalar::from_terms(add_terms(a.terms_, b.terms_, -1), max_tail(a.tail_, b.tail_));
}

PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  const bool a_zero = a.terms_.empty() && !a.tail_;
  const bool b_zero = b.terms_.empty() && !b.tail_;
  if (a_zero || b_zero) return PuiseuxScalar();
  std::optional<Rational> tail;
  if (a.tail_) tail = max_tail(tail, b.top_exponent() + *a.tail_);
  if (b.tail_) tail = max_tail(tail, a.top_exponent() + *b.tail_);
  PuiseuxScalar out;
  out.terms_ = mul_terms(a.terms_, b.terms_, tail);
  out.tail_ = tail;
  return out;
}

bool operator==(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  if (a.tail_ != b.tail_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

PuiseuxScalar PuiseuxScalar::inverse(const Rational& relative_order) const {
  if (terms_.empty()) {
    if (tail_) throw IndeterminateSign("cannot invert " + to_string() + "; raise the truncation order");
    throw DomainError(DomainErrorKind::DivisionByZero, "inverse of zero");
  }
  const auto& lead = terms_.front();
  const TowerScalar inv_c = lead.coeff.inverse();
  if (terms_.size() == 1 && !tail_) return monomial(inv_c, -lead.exponent);

  const Rational order = effective_order(*this, relative_order);
  const Rational bound = -order;
  const std::vector<PuiseuxTerm> t = relative_tail_terms(*this);
  // s = 1 - t s, iterated to a fixed point modulo X^bound
  std::vector<PuiseuxTerm> s{{Rational(0), TowerScalar(1)}};
  while (true) {
    std::vector<PuiseuxTerm> ts = mul_terms(t, s, bound);
    std::vector<PuiseuxTerm> next = add_terms({{Rational(0), TowerScalar(1)}}, ts, -1);
    PuiseuxScalar cur = from_terms(s), nxt = from_terms(next, bound);
    if (cur.truncated(bound) == nxt) break;
    s = nxt.terms_;
  }
  return from_terms(shifted(s, -lead.exponent, inv_c), bound - lead.exponent);
}

PuiseuxScalar sqrt_positive(const PuiseuxScalar& a, const Rational& relative_order) {
  if (a.sign() <= 0) throw DomainError(DomainErrorKind::NotPositive, "square root of " + a.to_string());
  const auto& lead = a.terms().front();
  const TowerScalar root_c = sqrt_positive(lead.coeff);
  const Rational half_e = lead.exponent / 2;
  if (a.terms().size() == 1 && a.is_exact()) return PuiseuxScalar::monomial(root_c, half_e);

  const Rational order = effective_order(a, relative_order);
  const Rational bound = -order;
  const std::vector<PuiseuxTerm> t = relative_tail_terms(a);
  // (1 + u)^2 = 1 + t  <=>  u = (t - u^2) / 2
  std::vector<PuiseuxTerm> u;
  const TowerScalar half(Rational(1, 2));
  while (true) {
    std::vector<PuiseuxTerm> u2 = mul_terms(u, u, bound);
    std::vector<PuiseuxTerm> next = shifted(add_terms(t, u2, -1), Rational(0), half);
    PuiseuxScalar nxt = PuiseuxScalar::from_terms(next, bound);
    if (PuiseuxScalar::from_terms(u, bound) == nxt) break;
    u = nxt.terms();
  }
  std::vector<PuiseuxTerm> one_plus_u = add_terms({{Rational(0), TowerScalar(1)}}, u, 1);
  return PuiseuxScalar::from_terms(shifted(one_plus_u, half_e, root_c), bound + half_e);
}

std::string PuiseuxScalar::to_string() const {
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.sign() < 0;
    const TowerScalar mag = negative ? -t.coeff : t.coeff;
    std::string c = mag.to_string();
    const bool compound = c.find(' ') != std::string::npos;
    std::string term;
    if (sgn(t.exponent) == 0) {
      term = compound && (negative || !first) ? "(" + c + ")" : c;
    } else {
      std::string x = t.exponent == 1 ? "X" : "X^(" + rcg::to_string(t.exponent) + ")";
      if (c == "1") {
        term = x;
      } else {
        term = (compound ? "(" + c + ")" : c) + "*" + x;
      }
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  if (tail_) {
    std::string o = "O(X^(" + rcg::to_string(*tail_) + "))";
    out = first ? o : out + " + " + o;
  } else if (first) {
    out = "0";
  }
  return out;
}

TowerScalar specialize(const PuiseuxScalar& a, const Rational& T) {
  if (sgn(T) <= 0) throw DomainError(DomainErrorKind::NotPositive, "specialization point must be positive");
  std::map<Integer, TowerScalar> roots;  // denominator -> T^(1/den)
  roots.emplace(Integer(1), TowerScalar(T));
  TowerScalar out;
  for (const auto& t : a.terms()) {
    const Integer den = t.exponent.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1) {
      throw DomainError(DomainErrorKind::UnsupportedExponent,
                        "exact evaluation of X^(" + rcg::to_string(t.exponent) + ") needs a non-square root");
    }
    if (!roots.count(den)) {
      Integer d = 1;
      TowerScalar r(T);
      while (d < den) {
        d *= 2;
        auto it = roots.find(d);
        r = it != roots.end() ? it->second : roots.emplace(d, sqrt_positive(r)).first->second;
      }
    }
    const TowerScalar& base = roots.at(den);
    Integer p = t.exponent.get_num();
    const bool negative = sgn(p) < 0;
    if (negative) p = -p;
    TowerScalar power(1);
    for (Integer i = 0; i < p; ++i) power *= base;
    out += t.coeff * (negative ? power.inverse() : power);
  }
  return out;
}

Interval specialize_approx(const PuiseuxScalar& a, const Rational& T, const Rational& width) {
  if (sgn(T) <= 0) throw DomainError(DomainErrorKind::NotPositive, "specialization point must be positive");
  for (unsigned long bits = 64;; bits *= 2) {
    Interval acc{Rational(0), Rational(0)};
    for (const auto& t : a.terms()) {
      Interval c = t.coeff.enclose(bits);
      Interval p = detail::pow_bounds(T, t.exponent, static_cast<mpfr_prec_t>(bits));
      Interval prod = detail::mul(c, p);
      acc.lo += prod.lo;
      acc.hi += prod.hi;
    }
    if (acc.width() <= width) return acc;
  }
}

}  // namespace rcg
