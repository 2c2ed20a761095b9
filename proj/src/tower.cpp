#include "rcg/tower.hpp"

#include <algorithm>
#include <utility>

#include "rcg/error.hpp"

namespace rcg {
namespace {

using Coords = std::vector<Rational>;
using CSpan = std::span<const Rational>;

std::size_t dim(std::size_t depth) { return std::size_t{1} << depth; }

/// Radicand coordinates per level, bottom first.
struct Chain {
  std::vector<const Coords*> radicands;
};

Chain chain_of(const TowerNode* node) {
  Chain ch;
  ch.radicands.resize(node ? node->depth : 0);
  for (const TowerNode* n = node; n != nullptr; n = n->parent.get()) {
    ch.radicands[n->depth - 1] = &n->radicand;
  }
  return ch;
}

bool all_zero(CSpan a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

void add_into(std::span<Rational> out, CSpan a) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
}

Coords padded(CSpan a, std::size_t depth) {
  Coords out(dim(depth));
  std::copy(a.begin(), a.end(), out.begin());
  return out;
}

Coords mul(CSpan a, CSpan b, std::size_t d, const Chain& ch) {
  if (d == 0) return {a[0] * b[0]};
  const std::size_t h = dim(d - 1);
  CSpan a0 = a.first(h), a1 = a.subspan(h), b0 = b.first(h), b1 = b.subspan(h);
  const bool a0z = all_zero(a0), a1z = all_zero(a1), b0z = all_zero(b0), b1z = all_zero(b1);
  Coords out(2 * h);
  std::span<Rational> lo(out.data(), h), hi(out.data() + h, h);
  if (!a0z && !b0z) add_into(lo, mul(a0, b0, d - 1, ch));
  if (!a1z && !b1z) add_into(lo, mul(mul(a1, b1, d - 1, ch), *ch.radicands[d - 1], d - 1, ch));
  if (!a0z && !b1z) add_into(hi, mul(a0, b1, d - 1, ch));
  if (!a1z && !b0z) add_into(hi, mul(a1, b0, d - 1, ch));
  return out;
}

Coords scaled(CSpan a, const Rational& s) {
  Coords out(a.begin(), a.end());
  for (auto& x : out) x *= s;
  return out;
}

Coords sub(CSpan a, CSpan b) {
  Coords out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Coords add(CSpan a, CSpan b) {
  Coords out(a.begin(), a.end());
  add_into(out, b);
  return out;
}

Coords concat(CSpan lo, CSpan hi) {
  Coords out(lo.begin(), lo.end());
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

Coords inv(CSpan a, std::size_t d, const Chain& ch) {
  if (d == 0) {
    if (sgn(a[0]) == 0) throw DomainError(DomainErrorKind::DivisionByZero, "inverse of zero");
    return {1 / a[0]};
  }
  const std::size_t h = dim(d - 1);
  CSpan a0 = a.first(h), a1 = a.subspan(h);
  if (all_zero(a1)) return padded(inv(a0, d - 1, ch), d);
  // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - r a1^2)
  const Coords norm = sub(mul(a0, a0, d - 1, ch), mul(mul(a1, a1, d - 1, ch), *ch.radicands[d - 1], d - 1, ch));
  const Coords ninv = inv(norm, d - 1, ch);
  return concat(mul(a0, ninv, d - 1, ch), scaled(mul(a1, ninv, d - 1, ch), Rational(-1)));
}

/// Some x in the tower with x^2 = a, if it exists.
std::optional<Coords> try_sqrt(CSpan a, std::size_t d, const Chain& ch) {
  if (all_zero(a)) return Coords(a.size());
  if (d == 0) {
    auto r = exact_sqrt(a[0]);
    if (!r) return std::nullopt;
    return Coords{*r};
  }
  const std::size_t h = dim(d - 1);
  CSpan p = a.first(h), q = a.subspan(h);
  const Coords& r = *ch.radicands[d - 1];
  const Coords zeros(h);
  if (all_zero(q)) {
    if (auto x = try_sqrt(p, d - 1, ch)) return concat(*x, zeros);
    if (auto y = try_sqrt(mul(p, inv(r, d - 1, ch), d - 1, ch), d - 1, ch)) return concat(zeros, *y);
    return std::nullopt;
  }
  // (x + y s)^2 = p + q s  <=>  x^2 + r y^2 = p, 2xy = q; x^2 = (p +- sqrt(p^2 - r q^2)) / 2.
  const Coords norm = sub(mul(p, p, d - 1, ch), mul(mul(q, q, d - 1, ch), r, d - 1, ch));
  auto n = try_sqrt(norm, d - 1, ch);
  if (!n) return std::nullopt;
  const Rational half(1, 2);
  for (const Coords& t : {scaled(add(p, *n), half), scaled(sub(p, *n), half)}) {
    auto x = try_sqrt(t, d - 1, ch);
    if (!x || all_zero(*x)) continue;
    Coords y = mul(q, inv(scaled(*x, Rational(2)), d - 1, ch), d - 1, ch);
    return concat(*x, y);
  }
  return std::nullopt;
}

Interval eval_interval(CSpan c, std::size_t d, const std::vector<Interval>& gens, unsigned long bits) {
  Rational lo(0), hi(0);
  for (std::size_t mask = 0; mask < dim(d); ++mask) {
    const Rational& coef = c[mask];
    if (sgn(coef) == 0) continue;
    Rational plo(1), phi(1);
    for (std::size_t i = 0; i < d; ++i) {
      if ((mask >> i & 1U) == 0) continue;
      plo = round_down(plo * gens[i].lo, bits);
      phi = round_up(phi * gens[i].hi, bits);
    }
    if (sgn(coef) > 0) {
      lo += round_down(coef * plo, bits);
      hi += round_up(coef * phi, bits);
    } else {
      lo += round_down(coef * phi, bits);
      hi += round_up(coef * plo, bits);
    }
  }
  return {lo, hi};
}

Interval enclose_coords(CSpan c, std::size_t d, const Chain& ch, unsigned long bits) {
  const unsigned long inner = bits + 8 * static_cast<unsigned long>(d) + 8;
  std::vector<Interval> gens;
  gens.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Interval r = eval_interval(*ch.radicands[i], i, gens, inner);
    gens.push_back({sqrt_lower(r.lo, inner), sqrt_upper(r.hi, inner)});
  }
  return eval_interval(c, d, gens, bits);
}

int sign_coords(CSpan c, std::size_t d, const Chain& ch) {
  if (all_zero(c)) return 0;
  if (d == 0) return sgn(c[0]);
  for (unsigned long bits = 64;; bits *= 2) {
    Interval iv = enclose_coords(c, d, ch, bits);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
  }
}

const TowerNode* ancestor(const TowerNode* node, std::size_t depth) {
  while (node != nullptr && node->depth > depth) node = node->parent.get();
  return node;
}

bool same_structure(const TowerNode* p, const TowerNode* q) {
  while (true) {
    if (p == q) return true;
    if (p == nullptr || q == nullptr) return false;
    if (p->depth != q->depth || p->radicand != q->radicand) return false;
    p = p->parent.get();
    q = q->parent.get();
  }
}

std::size_t common_prefix_depth(const TowerNode* a, const TowerNode* b) {
  const std::size_t da = a ? a->depth : 0;
  const std::size_t db = b ? b->depth : 0;
  for (std::size_t level = std::min(da, db); level > 0; --level) {
    if (same_structure(ancestor(a, level), ancestor(b, level))) return level;
  }
  return 0;
}

/// sum_mask c[mask] * prod_{i in mask} images[i], all images over a tower of depth `depth`.
Coords evaluate(CSpan c, std::size_t levels, const std::vector<Coords>& images, std::size_t depth,
                const Chain& ch) {
  std::vector<Coords> prods(dim(levels));
  prods[0] = Coords(dim(depth));
  prods[0][0] = 1;
  Coords out(dim(depth));
  for (std::size_t mask = 0; mask < dim(levels); ++mask) {
    if (mask > 0) {
      std::size_t top = 0;
      while ((mask >> (top + 1)) != 0) ++top;
      prods[mask] = mul(prods[mask & ~(std::size_t{1} << top)], images[top], depth, ch);
    }
    if (sgn(c[mask]) != 0) add_into(out, scaled(prods[mask], c[mask]));
  }
  return out;
}

struct Common {
  TowerPtr top;
  Coords a;
  Coords b;
};

TowerPtr make_node(TowerPtr parent, Coords radicand) {
  auto node = std::make_shared<TowerNode>();
  node->depth = (parent ? parent->depth : 0) + 1;
  node->parent = std::move(parent);
  node->radicand = std::move(radicand);
  return node;
}

/// Re-expresses a (over ta) and b (over tb) in one tower containing both.
Common lift(const TowerPtr& ta, CSpan a, const TowerPtr& tb, CSpan b) {
  if (ta.get() == tb.get()) return {ta, Coords(a.begin(), a.end()), Coords(b.begin(), b.end())};
  const std::size_t da = ta ? ta->depth : 0;
  const std::size_t db = tb ? tb->depth : 0;
  const std::size_t common = common_prefix_depth(ta.get(), tb.get());
  if (common == da) return {tb, padded(a, db), Coords(b.begin(), b.end())};
  if (common == db) return {ta, Coords(a.begin(), a.end()), padded(b, da)};

  // Adjoin b's remaining radicands on top of a's tower, mapping each
  // generator of b's tower to its positive image.
  TowerPtr top = ta;
  std::size_t depth = da;
  Coords a_lifted(a.begin(), a.end());
  std::vector<Coords> images;
  for (std::size_t i = 0; i < common; ++i) {
    Coords unit(dim(depth));
    unit[dim(i)] = 1;
    images.push_back(std::move(unit));
  }
  const Chain bch = chain_of(tb.get());
  for (std::size_t i = common; i < db; ++i) {
    Chain ch = chain_of(top.get());
    Coords m = evaluate(*bch.radicands[i], i, images, depth, ch);
    if (auto root = try_sqrt(m, depth, ch)) {
      if (sign_coords(*root, depth, ch) < 0) *root = scaled(*root, Rational(-1));
      images.push_back(std::move(*root));
      continue;
    }
    Rational scale(1);
    if (all_zero(CSpan(m).subspan(1))) {
      auto [s, k] = split_square_factor(m[0]);
      scale = s;
      m[0] = Rational(k);
    }
    top = make_node(top, std::move(m));
    ++depth;
    a_lifted = padded(a_lifted, depth);
    for (auto& img : images) img = padded(img, depth);
    Coords gen(dim(depth));
    gen[dim(depth - 1)] = scale;
    images.push_back(std::move(gen));
  }
  Coords b_lifted = evaluate(b, db, images, depth, chain_of(top.get()));
  return {top, std::move(a_lifted), std::move(b_lifted)};
}

template <class Op>
TowerScalar combine(const TowerScalar& a, const TowerScalar& b, Op op) {
  if (a.tower().get() == b.tower().get()) {
    return TowerScalar(a.tower(), op(a.coords(), b.coords(), a.tower()));
  }
  Common c = lift(a.tower(), a.coords(), b.tower(), b.coords());
  Coords out = op(c.a, c.b, c.top);
  return TowerScalar(std::move(c.top), std::move(out));
}

}  // namespace

TowerScalar::TowerScalar(TowerPtr tower, std::vector<Rational> coords)
    : tower_(std::move(tower)), coords_(std::move(coords)) {
  trim();
}

void TowerScalar::trim() {
  while (tower_) {
    const std::size_t h = coords_.size() / 2;
    if (!all_zero(CSpan(coords_).subspan(h))) break;
    coords_.resize(h);
    tower_ = tower_->parent;
  }
}

bool TowerScalar::is_zero() const { return all_zero(coords_); }

int TowerScalar::sign() const {
  if (!tower_) return sgn(coords_[0]);
  return sign_coords(coords_, depth(), chain_of(tower_.get()));
}

Interval TowerScalar::enclose(unsigned long bits) const {
  if (!tower_) return {coords_[0], coords_[0]};
  return enclose_coords(coords_, depth(), chain_of(tower_.get()), bits);
}

Interval TowerScalar::approx(const Rational& width) const {
  if (!tower_) return {coords_[0], coords_[0]};
  for (unsigned long bits = 32;; bits *= 2) {
    Interval iv = enclose(bits);
    if (iv.width() <= width) return iv;
  }
}

double TowerScalar::to_double() const {
  Interval iv = enclose(80);
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

TowerScalar TowerScalar::inverse() const {
  return TowerScalar(tower_, inv(coords_, depth(), chain_of(tower_.get())));
}

TowerScalar TowerScalar::operator-() const { return TowerScalar(tower_, scaled(coords_, Rational(-1))); }

TowerScalar operator+(const TowerScalar& a, const TowerScalar& b) {
  return combine(a, b, [](CSpan x, CSpan y, const TowerPtr&) { return add(x, y); });
}

TowerScalar operator-(const TowerScalar& a, const TowerScalar& b) {
  return combine(a, b, [](CSpan x, CSpan y, const TowerPtr&) { return sub(x, y); });
}

TowerScalar operator*(const TowerScalar& a, const TowerScalar& b) {
  if (a.is_rational()) return TowerScalar(b.tower(), scaled(b.coords(), a.rational_value()));
  if (b.is_rational()) return TowerScalar(a.tower(), scaled(a.coords(), b.rational_value()));
  return combine(a, b, [](CSpan x, CSpan y, const TowerPtr& top) {
    return mul(x, y, top ? top->depth : 0, chain_of(top.get()));
  });
}

TowerScalar operator/(const TowerScalar& a, const TowerScalar& b) { return a * b.inverse(); }

bool operator==(const TowerScalar& a, const TowerScalar& b) { return (a - b).is_zero(); }

std::strong_ordering operator<=>(const TowerScalar& a, const TowerScalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<TowerScalar> TowerScalar::radicands() const {
  std::vector<TowerScalar> out(depth());
  for (const TowerNode* n = tower_.get(); n != nullptr; n = n->parent.get()) {
    out[n->depth - 1] = TowerScalar(n->parent, n->radicand);
  }
  return out;
}

std::optional<TowerScalar> TowerScalar::sqrt_in_tower() const {
  auto root = try_sqrt(coords_, depth(), chain_of(tower_.get()));
  if (!root) return std::nullopt;
  return TowerScalar(tower_, std::move(*root));
}

std::string TowerScalar::to_string() const {
  if (!tower_) return rcg::to_string(coords_[0]);
  std::vector<std::string> gens;
  for (const auto& r : radicands()) gens.push_back("sqrt(" + r.to_string() + ")");
  Integer den = 1;
  for (const auto& c : coords_) {
    if (sgn(c) != 0) den = lcm(den, c.get_den());
  }
  std::string body;
  std::size_t terms = 0;
  for (std::size_t mask = 0; mask < coords_.size(); ++mask) {
    if (sgn(coords_[mask]) == 0) continue;
    Rational scaled_coef = coords_[mask] * Rational(den);
    Integer n = scaled_coef.get_num();
    const bool negative = sgn(n) < 0;
    if (negative) n = -n;
    std::string basis;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i & 1U) == 0) continue;
      if (!basis.empty()) basis += "*";
      basis += gens[i];
    }
    std::string term;
    if (basis.empty()) {
      term = n.get_str();
    } else if (n == 1) {
      term = basis;
    } else {
      term = n.get_str() + "*" + basis;
    }
    if (terms == 0) {
      body = negative ? "-" + term : term;
    } else {
      body += negative ? " - " : " + ";
      body += term;
    }
    ++terms;
  }
  if (den == 1) return body;
  if (terms == 1) return body + "/" + den.get_str();
  return "(" + body + ")/" + den.get_str();
}

TowerScalar sqrt_positive(const TowerScalar& a) {
  if (a.sign() <= 0) throw DomainError(DomainErrorKind::NotPositive, "square root of " + a.to_string());
  if (a.is_rational()) {
    if (auto r = exact_sqrt(a.rational_value())) return TowerScalar(*r);
    auto [s, k] = split_square_factor(a.rational_value());
    if (k == 1) return TowerScalar(s);
    return TowerScalar(make_node(nullptr, Coords{Rational(k)}), Coords{Rational(0), s});
  }
  if (auto root = a.sqrt_in_tower()) return root->sign() < 0 ? -*root : *root;
  const std::size_t d = a.depth();
  Coords gen(dim(d + 1));
  gen[dim(d)] = 1;
  return TowerScalar(make_node(a.tower(), Coords(a.coords().begin(), a.coords().end())), std::move(gen));
}

TowerScalar abs(const TowerScalar& a) { return a.sign() < 0 ? -a : a; }

}  // namespace rcg
