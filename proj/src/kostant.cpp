#include "rcg/kostant.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "mpfr_bounds.hpp"
#include "rcg/decomp.hpp"

namespace rcg {

const Rational hull_certification_slack = Rational(1, 100000) * Rational(1, 100000) * Rational(1, 100000) * Rational(1, 100000);

std::vector<LatticeVector> kostant_chars(std::size_t n) {
  if (n < 2) throw DomainError(DomainErrorKind::UnsupportedType, "kostant_chars needs n >= 2");
  const RootSystem rs = build_root_system("A" + std::to_string(n - 1));
  const ConeData cone = cone_data(rs);
  std::vector<LatticeVector> out;
  for (const auto& gamma : cone.gamma) {
    // delta_k = e_k - e_{k+1}, so the coefficient of e_m is c_m - c_{m-1}
    LatticeVector e(n, 0);
    for (std::size_t m = 0; m < n; ++m) {
      const long here = m < gamma.size() ? gamma[m] : 0;
      const long before = m > 0 ? gamma[m - 1] : 0;
      e[m] = here - before;
    }
    const long last = e.back();
    long g = 0;
    for (auto& c : e) {
      c -= last;
      g = std::gcd(g, c);
    }
    if (g != 0)
      for (auto& c : e) c /= g;
    out.push_back(std::move(e));
  }
  return out;
}

TowerMatrix rational_rotation(std::size_t n, std::size_t i, std::size_t j, const Rational& t) {
  TowerMatrix g = TowerMatrix::identity(n);
  const Rational c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
  g(i, i) = TowerScalar(c);
  g(j, j) = TowerScalar(c);
  g(i, j) = TowerScalar(-s);
  g(j, i) = TowerScalar(s);
  return g;
}

namespace {

constexpr mpfr_prec_t kHullPrecision = 256;

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Counter-clockwise hull without collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sgn(cross(hull[k - 2], hull[k - 1], p)) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && sgn(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Rational l1(const Rational& a, const Rational& b) { return abs(a) + abs(b); }

/// Negative L1 distance from p to the segment [s, t].
Rational segment_margin(const Point& p, const Point& s, const Point& t) {
  const Rational dx = t.x - s.x, dy = t.y - s.y;
  const Rational len2 = dx * dx + dy * dy;
  Rational u = sgn(len2) == 0 ? Rational(0) : Rational(((p.x - s.x) * dx + (p.y - s.y) * dy) / len2);
  if (u < 0) u = 0;
  if (u > 1) u = 1;
  return -l1(p.x - (s.x + u * dx), p.y - (s.y + u * dy));
}

/// Signed margin of p in the hull: positive inside, negative outside. Inside a
/// polygon it is the smallest edge function normalized by the edge's L1 length.
Rational hull_margin(const Point& p, const std::vector<Point>& hull) {
  if (hull.size() == 1) return -l1(p.x - hull[0].x, p.y - hull[0].y);
  if (hull.size() == 2) return segment_margin(p, hull[0], hull[1]);
  Rational best;
  bool first = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& s = hull[i];
    const Point& t = hull[(i + 1) % hull.size()];
    const Rational m = cross(s, t, p) / l1(t.x - s.x, t.y - s.y);
    if (first || m < best) best = m;
    first = false;
  }
  return best;
}

Rational log_mid(const TowerScalar& q, Rational& radius) {
  const Rational v = q.rational_value();
  const Interval iv = detail::log_bounds({v, v}, kHullPrecision);
  const Rational r = (iv.hi - iv.lo) / 2;
  if (r > radius) radius = r;
  return (iv.lo + iv.hi) / 2;
}

}  // namespace

bool hull_oracle(const TowerMatrix& a, const TowerMatrix& b) {
  const std::size_t n = a.rows();
  if (!a.is_square() || !b.is_square() || b.rows() != n)
    throw DomainError(DomainErrorKind::DimensionMismatch, "hull_oracle needs matrices of the same size");
  if (n != 2 && n != 3) throw DomainError(DomainErrorKind::UnsupportedType, "hull_oracle handles SL_2 and SL_3");
  if (!member_A(a) || !member_A(b)) throw DomainError(DomainErrorKind::NotInGroup, "hull_oracle needs elements of A");
  for (std::size_t i = 0; i < n; ++i)
    if (!a(i, i).is_rational() || !b(i, i).is_rational())
      throw DomainError(DomainErrorKind::UnsupportedType, "hull_oracle needs rational entries");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // a vertex of the orbit is decided exactly
  do {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = a(i, i) == b(perm[i], perm[i]);
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));

  Rational radius = 0;
  std::vector<Rational> la, lb;
  for (std::size_t i = 0; i < n; ++i) {
    la.push_back(log_mid(a(i, i), radius));
    lb.push_back(log_mid(b(i, i), radius));
  }
  // approximation error moves the margin by a small multiple of the radius
  if (radius * 1000000 > hull_certification_slack) throw PrecisionExhausted("log precision too low for hull certification");

  Rational margin;
  if (n == 2) {
    const Rational lo = std::min(lb[0], lb[1]), hi = std::max(lb[0], lb[1]);
    margin = std::min(Rational(la[0] - lo), Rational(hi - la[0]));
  } else {
    std::vector<Point> orbit;
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do orbit.push_back({lb[perm[0]], lb[perm[1]]});
    while (std::next_permutation(perm.begin(), perm.end()));
    margin = hull_margin({la[0], la[1]}, convex_hull(orbit));
  }
  if (margin > hull_certification_slack) return true;
  if (margin < -hull_certification_slack) return false;
  throw PrecisionExhausted("point is within the certification slack of the hull boundary");
}

OrbitSampleReport orbit_sample_check(const TowerMatrix& b, std::size_t trials, std::uint64_t seed) {
  const ChamberPoint<TowerScalar> bp(b);
  const std::size_t n = b.rows();
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  OrbitSampleReport report;
  bool first = true;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    TowerMatrix k = TowerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const long p = num(gen), q = den(gen);
        k = k * rational_rotation(n, i, j, make_rational(p, q));
      }
    const ChamberPoint<TowerScalar> ap = chamber_projection(a_component(TowerMatrix(k * b)));
    const auto slacks = kostant_slacks(ap, bp);
    bool ok = true;
    for (const auto& s : slacks) {
      if (sign(s) < 0) ok = false;
      const double d = s.to_double();
      if (first || d < report.min_slack) report.min_slack = d;
      if (first || d > report.max_slack) report.max_slack = d;
      first = false;
    }
    ++report.trials;
    if (!ok) ++report.violations;
  }
  return report;
}

}  // namespace rcg
