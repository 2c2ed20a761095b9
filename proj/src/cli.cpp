#include "rcg/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "json.hpp"
#include "rcg/decomp.hpp"
#include "rcg/jm.hpp"
#include "rcg/kostant.hpp"
#include "rcg/nilpotent.hpp"
#include "rcg/parse.hpp"
#include "rcg/rootsys.hpp"

namespace rcg::cli {
namespace {

using Json = nlohmann::ordered_json;

/// A computed result failed its own verification.
class CertificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad command line or missing input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kAttempts = 4;

/// Lowest relative order through which every checked residual is known to vanish.
struct Residuals {
  bool exact = true;
  Rational order{0};

  void add(const TowerMatrix& m, const Rational&, const char* what) {
    if (!m.known_zero()) throw CertificationFailure(std::string(what) + " does not hold");
  }

  void add(const PuiseuxMatrix& m, const Rational& scale, const char* what) {
    for (const auto& x : m.data()) {
      if (!x.known_zero()) throw CertificationFailure(std::string(what) + " does not hold");
      if (!x.tail()) continue;
      const Rational o = scale - *x.tail();
      if (exact || o < order) order = o;
      exact = false;
    }
  }
};

Rational scale_of(const TowerMatrix&) { return Rational(0); }
Rational scale_of(const PuiseuxMatrix& m) { return max_lead(m); }

template <OrderedField F>
bool exactly_zero(const F& x) {
  return known_zero(x) && is_exact(x);
}

template <OrderedField F>
void require_upper(const Matrix<F>& m, bool unit, const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (!exactly_zero(m(i, j))) throw CertificationFailure(std::string(what) + " is not upper triangular");
    if (unit && !exactly_zero(F(m(i, i) - F(Rational(1)))))
      throw CertificationFailure(std::string(what) + " is not unipotent");
  }
}

template <OrderedField F>
void require_positive_diagonal(const Matrix<F>& a, bool decreasing, const char* what) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && !exactly_zero(a(i, j))) throw CertificationFailure(std::string(what) + " is not diagonal");
    if (sign(a(i, i)) <= 0) throw CertificationFailure(std::string(what) + " has a non-positive diagonal entry");
    if (decreasing && i + 1 < a.rows() && sign(a(i, i) - a(i + 1, i + 1)) <= 0)
      throw CertificationFailure(std::string(what) + " is not strictly decreasing");
  }
}

template <OrderedField F>
Matrix<F> scalar_matrix(const F& x) {
  return Matrix<F>(1, 1, {x});
}

template <OrderedField F>
Json matrix_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json lattice_json(const std::vector<LatticeVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v);
  return out;
}

template <OrderedField F>
struct FieldTraits;

template <>
struct FieldTraits<TowerScalar> {
  static constexpr const char* name = "tower";
  static TowerMatrix parse(const std::string& text) { return parse_tower_matrix(text); }
};

template <>
struct FieldTraits<PuiseuxScalar> {
  static constexpr const char* name = "puiseux";
  static PuiseuxMatrix parse(const std::string& text) { return parse_puiseux_matrix(text); }
};

const std::string& input(const Inputs& inputs, const std::string& key) {
  const auto it = inputs.find(key);
  if (it == inputs.end()) throw UsageError("missing input '" + key + "'");
  return it->second;
}

template <OrderedField F>
Matrix<F> matrix_input(const Config& config, const Inputs& inputs, const std::string& key) {
  Matrix<F> m = FieldTraits<F>::parse(input(inputs, key));
  if (config.n && m.rows() != *config.n)
    throw DomainError(DomainErrorKind::DimensionMismatch, "input '" + key + "' is " + std::to_string(m.rows()) + "x" +
                                                              std::to_string(m.cols()) + ", expected n = " +
                                                              std::to_string(*config.n));
  return m;
}

/// Body computes a report under a truncation and returns it with its residuals.
using Body = std::function<Json(const Truncation&, Residuals&)>;

/// Runs the body once over the tower field. Over the Puiseux field, raises the
/// working truncation until the residuals vanish through config.trunc.
Json certified(const Config& config, bool series, const Body& body) {
  Truncation t{config.trunc};
  Rational achieved{-1};
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Residuals res;
    Json report;
    try {
      report = body(t, res);
    } catch (const IndeterminateSign&) {
      if (!series || attempt + 1 == kAttempts) throw;
      t.relative_order = 2 * t.relative_order + config.trunc;
      continue;
    }
    if (!series) {
      report["certified_order"] = "exact";
      return report;
    }
    if (res.exact || res.order >= config.trunc) {
      report["certified_order"] = res.exact ? std::string("exact") : to_string(res.order);
      return report;
    }
    achieved = res.order;
    t.relative_order = 2 * t.relative_order + (config.trunc - std::max(achieved, Rational(0)));
  }
  throw IndeterminateSign("result certified only through relative order " + to_string(achieved));
}

template <OrderedField F>
Json run_iwasawa(const Config& config, const Inputs& inputs) {
  const Matrix<F> g = matrix_input<F>(config, inputs, "g");
  const std::size_t n = g.rows();
  return certified(config, std::is_same_v<F, PuiseuxScalar>, [&](const Truncation& t, Residuals& res) {
    const KAUResult<F> r = iwasawa_kau(g, t);
    res.add(Matrix<F>(r.k * r.a * r.u - g), scale_of(g), "g = k a u");
    res.add(Matrix<F>(r.k * r.k.transpose() - Matrix<F>::identity(n)), Rational(0), "k k^T = I");
    res.add(scalar_matrix(F(det(r.k) - F(Rational(1)))), Rational(0), "det k = 1");
    require_positive_diagonal(r.a, false, "a");
    require_upper(r.u, true, "u");
    Json out;
    out["k"] = matrix_json(r.k);
    out["a"] = matrix_json(r.a);
    out["u"] = matrix_json(r.u);
    return out;
  });
}

Json run_cartan_tower(const Config& config, const Inputs& inputs) {
  const TowerMatrix g = matrix_input<TowerScalar>(config, inputs, "g");
  const std::size_t n = g.rows();
  return certified(config, false, [&](const Truncation&, Residuals& res) {
    const KAKResult<TowerScalar> r = cartan_kak(g);
    res.add(TowerMatrix(r.k1 * r.a * r.k2 - g), Rational(0), "g = k1 a k2");
    for (const auto* k : {&r.k1, &r.k2}) {
      res.add(TowerMatrix(*k * k->transpose() - TowerMatrix::identity(n)), Rational(0), "k k^T = I");
      res.add(scalar_matrix(TowerScalar(det(*k) - TowerScalar(1))), Rational(0), "det k = 1");
    }
    require_positive_diagonal(r.a, true, "a");
    Json out;
    out["k1"] = matrix_json(r.k1);
    out["a"] = matrix_json(r.a);
    out["k2"] = matrix_json(r.k2);
    return out;
  });
}

Json run_cartan_puiseux(const Config& config, const Inputs& inputs) {
  const PuiseuxMatrix g = matrix_input<PuiseuxScalar>(config, inputs, "g");
  const KAKResult<PuiseuxScalar> r = cartan_kak(g, config.trunc);
  // recomputed here rather than trusted from the decomposition
  const Rational order = kak_certified_order(g, r);
  if (order < config.trunc) throw IndeterminateSign("result certified only through relative order " + to_string(order));
  Json out;
  out["k1"] = matrix_json(r.k1);
  out["a"] = matrix_json(r.a);
  out["k2"] = matrix_json(r.k2);
  out["certified_order"] = order >= Rational(1000000) ? std::string("exact") : to_string(order);
  return out;
}

template <OrderedField F>
Json run_bruhat(const Config& config, const Inputs& inputs) {
  const Matrix<F> g = matrix_input<F>(config, inputs, "g");
  const std::size_t n = g.rows();
  return certified(config, std::is_same_v<F, PuiseuxScalar>, [&](const Truncation& t, Residuals& res) {
    const BruhatResult<F> r = bruhat(g, t);
    res.add(Matrix<F>(r.b1 * r.w * r.b2 - g), scale_of(g), "g = b1 w b2");
    require_upper(r.b1, false, "b1");
    require_upper(r.b2, false, "b2");
    std::vector<std::size_t> perm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!exactly_zero(r.w(i, j))) perm[i] = j;
    if (!(weyl_representative<F>(perm) == r.w)) throw CertificationFailure("w is not a canonical Weyl representative");
    Json cell = Json::array();
    for (const auto p : perm) cell.push_back(p + 1);
    Json out;
    out["b1"] = matrix_json(r.b1);
    out["w"] = matrix_json(r.w);
    out["b2"] = matrix_json(r.b2);
    out["permutation"] = std::move(cell);
    return out;
  });
}

template <OrderedField F>
Json run_bch(const Config& config, const Inputs& inputs) {
  const Matrix<F> x = matrix_input<F>(config, inputs, "x");
  const Matrix<F> y = matrix_input<F>(config, inputs, "y");
  if (x.rows() != y.rows()) throw DomainError(DomainErrorKind::DimensionMismatch, "x and y differ in size");
  return certified(config, std::is_same_v<F, PuiseuxScalar>, [&](const Truncation&, Residuals& res) {
    const Matrix<F> z = bch(x, y);
    const Matrix<F> target = exp_nilpotent(x) * exp_nilpotent(y);
    res.add(Matrix<F>(exp_nilpotent(z) - target), scale_of(target), "exp z = exp x exp y");
    Json out;
    out["z"] = matrix_json(z);
    return out;
  });
}

template <OrderedField F>
Json run_jm(const Config& config, const Inputs& inputs) {
  const Matrix<F> x = matrix_input<F>(config, inputs, "x");
  return certified(config, std::is_same_v<F, PuiseuxScalar>, [&](const Truncation&, Residuals& res) {
    const Sl2Triple<F> tr = jacobson_morozov(x);
    const Rational scale = std::max({scale_of(tr.x), scale_of(tr.h), scale_of(tr.y)});
    res.add(Matrix<F>(commutator(tr.h, tr.x) - F(Rational(2)) * tr.x), scale, "[h, x] = 2x");
    res.add(Matrix<F>(commutator(tr.h, tr.y) + F(Rational(2)) * tr.y), scale, "[h, y] = -2y");
    res.add(Matrix<F>(commutator(tr.x, tr.y) - tr.h), scale, "[x, y] = h");
    Json out;
    out["x"] = matrix_json(tr.x);
    out["h"] = matrix_json(tr.h);
    out["y"] = matrix_json(tr.y);
    return out;
  });
}

template <OrderedField F>
Json run_kostant(const Config& config, const Inputs& inputs) {
  const ChamberPoint<F> a(matrix_input<F>(config, inputs, "a"));
  const ChamberPoint<F> b(matrix_input<F>(config, inputs, "b"));
  const auto chars = kostant_chars(b.n());
  const auto slacks = kostant_slacks(a, b);
  bool member = true;
  Json slack_json = Json::array();
  for (std::size_t i = 0; i < slacks.size(); ++i) {
    if (!(slacks[i] == F(character_value(chars[i], b.matrix()) - character_value(chars[i], a.matrix()))))
      throw CertificationFailure("slack does not match the characters");
    if (sign(slacks[i]) < 0) member = false;
    slack_json.push_back(slacks[i].to_string());
  }
  Json out;
  out["characters"] = lattice_json(chars);
  out["slacks"] = std::move(slack_json);
  out["member"] = member;
  if constexpr (std::is_same_v<F, TowerScalar>) {
    if (a.n() <= 3) {
      try {
        if (hull_oracle(a.matrix(), b.matrix()) != member) throw CertificationFailure("hull oracle disagrees");
        out["hull_oracle"] = "agrees";
      } catch (const PrecisionExhausted&) {
        out["hull_oracle"] = "inconclusive";
      } catch (const DomainError&) {
        out["hull_oracle"] = "not applicable";
      }
    }
    if (config.samples > 0) {
      const OrbitSampleReport r = orbit_sample_check(b.matrix(), config.samples, config.seed);
      char buf[64];
      Json orbit;
      orbit["seed"] = config.seed;
      orbit["trials"] = r.trials;
      orbit["violations"] = r.violations;
      std::snprintf(buf, sizeof buf, "%.6g", r.min_slack);
      orbit["min_slack"] = buf;
      std::snprintf(buf, sizeof buf, "%.6g", r.max_slack);
      orbit["max_slack"] = buf;
      out["orbit_sampling"] = std::move(orbit);
    }
  } else if (config.samples > 0) {
    throw UsageError("orbit sampling needs --field tower");
  }
  return out;
}

Json run_roots(const Inputs& inputs) {
  const RootSystem rs = build_root_system(input(inputs, "type"));
  if (!is_crystallographic(rs)) throw CertificationFailure("root system is not crystallographic");
  const WeylGroup w = weyl_group(rs);
  const ConeData cone = cone_data(rs);
  const LatticeVector eta = eta_plus(rs);
  const std::vector<Rational> coeffs = eta_plus_expansion(rs);
  std::vector<Rational> sum(rs.rank, Rational(0));
  for (std::size_t l = 0; l < cone.gamma.size(); ++l) {
    if (sgn(rs.inner(cone.gamma[l], rs.simple(l))) <= 0) throw CertificationFailure("<gamma, delta> is not positive");
    for (std::size_t k = 0; k < rs.rank; ++k) sum[k] += coeffs[l] * Rational(cone.gamma[l][k]);
  }
  for (std::size_t k = 0; k < rs.rank; ++k)
    if (sum[k] != Rational(eta[k])) throw CertificationFailure("eta+ expansion does not reconstruct eta+");
  Json expansion = Json::array();
  for (const auto& c : coeffs) expansion.push_back(to_string(c));
  Json out;
  out["type"] = rs.type;
  out["rank"] = rs.rank;
  out["roots"] = lattice_json(rs.roots);
  out["positive_roots"] = lattice_json(rs.positive_roots);
  out["weyl_order"] = w.order();
  out["gamma"] = lattice_json(cone.gamma);
  out["eta_plus"] = eta;
  out["eta_plus_expansion"] = std::move(expansion);
  return out;
}

template <OrderedField F>
Json run_matrix_command(const std::string& command, const Config& config, const Inputs& inputs) {
  if (command == "iwasawa") return run_iwasawa<F>(config, inputs);
  if (command == "bruhat") return run_bruhat<F>(config, inputs);
  if (command == "bch") return run_bch<F>(config, inputs);
  if (command == "jm-triple") return run_jm<F>(config, inputs);
  if (command == "kostant-check") return run_kostant<F>(config, inputs);
  if (command == "cartan") {
    if constexpr (std::is_same_v<F, TowerScalar>)
      return run_cartan_tower(config, inputs);
    else
      return run_cartan_puiseux(config, inputs);
  }
  throw UsageError("unknown command '" + command + "'");
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string join(const Json& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += scalar_text(row[i]);
  }
  return out;
}

/// Objects nest by indentation, arrays of arrays print one row per line and
/// flat arrays print on one line.
void render_text(const Json& report, const std::string& indent, std::string& out) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_object()) {
      out += indent + key + ":\n";
      render_text(value, indent + "  ", out);
    } else if (value.is_array() && !value.empty() && value.front().is_array()) {
      out += indent + key + ":\n";
      for (const auto& row : value) out += indent + "  " + join(row) + "\n";
    } else if (value.is_array()) {
      out += indent + key + ": " + join(value) + "\n";
    } else {
      out += indent + key + ": " + scalar_text(value) + "\n";
    }
  }
}

}  // namespace

Rational parse_trunc(const std::string& text) {
  const TowerScalar v = parse_tower(text);
  if (!v.is_rational() || sgn(v.rational_value()) <= 0)
    throw ParseError("truncation order must be a positive rational, got '" + text + "'", 1, 1);
  return v.rational_value();
}

Config default_config() {
  Config c;
  if (const char* env = std::getenv("RCG_TRUNC")) c.trunc = parse_trunc(env);
  return c;
}

RunResult run(const std::string& command, const Config& config, const Inputs& inputs) {
  RunResult result;
  try {
    if (sgn(config.trunc) <= 0) throw UsageError("truncation order must be positive");
    Json report;
    report["command"] = command;
    Json body;
    if (command == "roots") {
      body = run_roots(inputs);
    } else {
      report["field"] = config.field == FieldKind::Tower ? FieldTraits<TowerScalar>::name
                                                         : FieldTraits<PuiseuxScalar>::name;
      if (config.field == FieldKind::Puiseux) report["trunc"] = to_string(config.trunc);
      body = config.field == FieldKind::Tower ? run_matrix_command<TowerScalar>(command, config, inputs)
                                              : run_matrix_command<PuiseuxScalar>(command, config, inputs);
    }
    report.update(body);
    if (config.format == Format::Json) {
      result.out = report.dump(2) + "\n";
    } else {
      render_text(report, "", result.out);
    }
  } catch (const ParseError& e) {
    result = {1, "", std::string("error: parse error: ") + e.what() + "\n"};
  } catch (const UsageError& e) {
    result = {1, "", std::string("error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    result = {2, "", std::string("error: ") + e.what() + "\n"};
  } catch (const IndeterminateSign& e) {
    result = {3, "", std::string("error: ") + e.what() + "\nhint: raise --trunc (current value " +
                         to_string(config.trunc) + ")\n"};
  } catch (const PrecisionExhausted& e) {
    result = {3, "", std::string("error: ") + e.what() + "\nhint: raise --trunc (current value " +
                         to_string(config.trunc) + ")\n"};
  } catch (const std::exception& e) {
    result = {4, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace rcg::cli
