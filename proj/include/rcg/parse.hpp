#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/matrix.hpp"
#include "rcg/puiseux.hpp"
#include "rcg/tower.hpp"

namespace rcg {

// Scalar grammar (whitespace between tokens is ignored):
//   scalar := ["+" | "-"] term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | factor
//   factor := int | "sqrt" "(" scalar ")" | "X" ["^" exponent]
//           | "O" "(" "X" ["^" exponent] ")" | "(" scalar ")"
//   exponent := int | "(" ["-"] int ["/" int] ")"
// Division needs an exact single-term divisor; sqrt needs a constant or an
// exact single-term argument. Matrices separate entries by "," and rows by
// ";" or newlines; blank rows are skipped.

using ScalarValue = std::variant<TowerScalar, PuiseuxScalar>;

/// TowerScalar unless the text mentions X or O(...).
ScalarValue parse_scalar(std::string_view text);
/// Throws ParseError when the text mentions X.
TowerScalar parse_tower(std::string_view text);
PuiseuxScalar parse_puiseux(std::string_view text);

TowerMatrix parse_tower_matrix(std::string_view text);
PuiseuxMatrix parse_puiseux_matrix(std::string_view text);

/// One row per line, entries separated by ", ".
template <OrderedField F>
std::string format_matrix(const Matrix<F>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "\n";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m(i, j).to_string();
    }
  }
  return out;
}

}  // namespace rcg
