#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rcg/rational.hpp"

namespace rcg::cli {

enum class FieldKind { Tower, Puiseux };
enum class Format { Text, Json };

struct Config {
  FieldKind field = FieldKind::Tower;
  /// Relative truncation order for Puiseux arithmetic; always > 0.
  Rational trunc{8};
  Format format = Format::Text;
  std::uint64_t seed = 0;
  /// Required matrix size, when set.
  std::optional<std::size_t> n;
  /// Orbit samples drawn by kostant-check (tower field only).
  std::size_t samples = 0;
};

/// Config defaults, with the truncation order taken from RCG_TRUNC when set.
/// Throws ParseError when RCG_TRUNC is not a positive rational.
Config default_config();

/// Positive rational from text such as "8" or "17/2"; throws ParseError otherwise.
Rational parse_trunc(const std::string& text);

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Input texts by name: "g" for iwasawa, cartan and bruhat; "x" and "y" for
/// bch; "x" for jm-triple; "a" and "b" for kostant-check; "type" for roots.
using Inputs = std::map<std::string, std::string>;

/// Runs one command. Exit codes: 0 success, 1 malformed input or usage,
/// 2 domain error, 3 truncation or precision too low, 4 internal failure.
/// Every reported result is verified before it is rendered.
RunResult run(const std::string& command, const Config& config, const Inputs& inputs);

}  // namespace rcg::cli
