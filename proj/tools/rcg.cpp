#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rcg/cli.hpp"
#include "rcg/error.hpp"

namespace {

/// "-" reads standard input.
std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decompositions in SL_n over real closed fields"};
  app.require_subcommand(1);

  rcg::cli::Config config;
  try {
    config = rcg::cli::default_config();
  } catch (const rcg::ParseError& e) {
    std::cerr << "error: RCG_TRUNC: " << e.what() << "\n";
    return 1;
  }

  std::string field = "tower", format = "text", trunc;
  std::size_t n = 0;
  app.add_option("--field", field, "Scalar field")->check(CLI::IsMember({"tower", "puiseux"}));
  app.add_option("--trunc", trunc, "Relative truncation order for Puiseux arithmetic (default 8 or RCG_TRUNC)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", config.seed, "Seed for sampling");
  app.add_option("--n", n, "Required matrix size");
  app.fallthrough();

  rcg::cli::Inputs paths;
  const auto file_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", paths["g"], "Matrix file, '-' for stdin")->required();
    return sub;
  };
  file_command("iwasawa", "g = k a u");
  file_command("cartan", "g = k1 a k2");
  file_command("bruhat", "g = b1 w b2");
  CLI::App* bch = app.add_subcommand("bch", "z with exp z = exp x exp y");
  bch->add_option("--x", paths["x"], "Matrix file")->required();
  bch->add_option("--y", paths["y"], "Matrix file")->required();
  CLI::App* jm = app.add_subcommand("jm-triple", "sl2-triple through a nilpotent x");
  jm->add_option("file", paths["x"], "Matrix file, '-' for stdin")->required();
  CLI::App* kostant = app.add_subcommand("kostant-check", "Is a an A-component of K b?");
  kostant->add_option("--a", paths["a"], "Matrix file")->required();
  kostant->add_option("--b", paths["b"], "Matrix file")->required();
  kostant->add_option("--samples", config.samples, "Orbit samples to draw");
  std::string type;
  CLI::App* roots = app.add_subcommand("roots", "Root system data");
  roots->add_option("--type", type, "A1..A9, B2 or G2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  config.field = field == "puiseux" ? rcg::cli::FieldKind::Puiseux : rcg::cli::FieldKind::Tower;
  config.format = format == "json" ? rcg::cli::Format::Json : rcg::cli::Format::Text;
  if (n > 0) config.n = n;
  const std::string command = app.get_subcommands().front()->get_name();

  rcg::cli::Inputs inputs;
  try {
    if (!trunc.empty()) config.trunc = rcg::cli::parse_trunc(trunc);
    if (command == "roots") {
      inputs["type"] = type;
    } else {
      for (const auto& [key, path] : paths)
        if (!path.empty()) inputs[key] = read_input(path);
    }
  } catch (const rcg::ParseError& e) {
    std::cerr << "error: --trunc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const rcg::cli::RunResult r = rcg::cli::run(command, config, inputs);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
