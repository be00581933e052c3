#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "flp/error.hpp"
#include "flp/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw flp::DataError("cannot write " + output);
    out << text;
  }
}

int print_report(const flp::RunReport& report, const std::string& format, bool timings) {
  std::cout << (format == "json" ? flp::report_json(report, timings) : flp::report_text(report, timings));
  return report.passed() ? kExitPass : kExitFail;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string id = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!id.empty()) out.push_back(id);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<flp::Section> sections_for(const flp::Scenario& s, const std::string& text, std::size_t count,
                                       const char* what) {
  auto out = flp::parse_sections(text, s.bundle.rank(), s.bundle.base_dim());
  if (out.size() != count)
    throw flp::DataError(std::string(what) + " takes " + std::to_string(count) + " sections, got " +
                         std::to_string(out.size()));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filippov algebroid and linear Nambu-Poisson toolkit", "flp"};
  app.set_version_flag("--version", flp::kVersion);
  app.require_subcommand(1);

  std::string file;
  std::string output;
  std::string format = "text";
  bool no_timings = false;

  auto* validate = app.add_subcommand("validate", "Check a scenario (or Nambu) file against its schema");
  bool validate_nambu = false;
  validate->add_option("file", file, "Scenario file")->required();
  validate->add_flag("--nambu", validate_nambu, "Validate a Nambu file instead");

  auto* check = app.add_subcommand("check", "Run axiom checks on a scenario");
  std::string checks;
  check->add_option("scenario", file, "Scenario file")->required();
  check->add_option("--checks", checks, "Comma-separated check ids");
  check->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--no-timings", no_timings, "Report every millis field as 0");

  auto* bracket = app.add_subcommand("bracket", "Evaluate the n-bracket on sections");
  std::string args;
  bracket->add_option("scenario", file, "Scenario file")->required();
  bracket->add_option("--args", args, "Comma-separated section expressions")->required();

  auto* curvature = app.add_subcommand("curvature", "Evaluate the curvature R(X, W)(Z)");
  std::string xs;
  std::string ws;
  std::string zs;
  curvature->add_option("scenario", file, "Scenario file")->required();
  curvature->add_option("--x", xs, "n-1 sections X_1..X_(n-1)")->required();
  curvature->add_option("--w", ws, "n-1 sections whose wedge is W")->required();
  curvature->add_option("--z", zs, "Section Z")->required();

  auto* realize = app.add_subcommand("realize", "Build a connection whose induced bracket is the scenario's bracket");
  std::string base = "zero";
  realize->add_option("scenario", file, "Scenario with a bracket table")->required();
  realize->add_option("--base", base, "Base connection: zero or a scenario file carrying one");
  realize->add_option("-o,--output", output, "Output scenario (stdout by default)");

  auto* from_pair = app.add_subcommand("from-pair", "Build the connection of a (D, xi) pair");
  from_pair->add_option("scenario", file, "Scenario with a pair")->required();
  from_pair->add_option("-o,--output", output, "Output scenario (stdout by default)");

  auto* dualize = app.add_subcommand("dualize", "Dualize a rank-n Filippov n-algebroid into an n-vector on A*");
  dualize->add_option("scenario", file, "Scenario file")->required();
  dualize->add_option("-o,--output", output, "Output Nambu file (stdout by default)");

  auto* check_nambu = app.add_subcommand("check-nambu", "Check the Nambu-Poisson property of an n-vector");
  bool fundamental = false;
  bool linearity = false;
  check_nambu->add_option("file", file, "Nambu file")->required();
  check_nambu->add_flag("--fundamental", fundamental, "Also expand the fundamental identity");
  check_nambu->add_flag("--linearity", linearity, "Also check the linearity conditions");
  std::string against;
  check_nambu->add_option("--against", against, "Scenario whose bracket the n-vector should dualize");
  check_nambu->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check_nambu->add_flag("--no-timings", no_timings, "Report every millis field as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (validate->parsed()) {
      if (validate_nambu) {
        const auto n = flp::load_nambu(file);
        std::cout << "valid Nambu file: n=" << n.fiber_dim << ", m=" << n.base_dim << "\n";
      } else {
        const auto s = flp::load_scenario(file);
        std::cout << "valid scenario: " << s.name << "\n";
      }
      return kExitPass;
    }
    if (check->parsed()) {
      const auto s = flp::load_scenario(file);
      return print_report(flp::run_checks(s, split_ids(checks)), format, !no_timings);
    }
    if (bracket->parsed()) {
      const auto s = flp::load_scenario(file);
      const auto sections = sections_for(s, args, static_cast<std::size_t>(s.bundle.arity()), "bracket");
      const flp::Section value = s.connection || s.pair
                                     ? flp::bracket_from_connection(flp::scenario_connection(s), sections)
                                     : flp::scenario_bracket(s).evaluate(sections);
      std::cout << value.to_string() << "\n";
      return kExitPass;
    }
    if (curvature->parsed()) {
      const auto s = flp::load_scenario(file);
      const auto n = static_cast<std::size_t>(s.bundle.arity() - 1);
      const auto x = sections_for(s, xs, n, "--x");
      const auto w = sections_for(s, ws, n, "--w");
      const auto z = sections_for(s, zs, 1, "--z");
      const auto nabla = flp::scenario_connection(s);
      std::cout << flp::curvature(nabla, x, flp::wedge_sections(w, s.bundle.rank()), z.front()).to_string() << "\n";
      return kExitPass;
    }
    if (realize->parsed()) {
      auto s = flp::load_scenario(file);
      if (!s.bracket) throw flp::DataError("missing bracket");
      flp::Connection start = flp::zero_connection(s.bundle);
      if (base != "zero") {
        start = flp::scenario_connection(flp::load_scenario(base));
        if (!(start.bundle() == s.bundle)) throw flp::DataError("base connection lives on a different anchored bundle");
      }
      s.connection = flp::realize_connection(*s.bracket, start);
      s.pair.reset();
      emit(flp::scenario_to_json(s), output);
      return kExitPass;
    }
    if (from_pair->parsed()) {
      auto s = flp::load_scenario(file);
      if (!s.pair) throw flp::DataError("missing pair");
      const auto p = flp::build_pair_structure(s.pair->op, s.pair->xi);
      s.bundle = p.connection.bundle();
      s.connection = p.connection;
      s.bracket.reset();
      s.pair.reset();
      emit(flp::scenario_to_json(s), output);
      return kExitPass;
    }
    if (dualize->parsed()) {
      const auto s = flp::load_scenario(file);
      emit(flp::nambu_to_json(flp::dualize(flp::scenario_bracket(s))), output);
      return kExitPass;
    }
    if (check_nambu->parsed()) {
      const auto n = flp::load_nambu(file);
      const std::string name = std::filesystem::path(file).stem().string();
      std::optional<flp::BracketTable> bracket_table;
      if (!against.empty()) bracket_table = flp::scenario_bracket(flp::load_scenario(against));
      return print_report(flp::run_nambu_checks(name, n, linearity, fundamental, bracket_table), format, !no_timings);
    }
  } catch (const flp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
