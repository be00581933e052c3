#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flp/algebroid.hpp"
#include "flp/check.hpp"
#include "flp/nambu.hpp"
#include "flp/pairs.hpp"

namespace flp {

inline constexpr const char* kVersion = "0.1.0";

struct PairData {
  CDO op;
  CoForm xi;

  friend bool operator==(const PairData&, const PairData&) = default;
};

/// One structure on a trivial bundle as read from a scenario file. The
/// anchor lives in `bundle`; for pair scenarios it is derived from the pair
/// and the file's anchor table must be empty.
struct Scenario {
  std::string name;
  AnchoredBundle bundle;
  std::optional<Connection> connection;
  std::optional<BracketTable> bracket;
  std::optional<PairData> pair;
  std::vector<std::string> checks;
  std::optional<std::int64_t> seed;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws SchemaError (with the offending field path) or ParseError.
Scenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

NambuStructure nambu_from_json(std::string_view text);
std::string nambu_to_json(const NambuStructure& nambu);
NambuStructure load_nambu(const std::filesystem::path& path);
void save_nambu(const NambuStructure& nambu, const std::filesystem::path& path);

/// Parses "x1*e1 + e3" over e1..e_rank with coefficients in x1..x_m.
/// Throws ParseError unless the expression is linear in the frame.
Section parse_section(std::string_view text, int rank, int base_dim);
/// Comma-separated list of section expressions.
std::vector<Section> parse_sections(std::string_view text, int rank, int base_dim);

/// The connection a scenario determines: the explicit one, or the pair
/// construction. Throws DataError with "missing connection" otherwise.
Connection scenario_connection(const Scenario& scenario);
/// The explicit bracket table, or the one induced by the scenario's connection.
BracketTable scenario_bracket(const Scenario& scenario);

struct RunReport {
  std::string scenario;
  std::string version = kVersion;
  std::vector<CheckReport> checks;
  std::optional<std::int64_t> seed;

  bool passed() const;
};

/// condition1, bianchi, anchor_compat, leibniz, jacobi, rank.
const std::vector<std::string>& default_checks();
/// The defaults plus structure_relations.
const std::vector<std::string>& available_checks();

/// Runs `selection` (or the scenario's own list, or the defaults) in order.
/// Without a connection the defaults skip condition1 and bianchi.
/// Throws DataError for an unknown check or missing data.
RunReport run_checks(const Scenario& scenario, const std::vector<std::string>& selection = {});

/// Runs the volume-form criterion and, on request, linearity, the
/// fundamental identity and the defining relations against a bracket.
RunReport run_nambu_checks(const std::string& name, const NambuStructure& nambu, bool linearity, bool fundamental,
                           const std::optional<BracketTable>& against = std::nullopt);

/// Byte-stable renderings; with `timings` off every millis field is 0.
std::string report_json(const RunReport& report, bool timings = true);
std::string report_text(const RunReport& report, bool timings = true);

}  // namespace flp
