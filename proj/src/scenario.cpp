#include "flp/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flp/error.hpp"
#include "flp/parse.hpp"

namespace flp {

namespace {

using Json = nlohmann::ordered_json;

std::string child(const std::string& path, const std::string& key) { return path + "[\"" + key + "\"]"; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

const Json& require(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int require_int(const Json& j, const std::string& path, int min) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < min) throw SchemaError(path, "must be at least " + std::to_string(min));
  if (v > 1000) throw SchemaError(path, "value too large");
  return static_cast<int>(v);
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void require_array(const Json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (j.size() != size) throw SchemaError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
      throw SchemaError(child(path, k), "unknown field");
  }
}

Scalar expression(const Json& j, const std::string& path, const NameTable& names) {
  if (!j.is_string()) throw SchemaError(path, "expected an expression string");
  try {
    return parse_scalar(j.get<std::string>(), names);
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

/// "1,2,3" as 0-based indices in 1..bound.
std::vector<int> index_list(const std::string& text, const std::string& path, std::size_t count, int bound,
                            bool increasing) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw SchemaError(path, "malformed index list \"" + text + "\"");
    const int v = item.size() > 6 ? bound + 1 : std::stoi(item);
    if (v < 1 || v > bound) throw SchemaError(path, "index " + item + " outside 1.." + std::to_string(bound));
    out.push_back(v - 1);
  }
  if (!text.empty() && text.back() == ',') throw SchemaError(path, "malformed index list \"" + text + "\"");
  if (out.size() != count)
    throw SchemaError(path, "expected " + std::to_string(count) + " indices, got " + std::to_string(out.size()));
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (increasing && out[k - 1] >= out[k]) throw SchemaError(path, "indices must be strictly increasing");
    if (std::find(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out[k]) != out.begin() + static_cast<std::ptrdiff_t>(k))
      throw SchemaError(path, "repeated index");
  }
  return out;
}

std::string index_key(const std::vector<int>& slots) {
  std::string out;
  for (int s : slots) out += (out.empty() ? "" : ",") + std::to_string(s + 1);
  return out;
}

Section section_array(const Json& j, const std::string& path, int rank, const NameTable& names) {
  require_array(j, path, static_cast<std::size_t>(rank));
  Section out(rank);
  for (int k = 0; k < rank; ++k) out[k] = expression(j[static_cast<std::size_t>(k)], child(path, static_cast<std::size_t>(k)), names);
  return out;
}

Json section_json(const std::vector<Scalar>& coefficients) {
  Json out = Json::array();
  for (const auto& c : coefficients) out.push_back(c.to_string());
  return out;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

}  // namespace

Scenario scenario_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const std::string root = "$";
  require_object(doc, root);
  only_keys(doc, root, {"name", "base_dim", "arity", "rank", "anchor", "connection", "bracket", "pair", "options"});

  Scenario s;
  const Json& name = require(doc, root, "name");
  if (!name.is_string()) throw SchemaError(child(root, "name"), "expected a string");
  s.name = name.get<std::string>();
  const int m = require_int(require(doc, root, "base_dim"), child(root, "base_dim"), 1);
  const int n = require_int(require(doc, root, "arity"), child(root, "arity"), 2);
  const int r = require_int(require(doc, root, "rank"), child(root, "rank"), 1);
  s.bundle = AnchoredBundle(m, n, r);
  const NameTable names = NameTable::coordinates(m);
  const auto wedge_count = static_cast<std::size_t>(n - 1);

  if (auto it = doc.find("anchor"); it != doc.end()) {
    const std::string path = child(root, "anchor");
    require_object(*it, path);
    for (const auto& [key, value] : it->items()) {
      const std::string at = child(path, key);
      const Blade wedge = index_list(key, at, wedge_count, r, true);
      const Section v = section_array(value, at, m, names);
      s.bundle.set_anchor(wedge, VectorField(Space::base(m), v.coefficients()));
    }
  }

  if (auto it = doc.find("connection"); it != doc.end()) {
    const std::string path = child(root, "connection");
    require_object(*it, path);
    Connection nabla(s.bundle);
    for (const auto& [key, value] : it->items()) {
      const std::string at = child(path, key);
      const auto bar = key.find('|');
      if (bar == std::string::npos) throw SchemaError(at, "connection key must read \"i1,...,i(n-1)|j\"");
      const Blade wedge = index_list(key.substr(0, bar), at, wedge_count, r, true);
      const int j = index_list(key.substr(bar + 1), at, 1, r, true).front();
      nabla.set(wedge, j, section_array(value, at, r, names));
    }
    s.connection = std::move(nabla);
  }

  if (auto it = doc.find("bracket"); it != doc.end()) {
    const std::string path = child(root, "bracket");
    require_object(*it, path);
    BracketTable table(s.bundle);
    for (const auto& [key, value] : it->items()) {
      const std::string at = child(path, key);
      table.set(index_list(key, at, static_cast<std::size_t>(n), r, false), section_array(value, at, r, names));
    }
    s.bracket = std::move(table);
  }

  if (auto it = doc.find("pair"); it != doc.end()) {
    const std::string path = child(root, "pair");
    require_object(*it, path);
    only_keys(*it, path, {"symbol", "matrix", "xi"});
    if (!s.bundle.anchor_is_zero()) throw SchemaError(child(root, "anchor"), "a pair scenario derives its anchor; leave it empty");
    if (s.connection) throw SchemaError(child(root, "connection"), "a pair scenario derives its connection");
    const Section symbol = section_array(require(*it, path, "symbol"), child(path, "symbol"), m, names);
    const Json& matrix = require(*it, path, "matrix");
    const std::string mpath = child(path, "matrix");
    require_array(matrix, mpath, static_cast<std::size_t>(r));
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t k = 0; k < matrix.size(); ++k)
      rows.push_back(section_array(matrix[k], child(mpath, k), r, names).coefficients());
    const Json& xi = require(*it, path, "xi");
    const std::string xpath = child(path, "xi");
    require_object(xi, xpath);
    CoForm form(Frame{r}, n - 1);
    for (const auto& [key, value] : xi.items()) {
      const std::string at = child(xpath, key);
      form.add(index_list(key, at, wedge_count, r, true), expression(value, at, names));
    }
    try {
      s.pair = PairData{CDO(std::move(rows), VectorField(Space::base(m), symbol.coefficients())), std::move(form)};
    } catch (const Error& e) {
      throw SchemaError(path, e.what());
    }
  }

  if (auto it = doc.find("options"); it != doc.end()) {
    const std::string path = child(root, "options");
    require_object(*it, path);
    only_keys(*it, path, {"checks", "seed"});
    if (auto c = it->find("checks"); c != it->end()) {
      if (!c->is_array()) throw SchemaError(child(path, "checks"), "expected an array");
      for (std::size_t k = 0; k < c->size(); ++k) {
        const Json& id = (*c)[k];
        const std::string at = child(child(path, "checks"), k);
        if (!id.is_string()) throw SchemaError(at, "expected a check name");
        const auto& known = available_checks();
        if (std::find(known.begin(), known.end(), id.get<std::string>()) == known.end())
          throw SchemaError(at, "unknown check \"" + id.get<std::string>() + "\"");
        s.checks.push_back(id.get<std::string>());
      }
    }
    if (auto seed = it->find("seed"); seed != it->end()) {
      if (!seed->is_number_integer()) throw SchemaError(child(path, "seed"), "expected an integer");
      s.seed = seed->get<std::int64_t>();
    }
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  Json doc;
  doc["name"] = s.name;
  doc["base_dim"] = s.bundle.base_dim();
  doc["arity"] = s.bundle.arity();
  doc["rank"] = s.bundle.rank();
  Json anchor = Json::object();
  for (const auto& [wedge, v] : s.bundle.anchor()) anchor[index_key(wedge)] = section_json(v.coefficients());
  doc["anchor"] = std::move(anchor);
  if (s.connection) {
    Json table = Json::object();
    for (const auto& [key, value] : s.connection->table())
      table[index_key(key.first) + "|" + std::to_string(key.second + 1)] = section_json(value.coefficients());
    doc["connection"] = std::move(table);
  }
  if (s.bracket) {
    Json table = Json::object();
    for (const auto& [tuple, value] : s.bracket->entries()) table[index_key(tuple)] = section_json(value.coefficients());
    doc["bracket"] = std::move(table);
  }
  if (s.pair) {
    Json pair;
    pair["symbol"] = section_json(s.pair->op.symbol().coefficients());
    Json rows = Json::array();
    for (const auto& row : s.pair->op.matrix()) rows.push_back(section_json(row));
    pair["matrix"] = std::move(rows);
    Json xi = Json::object();
    for (const auto& [blade, c] : s.pair->xi.terms()) xi[index_key(blade)] = c.to_string();
    pair["xi"] = std::move(xi);
    doc["pair"] = std::move(pair);
  }
  if (!s.checks.empty() || s.seed) {
    Json options = Json::object();
    if (!s.checks.empty()) options["checks"] = s.checks;
    if (s.seed) options["seed"] = *s.seed;
    doc["options"] = std::move(options);
  }
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) { return scenario_from_json(read_file(path)); }

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  write_file(path, scenario_to_json(scenario));
}

NambuStructure nambu_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const std::string root = "$";
  require_object(doc, root);
  only_keys(doc, root, {"fiber_dim", "base_dim", "pi"});
  const int n = require_int(require(doc, root, "fiber_dim"), child(root, "fiber_dim"), 1);
  const int m = require_int(require(doc, root, "base_dim"), child(root, "base_dim"), 1);
  const Space space = Space::total(n, m);
  const NameTable names = NameTable::total_space(n, m);
  MultiVectorField pi(space, n);
  const Json& table = require(doc, root, "pi");
  const std::string path = child(root, "pi");
  require_object(table, path);
  for (const auto& [key, value] : table.items()) {
    const std::string at = child(path, key);
    std::vector<int> slots;
    std::stringstream in(key);
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
      int slot = -1;
      for (int s = 0; s < space.dim(); ++s)
        if (space.symbol(s) == item) slot = s;
      if (slot < 0) throw SchemaError(at, "unknown coordinate \"" + item + "\"");
      if (!slots.empty() && slots.back() >= slot)
        throw SchemaError(at, "coordinates must be strictly increasing in the order y1..yn, x1..xm");
      slots.push_back(slot);
    }
    if (static_cast<int>(slots.size()) != n)
      throw SchemaError(at, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(slots.size()));
    pi.add(slots, expression(value, at, names));
  }
  return NambuStructure(n, m, std::move(pi));
}

std::string nambu_to_json(const NambuStructure& nambu) {
  Json doc;
  doc["fiber_dim"] = nambu.fiber_dim;
  doc["base_dim"] = nambu.base_dim;
  Json table = Json::object();
  const Space space = nambu.space();
  for (const auto& [blade, c] : nambu.pi.terms()) {
    std::string key;
    for (int s : blade) key += (key.empty() ? "" : ",") + space.symbol(s);
    table[key] = c.to_string();
  }
  doc["pi"] = std::move(table);
  return doc.dump(2) + "\n";
}

NambuStructure load_nambu(const std::filesystem::path& path) { return nambu_from_json(read_file(path)); }

void save_nambu(const NambuStructure& nambu, const std::filesystem::path& path) {
  write_file(path, nambu_to_json(nambu));
}

Section parse_section(std::string_view text, int rank, int base_dim) {
  NameTable names = NameTable::coordinates(base_dim);
  for (int k = 1; k <= rank; ++k) names.declare("e" + std::to_string(k), Scalar(Variable::fiber(k)));
  const Scalar s = parse_scalar(text, names);
  for (const auto& term : s.terms())
    if (term.monomial.degree_in(VariableKind::Fiber) != 1)
      throw ParseError("section expression must be linear in e1..e" + std::to_string(rank), 0);
  Section out(rank);
  for (int k = 0; k < rank; ++k) out[k] = fiber_derivative(s, k + 1);
  return out;
}

std::vector<Section> parse_sections(std::string_view text, int rank, int base_dim) {
  std::vector<Section> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_section(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), rank,
                                base_dim));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Connection scenario_connection(const Scenario& scenario) {
  if (scenario.connection) return *scenario.connection;
  if (scenario.pair) return build_pair_structure(scenario.pair->op, scenario.pair->xi).connection;
  throw DataError("missing connection");
}

BracketTable scenario_bracket(const Scenario& scenario) {
  if (scenario.bracket) return *scenario.bracket;
  if (!scenario.connection && !scenario.pair) throw DataError("missing connection or bracket");
  return induced_bracket(scenario_connection(scenario));
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

const std::vector<std::string>& default_checks() {
  static const std::vector<std::string> ids{"condition1", "bianchi", "anchor_compat", "leibniz", "jacobi", "rank"};
  return ids;
}

const std::vector<std::string>& available_checks() {
  static const std::vector<std::string> ids = [] {
    auto out = default_checks();
    out.emplace_back("structure_relations");
    return out;
  }();
  return ids;
}

namespace {

CheckReport structure_relations_of(const BracketTable& b) {
  const int n = b.arity();
  if (b.rank() != n) throw DataError("structure relations need rank equal to arity");
  Blade all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  const std::vector<Scalar> c = b.basis_value(all).coefficients();
  std::vector<Scalar> f;
  for (int l = 0; l < n; ++l) {
    Blade wedge;
    for (int i = 0; i < n; ++i)
      if (i != l) wedge.push_back(i);
    const VectorField v = b.bundle().anchor_of(wedge);
    for (int a = 1; a < b.bundle().base_dim(); ++a)
      if (!v[a].is_zero()) throw DataError("structure relations need every anchor along d/dx1");
    f.push_back(v[0]);
  }
  return check_structure_relations(c, f);
}

}  // namespace

RunReport run_checks(const Scenario& scenario, const std::vector<std::string>& selection) {
  std::vector<std::string> ids = !selection.empty() ? selection : scenario.checks;
  if (ids.empty()) {
    for (const auto& id : default_checks())
      if (scenario.connection || scenario.pair || (id != "condition1" && id != "bianchi")) ids.push_back(id);
  }
  const auto& known = available_checks();
  for (const auto& id : ids)
    if (std::find(known.begin(), known.end(), id) == known.end()) throw DataError("unknown check \"" + id + "\"");

  std::optional<Connection> nabla;
  std::optional<BracketTable> bracket;
  auto connection = [&]() -> const Connection& {
    if (!nabla) nabla = scenario_connection(scenario);
    return *nabla;
  };
  auto table = [&]() -> const BracketTable& {
    if (!bracket) bracket = scenario_bracket(scenario);
    return *bracket;
  };

  RunReport report;
  report.scenario = scenario.name;
  report.seed = scenario.seed;
  for (const auto& id : ids) {
    CheckReport r = timed([&] {
      if (id == "condition1") return check_condition1(connection());
      if (id == "bianchi") return check_bianchi(connection());
      if (id == "anchor_compat") return check_anchor_compat(table());
      if (id == "leibniz") return check_leibniz(table());
      if (id == "jacobi") return check_jacobi(table());
      if (id == "rank") {
        const AnchoredBundle& bundle = scenario.pair ? connection().bundle() : scenario.bundle;
        return rank_diagnostic(bundle).report;
      }
      return structure_relations_of(table());
    });
    r.id = id;
    report.checks.push_back(std::move(r));
  }
  return report;
}

RunReport run_nambu_checks(const std::string& name, const NambuStructure& nambu, bool linearity, bool fundamental,
                           const std::optional<BracketTable>& against) {
  RunReport report;
  report.scenario = name;
  report.checks.push_back(check_dufour_zung(nambu));
  if (against) report.checks.push_back(check_defining_relations(nambu, *against));
  if (linearity) report.checks.push_back(timed([&] { return check_linearity(nambu).as_check(); }));
  if (fundamental) report.checks.push_back(check_fundamental_identity(nambu));
  return report;
}

std::string report_json(const RunReport& report, bool timings) {
  Json doc;
  doc["scenario"] = report.scenario;
  doc["version"] = report.version;
  if (report.seed) doc["seed"] = *report.seed;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry;
    entry["id"] = c.id;
    entry["status"] = c.passed() ? "pass" : "fail";
    if (c.witness) {
      entry["witness"] = {{"arguments", c.witness->arguments}, {"residual", c.witness->residual}};
    } else {
      entry["witness"] = nullptr;
    }
    entry["millis"] = timings ? c.millis : 0;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  doc["status"] = report.passed() ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

std::string report_text(const RunReport& report, bool timings) {
  std::string out = "scenario " + report.scenario + " (flp " + report.version + ")\n";
  for (const auto& c : report.checks) {
    out += std::string(c.passed() ? "pass " : "FAIL ") + c.id;
    if (timings) out += " [" + std::to_string(c.millis) + " ms]";
    out += "\n";
    if (c.witness) {
      out += "  at: " + c.witness->arguments + "\n";
      out += "  residual: " + c.witness->residual + "\n";
    }
  }
  out += std::string("status: ") + (report.passed() ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace flp
