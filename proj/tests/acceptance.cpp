#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "examples.hpp"
#include "flp/algebroid.hpp"
#include "flp/error.hpp"
#include "flp/nambu.hpp"
#include "flp/pairs.hpp"
#include "flp/scenario.hpp"
#include "generators.hpp"

using namespace flp;
using namespace flp::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Fixture {
  std::string name;
  Scenario scenario;
};

std::vector<Fixture> scenario_fixtures() {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(FLP_FIXTURE_DIR))
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::vector<Fixture> out;
  for (const auto& p : paths) {
    try {
      out.push_back({p.stem().string(), load_scenario(p)});
    } catch (const Error&) {
    }
  }
  return out;
}

Scenario fixture(const std::string& name) { return load_scenario(std::string(FLP_FIXTURE_DIR) + "/" + name + ".json"); }

std::vector<Section> generic_sections(int count, int rank) {
  std::vector<Section> xs;
  for (int i = 1; i <= count; ++i) xs.push_back(generic_section("X" + std::to_string(i), rank));
  return xs;
}

std::vector<std::vector<int>> all_tuples(int n, int r) {
  std::vector<std::vector<int>> out{{}};
  for (int s = 0; s < n; ++s) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int k = 0; k < r; ++k) {
        auto u = t;
        u.push_back(k);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Section> basis_args(const std::vector<int>& tuple, int r) {
  std::vector<Section> xs;
  for (int k : tuple) xs.push_back(Section::basis(r, k));
  return xs;
}

std::string tuple_text(const std::vector<int>& tuple) {
  std::string s;
  for (int k : tuple) s += (s.empty() ? "e" : ",e") + std::to_string(k + 1);
  return "(" + s + ")";
}

/// Runs every check, converting errors into a failed verdict.
std::optional<RunReport> try_checks(const Scenario& s) {
  try {
    return run_checks(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Outcome example_anchor() {
  Outcome out;
  const Scenario s = fixture("example14");
  const RunReport report = run_checks(s);
  out.require(report.checks.size() == 6 && report.passed(), "default checks do not all pass");
  const Connection nabla = scenario_connection(s);
  for (const auto& t : all_tuples(3, 3))
    out.require(bracket_from_connection(nabla, basis_args(t, 3)).is_zero(), "non-zero bracket at " + tuple_text(t));
  return out;
}

Outcome permutation_example() {
  Outcome out;
  const Scenario s = fixture("perm");
  const Connection nabla = scenario_connection(s);
  const int r = nabla.rank();
  for (const auto& t : all_tuples(3, r)) {
    Section expected(r);
    const auto [sorted, sign] = canonical_blade(t);
    if (sign != 0 && sorted[0] == 0 && sorted[1] == 1) expected = Scalar(sign) * Section::basis(r, sorted[2]);
    out.require(bracket_from_connection(nabla, basis_args(t, r)) == expected, "bracket differs at " + tuple_text(t));
  }
  for (const auto& x : all_tuples(2, r))
    for (const auto& w : increasing_blades(r, 2))
      for (int z = 0; z < r; ++z)
        out.require(curvature(nabla, basis_args(x, r), MultiSection::blade(Frame{r}, w), Section::basis(r, z)).is_zero(),
                    "curvature non-zero at X=" + tuple_text(x));
  out.require(run_checks(s).passed(), "checks do not all pass");
  return out;
}

Outcome splitting_pipeline() {
  Outcome out;
  const StructureConstants c = constants(3, 3, {{{0, 1, 2}, {0, 0, 1}}});
  const Scalar x1(Variable::coordinate(1));
  const Scalar x2(Variable::coordinate(2));
  const Scalar x3(Variable::coordinate(3));
  for (const Scalar& g : {Scalar(1), x1 + Scalar(1), x1 * x1 * x2 - Scalar(Rational(3, 2)) * x3}) {
    const Connection nabla = connection_from_splitting(c, symmetric_splitting(c), g, 3);
    for (const auto& t : all_tuples(3, 3)) {
      Section expected(3);
      const auto coeffs = c.at(t);
      for (int k = 0; k < 3; ++k) expected[static_cast<std::size_t>(k)] = g * Scalar(coeffs[static_cast<std::size_t>(k)]);
      out.require(bracket_from_connection(nabla, basis_args(t, 3)) == expected,
                  "g=" + g.to_string() + " differs at " + tuple_text(t));
    }
    const auto xs = generic_sections(3, 3);
    out.require(bracket_from_connection(nabla, xs) == constant_bracket(c, g, 3).evaluate(xs),
                "g=" + g.to_string() + " differs on generic sections");
  }
  return out;
}

Outcome realization_round_trip() {
  Outcome out;
  int realized = 0;
  for (const auto& f : scenario_fixtures()) {
    if (!f.scenario.bracket || !check_leibniz(*f.scenario.bracket).passed()) continue;
    const auto start = std::chrono::steady_clock::now();
    const BracketTable& b = *f.scenario.bracket;
    const Connection nabla = realize_connection(b, zero_connection(b.bundle()));
    const auto xs = generic_sections(b.arity(), b.rank());
    out.require(bracket_from_connection(nabla, xs) == b.evaluate(xs), f.name + " is not reproduced");
    const auto elapsed = std::chrono::steady_clock::now() - start;
    out.require(elapsed < std::chrono::seconds(60), f.name + " exceeds 60 s");
    ++realized;
  }
  out.require(realized >= 1, "no fixture carries a Leibniz bracket table");
  if (out.ok) out.detail = std::to_string(realized) + " fixtures";
  return out;
}

Outcome connection_equivalences() {
  Outcome out;
  Generator gen(2024);
  int instances = 0;
  int c1_pass = 0;
  int bianchi_pass = 0;
  for (int t = 0; t < 40; ++t) {
    // Alternate denser and sparser draws so both verdicts occur.
    const Connection nabla = gen.connection(2, 3, 3, 1 + t % 3);
    const bool c1 = check_condition1(nabla).passed();
    const BracketTable b = induced_bracket(nabla);
    out.require(c1 == check_anchor_compat(b).passed(), "condition1 and anchor_compat disagree at instance " +
                                                           std::to_string(t));
    const bool bianchi = check_bianchi(nabla).passed();
    out.require(bianchi == check_jacobi(b).passed(), "bianchi and jacobi disagree at instance " + std::to_string(t));
    c1_pass += c1 ? 1 : 0;
    bianchi_pass += bianchi ? 1 : 0;
    ++instances;
  }
  out.require(c1_pass > 0 && c1_pass < instances, "condition1 verdicts are not mixed");
  out.require(bianchi_pass > 0 && bianchi_pass < instances, "bianchi verdicts are not mixed");
  if (out.ok)
    out.detail = std::to_string(instances) + " instances, condition1 " + std::to_string(c1_pass) + " pass, bianchi " +
                 std::to_string(bianchi_pass) + " pass";
  return out;
}

Outcome rank_criterion() {
  Outcome out;
  int covered = 0;
  for (const auto& f : scenario_fixtures()) {
    if (f.scenario.bundle.arity() < 3) continue;
    const auto report = try_checks(f.scenario);
    if (!report || !report->passed()) continue;
    const AnchoredBundle bundle =
        f.scenario.pair ? scenario_connection(f.scenario).bundle() : f.scenario.bundle;
    out.require(rank_diagnostic(bundle).report.passed(), f.name + " fails the rank diagnostic");
    ++covered;
  }
  const Scenario rank2 = fixture("rank2");
  const RunReport report = run_checks(rank2, {"condition1", "bianchi", "anchor_compat", "leibniz", "jacobi"});
  out.require(!report.passed(), "rank2 passes every axiom check");
  out.require(!rank_diagnostic(rank2.bundle).report.passed(), "rank2 passes the rank diagnostic");
  if (out.ok) out.detail = std::to_string(covered) + " passing fixtures";
  return out;
}

Outcome dualization_pipeline() {
  Outcome out;
  int covered = 0;
  for (const auto& f : scenario_fixtures()) {
    if (f.scenario.bundle.arity() != 3 || f.scenario.bundle.rank() != 3) continue;
    const auto report = try_checks(f.scenario);
    if (!report || !report->passed()) continue;
    const BracketTable b = scenario_bracket(f.scenario);
    const NambuStructure n = dualize(b);
    out.require(check_defining_relations(n, b).passed(), f.name + " fails the defining relations");
    out.require(check_linearity(n).passed(), f.name + " fails linearity");
    out.require(check_dufour_zung(n).passed(), f.name + " fails the volume-form conditions");
    ++covered;
  }
  const NambuForms forms = nambu_forms(dualize(scenario_bracket(fixture("example14"))));
  out.require(forms.omega.to_string() == "-dy3^dx2^dx3", "omega is " + forms.omega.to_string());
  if (out.ok) out.detail = std::to_string(covered) + " fixtures, omega = " + forms.omega.to_string();
  return out;
}

Outcome pair_criterion() {
  Outcome out;
  int covered = 0;
  bool saw_zero = false;
  bool saw_minus_two = false;
  for (const auto& f : scenario_fixtures()) {
    if (!f.scenario.pair) continue;
    const PairData& p = *f.scenario.pair;
    Scalar g;
    try {
      g = eigen_check(p.op, p.xi);
    } catch (const ConstructionError&) {
      continue;
    }
    saw_zero = saw_zero || g.is_zero();
    saw_minus_two = saw_minus_two || g == Scalar(-2);
    const PairStructure built = build_pair_structure(p.op, p.xi);
    out.require(check_condition1(built.connection).passed(), f.name + " fails condition1");
    out.require(check_bianchi(built.connection).passed(), f.name + " fails bianchi");
    const auto xs = generic_sections(built.connection.arity(), built.connection.rank());
    out.require(bracket_from_connection(built.connection, xs) == pair_bracket_expansion(p.op, p.xi, xs),
                f.name + " bracket differs from the expansion");
    ++covered;
  }
  out.require(covered >= 5, "only " + std::to_string(covered) + " eigen pairs");
  out.require(saw_zero && saw_minus_two, "missing the g = 0 or g = -2 case");
  if (out.ok) out.detail = std::to_string(covered) + " pairs";
  return out;
}

Outcome negative_controls() {
  Outcome out;
  const NambuStructure counter = load_nambu(std::string(FLP_FIXTURE_DIR) + "/counterexample.json");
  const CheckReport dz = check_dufour_zung(counter);
  out.require(!dz.passed() && dz.witness && dz.witness->residual != "0", "counterexample passes");

  const NambuStructure pi = load_nambu(std::string(FLP_FIXTURE_DIR) + "/example14_pi.json");
  const CheckReport wrong = check_defining_relations(pi, scenario_bracket(fixture("wrong_bracket")));
  out.require(!wrong.passed() && wrong.witness && wrong.witness->residual == "y1", "wrong pairing witness is not y1");

  const StructureConstants c = constants(3, 3, {{{0, 1, 2}, {0, 0, 1}}});
  try {
    connection_from_splitting(c, SplittingConstants{3, 3, {}}, Scalar(1), 3);
    out.require(false, "a = 0 splitting accepted");
  } catch (const ConstructionError& e) {
    out.require(std::string(e.what()).find("splitting relation violated") != std::string::npos,
                std::string("unexpected message: ") + e.what());
  }
  return out;
}

Outcome property_suites() {
  Outcome out;
  constexpr int kCases = 200;
  Generator gen(8);
  const auto vars = Generator::total_variables(2, 2);
  const Space total = Space::total(2, 2);
  const Space base = Space::base(3);
  std::vector<Variable> jet_vars = Generator::base_variables(3);
  jet_vars.push_back(Variable::jet("u"));
  jet_vars.push_back(Variable::jet("u", {Coordinate::base(2)}));
  const Scalar s(Variable::jet("s"));

  for (int t = 0; t < kCases; ++t) {
    const std::string at = " (case " + std::to_string(t) + ")";

    const Scalar a = gen.scalar(vars, 2, 4);
    const Scalar b = gen.scalar(vars, 2, 4);
    const Scalar c = gen.scalar(vars, 2, 4);
    out.require((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                    a * (b + c) == a * b + a * c && (a - a).is_zero(),
                "ring axioms" + at);

    const Scalar p = gen.scalar(jet_vars, 3, 4);
    const Scalar q = gen.scalar(jet_vars, 3, 4);
    const int i = gen.integer(1, 3);
    out.require(total_derivative(p * q, i) == total_derivative(p, i) * q + p * total_derivative(q, i),
                "Leibniz of total_derivative" + at);

    const int deg = gen.integer(0, 2);
    const auto alpha = gen.form(total, deg, 2, 3);
    out.require(exterior_derivative(exterior_derivative(alpha)).is_zero(), "d o d" + at);

    const int deg2 = gen.integer(0, 2);
    const auto beta = gen.form(total, deg2, 2, 3);
    const Scalar sign((deg * deg2) % 2 == 0 ? 1 : -1);
    out.require(wedge(alpha, beta) == sign * wedge(beta, alpha), "wedge anticommutativity" + at);

    const auto k = gen.multivector(total, gen.integer(1, 2), 1, 2);
    const auto gamma = gen.form(total, 3, 1, 3);
    const Scalar f = gen.scalar(vars, 1, 2);
    out.require(interior_product(f * k, gamma) == f * interior_product(k, gamma), "i_K tensoriality" + at);

    const auto u = gen.vector_field(base, 2, 2);
    const auto v = gen.vector_field(base, 2, 2);
    const auto w = gen.vector_field(base, 2, 2);
    out.require((lie_bracket_vf(u, lie_bracket_vf(v, w)) + lie_bracket_vf(v, lie_bracket_vf(w, u)) +
                 lie_bracket_vf(w, lie_bracket_vf(u, v)))
                    .is_zero(),
                "Lie bracket Jacobi" + at);

    const int n = gen.integer(2, 4);
    const auto nabla_n = gen.connection(2, n, n + gen.integer(0, 1));
    std::vector<Section> xs;
    for (int j = 0; j < n; ++j) xs.push_back(gen.section(nabla_n.rank(), 2, 1, 2));
    out.require(bracket_from_connection(nabla_n, xs) == bracket_from_connection_cyclic(nabla_n, xs),
                "two forms of the induced bracket" + at);

    const auto nabla = gen.connection(2, 3, 3);
    std::vector<Section> ys;
    for (int j = 0; j < 3; ++j) ys.push_back(gen.section(3, 2, 1, 2));
    const int slot = gen.integer(0, 1);
    auto swapped = ys;
    std::swap(swapped[static_cast<std::size_t>(slot)], swapped[static_cast<std::size_t>(slot + 1)]);
    auto repeated = ys;
    repeated[2] = repeated[static_cast<std::size_t>(slot)];
    out.require(bracket_from_connection(nabla, swapped) == -bracket_from_connection(nabla, ys) &&
                    bracket_from_connection(nabla, repeated).is_zero(),
                "bracket skew-symmetry" + at);

    const std::vector<Section> xx{gen.section(3, 2, 1, 2), gen.section(3, 2, 1, 2)};
    const MultiSection wedge_arg =
        wedge_sections(std::vector<Section>{gen.section(3, 2, 1, 2), gen.section(3, 2, 1, 2)}, 3);
    const Section z = gen.section(3, 2, 1, 2);
    out.require(curvature(nabla, xx, s * wedge_arg, z) == s * curvature(nabla, xx, wedge_arg, z),
                "curvature W-tensoriality" + at);
  }
  if (out.ok) out.detail = "9 properties x " + std::to_string(kCases) + " cases";
  return out;
}

struct Criterion {
  const char* id;
  const char* title;
  std::chrono::seconds limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  using std::chrono::seconds;
  const std::vector<Criterion> criteria{
      {"1a", "anchor example: checks pass, basis brackets vanish", seconds(10), example_anchor},
      {"1b", "permutation connection: bracket table, flat curvature", seconds(30), permutation_example},
      {"1c", "splitting pipeline for three polynomial g", seconds(10), splitting_pipeline},
      {"2", "realization round trip on bracket fixtures", seconds(60), realization_round_trip},
      {"3", "condition1/anchor_compat and bianchi/jacobi agree", seconds(600), connection_equivalences},
      {"4", "rank diagnostic on passing fixtures and rank2", seconds(60), rank_criterion},
      {"5", "dualization pipeline and omega", seconds(120), dualization_pipeline},
      {"6", "eigen pair constructions", seconds(120), pair_criterion},
      {"7", "negative controls", seconds(60), negative_controls},
      {"8", "algebra property suites", seconds(300), property_suites},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("error: ") + e.what();
    }
    const auto millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && millis > std::chrono::duration_cast<std::chrono::milliseconds>(c.limit).count()) {
      outcome.ok = false;
      outcome.detail = "exceeded " + std::to_string(c.limit.count()) + " s";
    }
    if (!outcome.ok) ++failures;
    std::printf("%s %-3s %s [%lld ms]%s%s\n", outcome.ok ? "PASS" : "FAIL", c.id, c.title,
                static_cast<long long>(millis), outcome.detail.empty() ? "" : ": ", outcome.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
