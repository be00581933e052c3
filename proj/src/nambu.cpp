#include "flp/nambu.hpp"

#include "flp/error.hpp"

namespace flp {

namespace {

std::string frame_tuple(const Blade& b) {
  std::string out;
  for (int s : b) out += (out.empty() ? "" : ",") + std::string("e") + std::to_string(s + 1);
  return "(" + out + ")";
}

std::vector<Scalar> linear_functions(std::span<const Section> xs) {
  std::vector<Scalar> out;
  for (const auto& x : xs) out.push_back(linear_function(x));
  return out;
}

std::string component_name(const Space& space, const Blade& b) { return MultiVectorField::blade(space, b).to_string(); }

}  // namespace

NambuStructure::NambuStructure(int fiber_dim_, int base_dim_, MultiVectorField pi_)
    : fiber_dim(fiber_dim_), base_dim(base_dim_), pi(std::move(pi_)) {
  if (fiber_dim < 1 || base_dim < 1) throw ShapeError("Nambu structure needs fiber_dim >= 1 and base_dim >= 1");
  if (!(pi.basis() == space())) throw ShapeError("n-vector does not live on the total space");
  if (pi.degree() != fiber_dim) throw ShapeError("n-vector degree must equal fiber_dim");
  for (const auto& [b, c] : pi.terms())
    if (c.has_jets()) throw ShapeError("n-vector coefficient carries jet symbols: " + c.to_string());
}

Scalar linear_function(const Section& x) {
  Scalar out;
  for (int i = 0; i < x.rank(); ++i)
    if (!x[i].is_zero()) out += x[i] * Scalar(Variable::fiber(i + 1));
  return out;
}

NambuStructure dualize(const BracketTable& bracket) {
  const AnchoredBundle& bundle = bracket.bundle();
  const int n = bundle.arity();
  if (bundle.rank() != n)
    throw ShapeError("dualization needs rank equal to arity, got rank " + std::to_string(bundle.rank()) +
                     " and arity " + std::to_string(n));
  if (n < 3) throw ShapeError("dualization needs arity >= 3");
  const int m = bundle.base_dim();
  MultiVectorField pi(Space::total(n, m), n);
  Blade ys;
  for (int i = 0; i < n; ++i) ys.push_back(i);
  pi.add(ys, linear_function(bracket.basis_value(ys)));
  for (int l = 0; l < n; ++l) {
    Blade wedge;
    for (int i = 0; i < n; ++i)
      if (i != l) wedge.push_back(i);
    const VectorField v = bundle.anchor_of(wedge);
    for (int a = 0; a < m; ++a) {
      if (v[a].is_zero()) continue;
      Blade slots = wedge;
      slots.push_back(n + a);
      pi.add(slots, v[a]);
    }
  }
  NambuStructure out(n, m, std::move(pi));
  const CheckReport report = check_defining_relations(out, bracket);
  if (!report.passed())
    throw ConstructionError("dualized n-vector violates its defining relations at " + report.witness->arguments +
                            ": " + report.witness->residual);
  return out;
}

CheckReport check_defining_relations(const NambuStructure& nambu, const BracketTable& bracket) {
  return timed([&] {
    const AnchoredBundle& bundle = bracket.bundle();
    const int n = nambu.fiber_dim;
    const int r = bundle.rank();
    if (r != n || bundle.arity() != n || bundle.base_dim() != nambu.base_dim)
      throw ShapeError("Nambu structure and bracket have different shapes");
    const Scalar f = generic_function("f");

    // Residuals are expected minus actual.
    auto top = [&](const std::vector<Section>& xs, const std::string& name) -> std::optional<CheckReport> {
      const Scalar actual = np_bracket(nambu, linear_functions(xs));
      const Scalar expected = linear_function(bracket.evaluate(xs));
      if (actual == expected) return std::nullopt;
      return CheckReport::fail("defining_relations", "X=" + name + ", {phi_X1,...,phi_Xn} = phi_[X]",
                               (expected - actual).to_string());
    };
    auto anchored = [&](const std::vector<Section>& xs, const std::string& name) -> std::optional<CheckReport> {
      std::vector<Scalar> fs = linear_functions(xs);
      fs.push_back(f);
      const Scalar actual = np_bracket(nambu, fs);
      const Scalar expected = anchor_apply(bundle, wedge_sections(xs, r))(f);
      if (actual == expected) return std::nullopt;
      return CheckReport::fail("defining_relations", "X=" + name + ", f generic, {phi_X1,...,phi_X(n-1),f} = rho(X)(f)",
                               (expected - actual).to_string());
    };

    for (const auto& b : increasing_blades(r, n)) {
      std::vector<Section> xs;
      for (int s : b) xs.push_back(Section::basis(r, s));
      if (auto fail = top(xs, frame_tuple(b))) return *fail;
    }
    for (const auto& b : increasing_blades(r, n - 1)) {
      std::vector<Section> xs;
      for (int s : b) xs.push_back(Section::basis(r, s));
      if (auto fail = anchored(xs, frame_tuple(b))) return *fail;
    }
    std::vector<Section> xs;
    std::string names;
    for (int i = 1; i <= n; ++i) {
      xs.push_back(generic_section("X" + std::to_string(i), r));
      names += (names.empty() ? "" : ",") + std::string("X") + std::to_string(i);
    }
    if (auto fail = top(xs, "(" + names + ") generic")) return *fail;
    xs.pop_back();
    if (auto fail = anchored(xs, "(" + names.substr(0, names.rfind(',')) + ") generic")) return *fail;
    return CheckReport::pass("defining_relations");
  });
}

CheckReport LinearityReport::as_check() const {
  if (passed()) return CheckReport::pass("linearity");
  return CheckReport::fail("linearity", witnesses.front().arguments, witnesses.front().residual);
}

LinearityReport check_linearity(const NambuStructure& nambu) {
  LinearityReport out;
  const Space space = nambu.space();
  for (const auto& [b, c] : nambu.pi.terms()) {
    int base_slots = 0;
    for (int s : b)
      if (s >= nambu.fiber_dim) ++base_slots;
    bool ok = true;
    for (const auto& term : c.terms()) {
      const unsigned fiber_degree = term.monomial.degree_in(VariableKind::Fiber);
      if ((base_slots == 0 && fiber_degree != 1) || (base_slots == 1 && fiber_degree != 0)) ok = false;
    }
    if (base_slots >= 2) ok = false;
    if (ok) continue;
    bool* verdict = base_slots == 0 ? &out.fiber_linear : base_slots == 1 ? &out.mixed_basic : &out.higher_vanish;
    if (!*verdict) continue;
    *verdict = false;
    const char* condition = base_slots == 0   ? "pure fiber component not linear in y"
                            : base_slots == 1 ? "component with one base direction depends on y"
                                              : "component with several base directions is non-zero";
    out.witnesses.push_back({component_name(space, b) + ": " + condition, c.to_string()});
  }
  return out;
}

NambuForms nambu_forms(const NambuStructure& nambu) {
  const Space space = nambu.space();
  Blade all;
  for (int s = 0; s < space.dim(); ++s) all.push_back(s);
  NambuForms out;
  out.volume = DifferentialForm::blade(space, all);
  out.omega = interior_product(nambu.pi, out.volume);
  out.d_omega = exterior_derivative(out.omega);
  return out;
}

std::pair<DifferentialForm, DifferentialForm> dufour_zung_terms(const NambuForms& forms, const MultiVectorField& k) {
  const DifferentialForm alpha = interior_product(k, forms.omega);
  return {wedge(alpha, forms.omega), wedge(alpha, forms.d_omega)};
}

CheckReport check_dufour_zung(const NambuStructure& nambu) {
  if (nambu.fiber_dim < 3) throw ShapeError("the volume-form criterion needs n >= 3");
  return timed([&] {
    const Space space = nambu.space();
    const NambuForms forms = nambu_forms(nambu);
    const int degree = nambu.total_dim() - nambu.fiber_dim - 1;
    for (const auto& b : increasing_blades(space.dim(), degree)) {
      const auto k = MultiVectorField::blade(space, b);
      const auto [first, second] = dufour_zung_terms(forms, k);
      const std::string name = b.empty() ? "1" : k.to_string();
      if (!first.is_zero()) return CheckReport::fail("dufour_zung", "K=" + name + ", (i_K w)^w", first.to_string());
      if (!second.is_zero())
        return CheckReport::fail("dufour_zung", "K=" + name + ", (i_K w)^dw", second.to_string());
    }
    return CheckReport::pass("dufour_zung");
  });
}

CheckReport check_structure_relations(std::span<const Scalar> c, std::span<const Scalar> f) {
  const int n = static_cast<int>(c.size());
  if (n < 2 || f.size() != c.size()) throw ShapeError("structure relations need n >= 2 values of c and of f");
  return timed([&] {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const Scalar& fi = f[static_cast<std::size_t>(i - 1)];
        const Scalar& fj = f[static_cast<std::size_t>(j - 1)];
        const std::string pair = "i=" + std::to_string(i) + ", j=" + std::to_string(j);
        const Scalar first = fi * total_derivative(fj, 1) - fj * total_derivative(fi, 1);
        if (!first.is_zero()) return CheckReport::fail("structure_relations", pair + ", anchor relation", first.to_string());
        const Scalar si(i % 2 == 0 ? 1 : -1);
        const Scalar sj(j % 2 == 0 ? 1 : -1);
        const Scalar second = si * fi * c[static_cast<std::size_t>(j - 1)] - sj * fj * c[static_cast<std::size_t>(i - 1)];
        if (!second.is_zero())
          return CheckReport::fail("structure_relations", pair + ", bracket relation", second.to_string());
      }
    }
    return CheckReport::pass("structure_relations");
  });
}

Scalar np_bracket(const NambuStructure& nambu, std::span<const Scalar> fs) { return multivector_pair(nambu.pi, fs); }

CheckReport check_fundamental_identity(const NambuStructure& nambu) {
  return timed([&] {
    const int n = nambu.fiber_dim;
    std::vector<Scalar> fs;
    std::vector<Scalar> gs;
    for (int i = 1; i < n; ++i) fs.emplace_back(Variable::jet("f" + std::to_string(i), {}, true));
    for (int i = 1; i <= n; ++i) gs.emplace_back(Variable::jet("g" + std::to_string(i), {}, true));
    auto with_last = [&](const Scalar& last) {
      std::vector<Scalar> args = fs;
      args.push_back(last);
      return np_bracket(nambu, args);
    };
    Scalar residual = with_last(np_bracket(nambu, gs));
    for (int i = 0; i < n; ++i) {
      std::vector<Scalar> args = gs;
      args[static_cast<std::size_t>(i)] = with_last(gs[static_cast<std::size_t>(i)]);
      residual -= np_bracket(nambu, args);
    }
    if (residual.is_zero()) return CheckReport::pass("fundamental_identity");
    return CheckReport::fail("fundamental_identity", "f1..f" + std::to_string(n - 1) + ", g1..g" + std::to_string(n) +
                             " generic", residual.to_string());
  });
}

}  // namespace flp
