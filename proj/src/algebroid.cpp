#include "flp/algebroid.hpp"

#include <algorithm>
#include <optional>

#include "flp/error.hpp"

namespace flp {

namespace {

std::string join_indices(const std::vector<int>& slots) {
  std::string out;
  for (int s : slots) out += (out.empty() ? "" : ",") + std::to_string(s + 1);
  return out;
}

std::string blade_name(const Blade& b) {
  if (b.empty()) return "1";
  std::string out;
  for (int s : b) out += (out.empty() ? "" : "^") + std::string("e") + std::to_string(s + 1);
  return out;
}

void check_increasing(const Blade& b, int size, int bound, const char* what) {
  if (static_cast<int>(b.size()) != size)
    throw ShapeError(std::string(what) + " needs " + std::to_string(size) + " indices, got " +
                     std::to_string(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] < 0 || b[k] >= bound) throw ShapeError(std::string(what) + " index out of range: " + join_indices(b));
    if (k > 0 && b[k - 1] >= b[k])
      throw ShapeError(std::string(what) + " indices must be strictly increasing: " + join_indices(b));
  }
}

void check_section(const Section& x, int rank) {
  if (x.rank() != rank)
    throw ShapeError("section of rank " + std::to_string(x.rank()) + " on a bundle of rank " + std::to_string(rank));
}

int parity_sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

Section signed_section(int sign, Section s) { return sign > 0 ? s : -s; }

/// All strictly increasing k-subsets of {0..r-1}.
/// All ordered k-tuples over {0..r-1} (with repetition), lexicographic.
std::vector<std::vector<int>> all_tuples(int r, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == r - 1) cur[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Section> basis_sections(int rank, const std::vector<int>& tuple) {
  std::vector<Section> out;
  out.reserve(tuple.size());
  for (int t : tuple) out.push_back(Section::basis(rank, t));
  return out;
}

std::vector<Section> generic_sections(const std::string& prefix, int count, int rank) {
  std::vector<Section> out;
  for (int i = 1; i <= count; ++i) out.push_back(generic_section(prefix + std::to_string(i), rank));
  return out;
}

std::string generic_names(const std::string& prefix, int count) {
  std::string out;
  for (int i = 1; i <= count; ++i) out += (out.empty() ? "" : ",") + prefix + std::to_string(i);
  return out;
}

/// X_1 ∧ … ∧ X_n with slot `skip` left out.
MultiSection wedge_without(std::span<const Section> xs, std::size_t skip, int rank) {
  std::vector<Section> rest;
  rest.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i != skip) rest.push_back(xs[i]);
  return wedge_sections(rest, rank);
}

/// X_{i+1} ∧ … ∧ X_n ∧ X_1 ∧ … ∧ X_{i-1} (i 0-based here).
MultiSection cyclic_wedge(std::span<const Section> xs, std::size_t i, int rank) {
  std::vector<Section> rest;
  for (std::size_t k = 1; k < xs.size(); ++k) rest.push_back(xs[(i + k) % xs.size()]);
  return wedge_sections(rest, rank);
}

void check_arity(std::span<const Section> xs, std::size_t expected, int rank, const char* what) {
  if (xs.size() != expected)
    throw ShapeError(std::string(what) + " takes " + std::to_string(expected) + " sections, got " +
                     std::to_string(xs.size()));
  for (const auto& x : xs) check_section(x, rank);
}

/// X^∇(Y) = [X_1, …, X_{n-1}, Y]^∇.
Section covariant(const Connection& nabla, std::span<const Section> xs, const Section& y) {
  std::vector<Section> args(xs.begin(), xs.end());
  args.push_back(y);
  return bracket_from_connection(nabla, args);
}

}  // namespace

// ---------------------------------------------------------------- bundle

AnchoredBundle::AnchoredBundle(int base_dim, int arity, int rank) : base_dim_(base_dim), arity_(arity), rank_(rank) {
  if (base_dim < 1) throw ShapeError("base dimension must be at least 1");
  if (arity < 2) throw ShapeError("arity must be at least 2");
  if (rank < 1) throw ShapeError("rank must be at least 1");
}

void AnchoredBundle::set_anchor(const Blade& wedge, const VectorField& value) {
  check_increasing(wedge, arity_ - 1, rank_, "anchor key");
  if (!(value.space() == base())) throw ShapeError("anchor value is not a vector field on the base");
  if (value.is_zero()) {
    anchor_.erase(wedge);
  } else {
    anchor_[wedge] = value;
  }
}

VectorField AnchoredBundle::anchor_of(const Blade& wedge) const {
  auto it = anchor_.find(wedge);
  return it == anchor_.end() ? VectorField(base()) : it->second;
}

VectorField anchor_apply(const AnchoredBundle& bundle, const MultiSection& w) {
  if (w.degree() != bundle.arity() - 1)
    throw ShapeError("anchor takes a multisection of degree " + std::to_string(bundle.arity() - 1) + ", got " +
                     std::to_string(w.degree()));
  if (!(w.basis() == bundle.frame())) throw ShapeError("multisection over a different frame");
  VectorField out(bundle.base());
  for (const auto& [blade, c] : w.terms()) {
    auto it = bundle.anchor().find(blade);
    if (it != bundle.anchor().end()) out += c * it->second;
  }
  return out;
}

// ---------------------------------------------------------------- connection

void Connection::set(const Blade& wedge, int j, const Section& value) {
  check_increasing(wedge, arity() - 1, rank(), "connection key");
  if (j < 0 || j >= rank()) throw ShapeError("connection target index out of range: " + std::to_string(j + 1));
  check_section(value, rank());
  if (value.is_zero()) {
    gamma_.erase({wedge, j});
  } else {
    gamma_[{wedge, j}] = value;
  }
}

Section Connection::at(const Blade& wedge, int j) const {
  auto it = gamma_.find({wedge, j});
  return it == gamma_.end() ? Section(rank()) : it->second;
}

Connection zero_connection(const AnchoredBundle& bundle) { return Connection(bundle); }

Section connection_apply(const Connection& nabla, const MultiSection& w, const Section& z) {
  const int r = nabla.rank();
  check_section(z, r);
  const VectorField v = anchor_apply(nabla.bundle(), w);
  Section out(r);
  for (int j = 0; j < r; ++j) {
    if (z[j].is_zero()) continue;
    for (const auto& [blade, c] : w.terms()) {
      auto it = nabla.table().find({blade, j});
      if (it != nabla.table().end()) out += (c * z[j]) * it->second;
    }
    if (!nabla.bundle().anchor_is_zero()) out[j] += v(z[j]);
  }
  return out;
}

Section bracket_from_connection(const Connection& nabla, std::span<const Section> xs) {
  const int n = nabla.arity();
  const int r = nabla.rank();
  check_arity(xs, static_cast<std::size_t>(n), r, "bracket");
  Section out(r);
  for (int i = 1; i <= n; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    Section term = connection_apply(nabla, wedge_without(xs, idx, r), xs[idx]);
    out += signed_section(parity_sign(n + i), std::move(term));
  }
  return out;
}

Section bracket_from_connection_cyclic(const Connection& nabla, std::span<const Section> xs) {
  const int n = nabla.arity();
  const int r = nabla.rank();
  check_arity(xs, static_cast<std::size_t>(n), r, "bracket");
  Section out(r);
  for (int i = 1; i <= n; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    Section term = connection_apply(nabla, cyclic_wedge(xs, idx, r), xs[idx]);
    out += signed_section(parity_sign((n - 1) * i), std::move(term));
  }
  return out;
}

Scalar nabla_ext(const Connection& nabla, std::span<const Section> xs, const Scalar& s) {
  check_arity(xs, static_cast<std::size_t>(nabla.arity() - 1), nabla.rank(), "covariant derivative");
  if (nabla.bundle().anchor_is_zero()) return Scalar();
  return anchor_apply(nabla.bundle(), wedge_sections(xs, nabla.rank()))(s);
}

MultiSection nabla_ext(const Connection& nabla, std::span<const Section> xs, const MultiSection& w) {
  const int r = nabla.rank();
  check_arity(xs, static_cast<std::size_t>(nabla.arity() - 1), r, "covariant derivative");
  if (!(w.basis() == nabla.bundle().frame())) throw ShapeError("multisection over a different frame");
  const VectorField v = anchor_apply(nabla.bundle(), wedge_sections(xs, r));
  const bool has_anchor = !nabla.bundle().anchor_is_zero();
  std::vector<std::optional<Section>> images(static_cast<std::size_t>(r));
  auto image = [&](int k) -> const Section& {
    auto& slot = images[static_cast<std::size_t>(k)];
    if (!slot) slot = covariant(nabla, xs, Section::basis(r, k));
    return *slot;
  };
  MultiSection out(w.basis(), w.degree());
  for (const auto& [blade, c] : w.terms()) {
    if (has_anchor) out.add(blade, v(c));
    for (std::size_t p = 0; p < blade.size(); ++p) {
      const Section& moved = image(blade[p]);
      for (int k = 0; k < r; ++k) {
        if (moved[k].is_zero()) continue;
        std::vector<int> slots = blade;
        slots[p] = k;
        out.add(std::move(slots), c * moved[k]);
      }
    }
  }
  return out;
}

Section curvature(const Connection& nabla, std::span<const Section> xs, const MultiSection& w, const Section& z) {
  check_arity(xs, static_cast<std::size_t>(nabla.arity() - 1), nabla.rank(), "curvature");
  Section out = covariant(nabla, xs, connection_apply(nabla, w, z));
  out -= connection_apply(nabla, w, covariant(nabla, xs, z));
  out -= connection_apply(nabla, nabla_ext(nabla, xs, w), z);
  return out;
}

// ---------------------------------------------------------------- bracket table

void BracketTable::set(const std::vector<int>& tuple, const Section& value) {
  if (static_cast<int>(tuple.size()) != arity())
    throw ShapeError("bracket key needs " + std::to_string(arity()) + " indices, got " + std::to_string(tuple.size()));
  for (int t : tuple)
    if (t < 0 || t >= rank()) throw ShapeError("bracket key index out of range: " + join_indices(tuple));
  check_section(value, rank());
  const bool increasing = std::adjacent_find(tuple.begin(), tuple.end(), std::greater_equal<>()) == tuple.end();
  if (increasing && value.is_zero()) {
    entries_.erase(tuple);
  } else {
    entries_[tuple] = value;
  }
}

Section BracketTable::basis_value(const std::vector<int>& tuple) const {
  if (auto it = entries_.find(tuple); it != entries_.end()) return it->second;
  auto [sorted, sign] = canonical_blade(tuple);
  if (sign == 0) return Section(rank());
  auto it = entries_.find(sorted);
  if (it == entries_.end()) return Section(rank());
  return signed_section(sign, it->second);
}

Section BracketTable::evaluate(std::span<const Section> xs) const {
  const int n = arity();
  const int r = rank();
  check_arity(xs, static_cast<std::size_t>(n), r, "bracket");
  Section out(r);

  // Tensorial part: Σ_t X_1^{t_1} ⋯ X_n^{t_n} [e_{t_1}, …, e_{t_n}] over every
  // ordering of every index multiset that carries an entry.
  std::vector<std::vector<int>> multisets;
  for (const auto& [key, value] : entries_) {
    std::vector<int> m = key;
    std::sort(m.begin(), m.end());
    multisets.push_back(std::move(m));
  }
  std::sort(multisets.begin(), multisets.end());
  multisets.erase(std::unique(multisets.begin(), multisets.end()), multisets.end());
  for (auto tuple : multisets) {
    do {
      const Section value = basis_value(tuple);
      if (value.is_zero()) continue;
      Scalar coefficient(1);
      for (std::size_t i = 0; i < tuple.size() && !coefficient.is_zero(); ++i)
        coefficient *= xs[i][tuple[i]];
      if (!coefficient.is_zero()) out += coefficient * value;
    } while (std::next_permutation(tuple.begin(), tuple.end()));
  }

  // Leibniz part: slot i moved last contributes (-1)^{n-i} ρ(X_1 ∧ … X̂_i … ∧ X_n)(X_i^b) e_b.
  if (!bundle_.anchor_is_zero()) {
    for (int i = n; i >= 1; --i) {
      const auto idx = static_cast<std::size_t>(i - 1);
      const VectorField v = anchor_apply(bundle_, wedge_without(xs, idx, r));
      if (v.is_zero()) continue;
      const int sign = parity_sign(n - i);
      for (int b = 0; b < r; ++b) {
        Scalar d = v(xs[idx][b]);
        if (sign > 0) {
          out[b] += d;
        } else {
          out[b] -= d;
        }
      }
    }
  }
  return out;
}

BracketTable BracketTable::materialized() const {
  BracketTable out(bundle_);
  for (const auto& sorted : increasing_blades(rank(), arity())) {
    std::vector<int> tuple = sorted;
    do {
      const Section value = basis_value(tuple);
      if (!value.is_zero()) out.entries_[tuple] = value;
    } while (std::next_permutation(tuple.begin(), tuple.end()));
  }
  // Entries on tuples with repeated indices have no skew image; keep them as given.
  for (const auto& [key, value] : entries_)
    if (canonical_blade(key).second == 0 && !value.is_zero()) out.entries_[key] = value;
  return out;
}

BracketTable induced_bracket(const Connection& nabla) {
  BracketTable out(nabla.bundle());
  for (const auto& tuple : increasing_blades(nabla.rank(), nabla.arity())) {
    const Section value = bracket_from_connection(nabla, basis_sections(nabla.rank(), tuple));
    if (!value.is_zero()) out.set(tuple, value);
  }
  return out;
}

// ---------------------------------------------------------------- generic data

Section generic_section(const std::string& name, int rank) {
  Section out(rank);
  for (int k = 0; k < rank; ++k) out[k] = Scalar(Variable::jet(name + "e" + std::to_string(k + 1)));
  return out;
}

Scalar generic_function(const std::string& tag) { return Scalar(Variable::jet(tag)); }

// ---------------------------------------------------------------- checks

CheckReport check_condition1(const Connection& nabla) {
  const int n = nabla.arity();
  const int r = nabla.rank();
  const Scalar f = generic_function("f");
  const auto wedges = increasing_blades(r, n - 1);

  auto sweep = [&](const std::vector<Section>& xs, const std::string& xs_name) -> std::optional<CheckReport> {
    for (const auto& wb : wedges) {
      const MultiSection w = MultiSection::blade(nabla.bundle().frame(), wb);
      for (int z = 0; z < r; ++z) {
        const Section e = Section::basis(r, z);
        Section defect = curvature(nabla, xs, w, f * e) - f * curvature(nabla, xs, w, e);
        if (!defect.is_zero())
          return CheckReport::fail("condition1",
                                   "X=(" + xs_name + "), W=" + blade_name(wb) + ", Z=e" + std::to_string(z + 1) +
                                       ", f generic",
                                   defect.to_string());
      }
    }
    return std::nullopt;
  };

  for (const auto& xb : increasing_blades(r, n - 1)) {
    std::string name;
    for (int s : xb) name += (name.empty() ? "" : ",") + std::string("e") + std::to_string(s + 1);
    if (auto failed = sweep(basis_sections(r, xb), name)) return *failed;
  }
  // R is not tensorial in the X slots, so also run them generically.
  if (auto failed = sweep(generic_sections("X", n - 1, r), generic_names("X", n - 1) + " generic")) return *failed;
  return CheckReport::pass("condition1");
}

CheckReport check_bianchi(const Connection& nabla) {
  const int n = nabla.arity();
  const int r = nabla.rank();
  const auto xs = generic_sections("X", n - 1, r);
  const auto ys = generic_sections("Y", n, r);
  Section total(r);
  for (int i = 1; i <= n; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    Section term = curvature(nabla, xs, cyclic_wedge(ys, idx, r), ys[idx]);
    total += signed_section(parity_sign((n - 1) * i), std::move(term));
  }
  if (!total.is_zero())
    return CheckReport::fail("bianchi", "X=(" + generic_names("X", n - 1) + "), Y=(" + generic_names("Y", n) +
                                            ") generic",
                             total.to_string());
  return CheckReport::pass("bianchi");
}

CheckReport check_leibniz(const BracketTable& bracket) {
  const int n = bracket.arity();
  const int r = bracket.rank();
  const Scalar f = generic_function("f");

  // Leibniz rule in the last slot.
  {
    auto args = generic_sections("X", n - 1, r);
    const Section y = generic_section("Y", r);
    const VectorField v = anchor_apply(bracket.bundle(), wedge_sections(args, r));
    args.push_back(y);
    const Section plain = bracket.evaluate(args);
    args.back() = f * y;
    Section residual = bracket.evaluate(args) - f * plain - v(f) * y;
    if (!residual.is_zero())
      return CheckReport::fail("leibniz", "X=(" + generic_names("X", n - 1) + "), Y generic, f generic",
                               residual.to_string());
  }
  // The rule must hold in every slot, which for a table amounts to consistent
  // skew-symmetry: each adjacent transposition flips the sign.
  const auto xs = generic_sections("X", n, r);
  const Section base = bracket.evaluate(xs);
  for (int p = 0; p + 1 < n; ++p) {
    auto swapped = xs;
    std::swap(swapped[static_cast<std::size_t>(p)], swapped[static_cast<std::size_t>(p + 1)]);
    Section residual = bracket.evaluate(swapped) + base;
    if (!residual.is_zero())
      return CheckReport::fail("leibniz",
                               "X=(" + generic_names("X", n) + ") generic, slots " + std::to_string(p + 1) + "," +
                                   std::to_string(p + 2) + " swapped",
                               residual.to_string());
  }
  return CheckReport::pass("leibniz");
}

CheckReport check_anchor_compat(const BracketTable& bracket) {
  const int n = bracket.arity();
  const int r = bracket.rank();
  const AnchoredBundle& bundle = bracket.bundle();
  if (bundle.anchor_is_zero()) return CheckReport::pass("anchor_compat");
  const auto xs = generic_sections("X", n - 1, r);
  const auto ys = generic_sections("Y", n - 1, r);
  VectorField residual =
      lie_bracket_vf(anchor_apply(bundle, wedge_sections(xs, r)), anchor_apply(bundle, wedge_sections(ys, r)));
  for (std::size_t i = 0; i < ys.size(); ++i) {
    std::vector<Section> args = xs;
    args.push_back(ys[i]);
    auto moved = ys;
    moved[i] = bracket.evaluate(args);
    residual -= anchor_apply(bundle, wedge_sections(moved, r));
  }
  if (!residual.is_zero())
    return CheckReport::fail("anchor_compat",
                             "X=(" + generic_names("X", n - 1) + "), Y=(" + generic_names("Y", n - 1) + ") generic",
                             residual.to_string());
  return CheckReport::pass("anchor_compat");
}

CheckReport check_jacobi(const BracketTable& bracket) {
  const int n = bracket.arity();
  const int r = bracket.rank();
  const auto xs = generic_sections("X", n - 1, r);
  const auto ys = generic_sections("Y", n, r);
  auto with_last = [&](const Section& last) {
    std::vector<Section> args = xs;
    args.push_back(last);
    return bracket.evaluate(args);
  };
  Section residual = with_last(bracket.evaluate(ys));
  for (std::size_t i = 0; i < ys.size(); ++i) {
    auto moved = ys;
    moved[i] = with_last(ys[i]);
    residual -= bracket.evaluate(moved);
  }
  if (!residual.is_zero())
    return CheckReport::fail("jacobi", "X=(" + generic_names("X", n - 1) + "), Y=(" + generic_names("Y", n) +
                                           ") generic",
                             residual.to_string());
  return CheckReport::pass("jacobi");
}

RankDiagnostic rank_diagnostic(const AnchoredBundle& bundle) {
  const int m = bundle.base_dim();
  std::vector<Blade> row_names;
  std::vector<std::vector<Scalar>> rows;
  for (const auto& [blade, v] : bundle.anchor()) {
    row_names.push_back(blade);
    rows.push_back(v.coefficients());
  }
  const int max_rank = std::min(static_cast<int>(rows.size()), m);
  int rank = 0;
  std::optional<Witness> first_excess;
  for (int k = 1; k <= max_rank; ++k) {
    bool found = false;
    for (const auto& rsel : increasing_blades(static_cast<int>(rows.size()), k)) {
      for (const auto& csel : increasing_blades(m, k)) {
        std::vector<std::vector<Scalar>> minor(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b)
            minor[static_cast<std::size_t>(a)].push_back(
                rows[static_cast<std::size_t>(rsel[static_cast<std::size_t>(a)])]
                    [static_cast<std::size_t>(csel[static_cast<std::size_t>(b)])]);
        Scalar d = determinant(minor);
        if (d.is_zero()) continue;
        found = true;
        if (k == 2 && !first_excess) {
          std::string args = "rows ";
          for (int a = 0; a < k; ++a)
            args += (a ? "," : "") + blade_name(row_names[static_cast<std::size_t>(rsel[static_cast<std::size_t>(a)])]);
          args += "; columns ";
          for (int b = 0; b < k; ++b) args += (b ? ",x" : "x") + std::to_string(csel[static_cast<std::size_t>(b)] + 1);
          first_excess = Witness{std::move(args), d.to_string()};
        }
        break;
      }
      if (found) break;
    }
    if (!found) break;
    rank = k;
  }
  RankDiagnostic out{CheckReport::pass("rank"), rank};
  if (bundle.arity() >= 3 && rank > 1) {
    out.report.status = CheckStatus::Fail;
    out.report.witness = *first_excess;
  }
  return out;
}

// ---------------------------------------------------------------- realization

Connection realize_connection(const BracketTable& bracket, const Connection& base) {
  if (!(bracket.bundle() == base.bundle()))
    throw ConstructionError("bracket and base connection live on different anchored bundles");
  const int n = bracket.arity();
  const int r = bracket.rank();

  // K = B - [·]^{∇°} must be tensorial; check the last slot with a generic function.
  {
    const Scalar f = generic_function("f");
    auto args = generic_sections("X", n, r);
    auto k_of = [&](const std::vector<Section>& xs) {
      return bracket.evaluate(xs) - bracket_from_connection(base, xs);
    };
    const Section plain = k_of(args);
    args.back() = f * args.back();
    Section defect = k_of(args) - f * plain;
    if (!defect.is_zero())
      throw ConstructionError("difference with the base bracket is not tensorial; X=(" + generic_names("X", n) +
                              ") generic, f generic: " + defect.to_string());
  }

  Connection out = base;
  const Rational inv_n(1, n);
  for (const auto& wedge : increasing_blades(r, n - 1)) {
    for (int j = 0; j < r; ++j) {
      std::vector<int> tuple = wedge;
      tuple.push_back(j);
      const auto args = basis_sections(r, tuple);
      const Section k = bracket.basis_value(tuple) - bracket_from_connection(base, args);
      if (k.is_zero()) continue;
      out.set(wedge, j, base.at(wedge, j) + Scalar(inv_n) * k);
    }
  }

  const auto xs = generic_sections("X", n, r);
  Section mismatch = bracket_from_connection(out, xs) - bracket.evaluate(xs);
  if (!mismatch.is_zero())
    throw ConstructionError("realized connection does not reproduce the bracket; X=(" + generic_names("X", n) +
                            ") generic: " + mismatch.to_string());
  return out;
}

// ---------------------------------------------------------------- constant data

std::vector<Rational> StructureConstants::at(const std::vector<int>& tuple) const {
  std::vector<Rational> out(static_cast<std::size_t>(rank));
  auto [sorted, sign] = canonical_blade(tuple);
  if (sign == 0) return out;
  auto it = values.find(sorted);
  if (it == values.end()) return out;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sign > 0 ? it->second[k] : -it->second[k];
  return out;
}

std::vector<Rational> SplittingConstants::at(const std::vector<int>& wedge, int last) const {
  std::vector<Rational> out(static_cast<std::size_t>(rank));
  auto [sorted, sign] = canonical_blade(wedge);
  if (sign == 0) return out;
  auto it = values.find({sorted, last});
  if (it == values.end()) return out;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sign > 0 ? it->second[k] : -it->second[k];
  return out;
}

SplittingConstants symmetric_splitting(const StructureConstants& c) {
  SplittingConstants a{c.arity, c.rank, {}};
  const Rational inv_n(1, c.arity);
  for (const auto& wedge : increasing_blades(c.rank, c.arity - 1)) {
    for (int j = 0; j < c.rank; ++j) {
      std::vector<int> tuple = wedge;
      tuple.push_back(j);
      auto value = c.at(tuple);
      bool nonzero = false;
      for (auto& v : value) {
        v *= inv_n;
        nonzero = nonzero || !v.is_zero();
      }
      if (nonzero) a.values[{wedge, j}] = std::move(value);
    }
  }
  return a;
}

Connection connection_from_splitting(const StructureConstants& c, const SplittingConstants& a, const Scalar& g,
                                     int base_dim) {
  const int n = c.arity;
  const int r = c.rank;
  if (a.arity != n || a.rank != r) throw ShapeError("structure and splitting constants have different shapes");
  for (const auto& [key, v] : c.values)
    if (static_cast<int>(v.size()) != r) throw ShapeError("structure constant vector of wrong length");
  for (const auto& [key, v] : a.values)
    if (static_cast<int>(v.size()) != r) throw ShapeError("splitting constant vector of wrong length");

  for (const auto& tuple : all_tuples(r, n)) {
    const std::vector<int> head(tuple.begin(), tuple.end() - 1);
    std::vector<Rational> lhs = a.at(head, tuple.back());
    for (int k = 1; k <= n - 1; ++k) {
      // i_{k+1} … i_n i_1 … i_{k-1}; i_k (k 1-based).
      std::vector<int> rotated;
      for (int s = k; s < n; ++s) rotated.push_back(tuple[static_cast<std::size_t>(s)]);
      for (int s = 0; s < k - 1; ++s) rotated.push_back(tuple[static_cast<std::size_t>(s)]);
      const auto term = a.at(rotated, tuple[static_cast<std::size_t>(k - 1)]);
      const int sign = parity_sign((n - 1) * k);
      for (std::size_t q = 0; q < lhs.size(); ++q) lhs[q] += sign > 0 ? term[q] : -term[q];
    }
    const auto rhs = c.at(tuple);
    if (lhs != rhs) {
      std::size_t q = 0;
      while (lhs[q] == rhs[q]) ++q;
      throw ConstructionError("splitting relation violated at (" + join_indices(tuple) + "), component e" +
                              std::to_string(q + 1) + ": " + lhs[q].to_string() + " != " + rhs[q].to_string());
    }
  }

  Connection out{AnchoredBundle(base_dim, n, r)};
  for (const auto& [key, v] : a.values) {
    Section s(r);
    for (int k = 0; k < r; ++k) s[k] = g * v[static_cast<std::size_t>(k)];
    out.set(key.first, key.second, s);
  }
  return out;
}

}  // namespace flp
