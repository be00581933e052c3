#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flp/check.hpp"
#include "flp/exterior.hpp"
#include "flp/scalar.hpp"

namespace flp {

/// Trivial bundle of rank r over ℝ^m with an n-anchor ρ: ∧^{n-1}A → TM,
/// given on increasing (n-1)-blades of the frame and extended multilinearly.
class AnchoredBundle {
 public:
  AnchoredBundle() = default;
  /// Throws ShapeError unless m >= 1, n >= 2 and r >= 1.
  AnchoredBundle(int base_dim, int arity, int rank);

  int base_dim() const { return base_dim_; }
  int arity() const { return arity_; }
  int rank() const { return rank_; }
  Frame frame() const { return Frame{rank_}; }
  Space base() const { return Space::base(base_dim_); }

  void set_anchor(const Blade& wedge, const VectorField& value);
  /// ρ(e_I); zero when the table has no entry.
  VectorField anchor_of(const Blade& wedge) const;
  const std::map<Blade, VectorField>& anchor() const { return anchor_; }
  bool anchor_is_zero() const { return anchor_.empty(); }

  friend bool operator==(const AnchoredBundle&, const AnchoredBundle&) = default;

 private:
  int base_dim_ = 1;
  int arity_ = 2;
  int rank_ = 1;
  std::map<Blade, VectorField> anchor_;
};

/// ρ(W) for W ∈ Γ(∧^{n-1}A).
VectorField anchor_apply(const AnchoredBundle& bundle, const MultiSection& w);

/// Connection on an anchored bundle, stored as ∇_{e_I} e_j for increasing
/// (n-1)-blades I. Tensorial in the wedge slot, Leibniz in the section slot.
class Connection {
 public:
  Connection() = default;
  explicit Connection(AnchoredBundle bundle) : bundle_(std::move(bundle)) {}

  const AnchoredBundle& bundle() const { return bundle_; }
  int arity() const { return bundle_.arity(); }
  int rank() const { return bundle_.rank(); }

  void set(const Blade& wedge, int j, const Section& value);
  /// ∇_{e_I} e_j; zero when absent.
  Section at(const Blade& wedge, int j) const;
  const std::map<std::pair<Blade, int>, Section>& table() const { return gamma_; }

  friend bool operator==(const Connection&, const Connection&) = default;

 private:
  AnchoredBundle bundle_;
  std::map<std::pair<Blade, int>, Section> gamma_;
};

/// The connection with an empty table on `bundle`.
Connection zero_connection(const AnchoredBundle& bundle);

/// ∇_W Z = Σ_j Z^j ∇_W e_j + ρ(W)(Z^j) e_j.
Section connection_apply(const Connection& nabla, const MultiSection& w, const Section& z);

/// [X_1, …, X_n]^∇ = Σ_i (-1)^{n+i} ∇_{X_1∧…X̂_i…∧X_n} X_i.
Section bracket_from_connection(const Connection& nabla, std::span<const Section> xs);
/// The same bracket through the cyclic form Σ_i (-1)^{(n-1)i} ∇_{X_{i+1}∧…∧X_n∧X_1∧…∧X_{i-1}} X_i.
Section bracket_from_connection_cyclic(const Connection& nabla, std::span<const Section> xs);

/// The covariant derivative X^∇_{1…n-1} on a Scalar: ρ(X_1∧…∧X_{n-1})(s).
Scalar nabla_ext(const Connection& nabla, std::span<const Section> xs, const Scalar& s);
/// X^∇_{1…n-1} extended to ∧^k A as a derivation (Leibniz on factors and coefficients).
MultiSection nabla_ext(const Connection& nabla, std::span<const Section> xs, const MultiSection& w);

/// R^∇(X̄, W)(Z) = X^∇(∇_W Z) - ∇_W(X^∇ Z) - ∇_{X^∇(W)} Z.
Section curvature(const Connection& nabla, std::span<const Section> xs, const MultiSection& w, const Section& z);

/// n-bracket given by its values on frame tuples. Entries on increasing tuples
/// extend by total skew-symmetry; an entry on a non-increasing tuple overrides
/// that extension, which is how skew-inconsistent tables are represented.
/// Evaluation on arbitrary sections applies the Leibniz rule in every slot.
class BracketTable {
 public:
  BracketTable() = default;
  explicit BracketTable(AnchoredBundle bundle) : bundle_(std::move(bundle)) {}

  const AnchoredBundle& bundle() const { return bundle_; }
  int arity() const { return bundle_.arity(); }
  int rank() const { return bundle_.rank(); }

  void set(const std::vector<int>& tuple, const Section& value);
  const std::map<std::vector<int>, Section>& entries() const { return entries_; }

  /// [e_{t_1}, …, e_{t_n}].
  Section basis_value(const std::vector<int>& tuple) const;
  /// [X_1, …, X_n] through the multilinear and Leibniz extension.
  Section evaluate(std::span<const Section> xs) const;
  /// Equivalent table with an explicit entry for every ordered tuple.
  BracketTable materialized() const;

  friend bool operator==(const BracketTable&, const BracketTable&) = default;

 private:
  AnchoredBundle bundle_;
  std::map<std::vector<int>, Section> entries_;
};

/// Tabulates [·, …, ·]^∇ on increasing frame tuples.
BracketTable induced_bracket(const Connection& nabla);

/// Section Σ_k {name}e{k} e_k with a fresh jet symbol per component.
Section generic_section(const std::string& name, int rank);
/// A generic smooth function on the base.
Scalar generic_function(const std::string& tag);

// Filippov-connection conditions.
CheckReport check_condition1(const Connection& nabla);
CheckReport check_bianchi(const Connection& nabla);

// Filippov n-algebroid axioms for a bracket on its bundle.
CheckReport check_leibniz(const BracketTable& bracket);
CheckReport check_anchor_compat(const BracketTable& bracket);
CheckReport check_jacobi(const BracketTable& bracket);

struct RankDiagnostic {
  CheckReport report;
  int rank = 0;
};

/// Generic rank of the image of ρ, via minors of its coefficient matrix.
/// For n >= 3 the report fails when the rank exceeds 1.
RankDiagnostic rank_diagnostic(const AnchoredBundle& bundle);

/// Connection ∇ = ∇° + K/n with K = B - [·]^{∇°}, whose induced bracket is B.
/// Throws ConstructionError (with a witness in the message) when K is not
/// tensorial or the induced bracket does not reproduce B.
Connection realize_connection(const BracketTable& bracket, const Connection& base);

/// Constant coefficients c^j_{i_1…i_n} of an n-bracket on the frame,
/// stored on increasing tuples and extended skew-symmetrically.
struct StructureConstants {
  int arity = 2;
  int rank = 1;
  std::map<Blade, std::vector<Rational>> values;

  std::vector<Rational> at(const std::vector<int>& tuple) const;
};

/// Constants a^j_{i_1…i_{n-1}; i_n}, stored with an increasing (n-1)-blade
/// and extended skew-symmetrically in it.
struct SplittingConstants {
  int arity = 2;
  int rank = 1;
  std::map<std::pair<Blade, int>, std::vector<Rational>> values;

  std::vector<Rational> at(const std::vector<int>& wedge, int last) const;
};

/// a_{I; j} = c_{I j} / n, which satisfies the splitting relation for any skew c.
SplittingConstants symmetric_splitting(const StructureConstants& c);

/// Connection on the zero-anchor bundle over ℝ^m with ∇_{e_I} e_j = g Σ_k a^k_{I;j} e_k.
/// Throws ConstructionError naming the first tuple where the splitting
/// relation against c fails.
Connection connection_from_splitting(const StructureConstants& c, const SplittingConstants& a, const Scalar& g,
                                     int base_dim);

}  // namespace flp
