#pragma once

#include <span>
#include <string>
#include <vector>

#include "flp/algebroid.hpp"
#include "flp/check.hpp"
#include "flp/exterior.hpp"

namespace flp {

/// An n-vector field π on the total space of A* with coordinates
/// y_1..y_n, x^1..x^m.
struct NambuStructure {
  int fiber_dim = 3;
  int base_dim = 1;
  MultiVectorField pi;

  NambuStructure() = default;
  /// Throws ShapeError unless π is an n-vector on Space::total(n, m) without jets.
  NambuStructure(int fiber_dim, int base_dim, MultiVectorField pi);

  Space space() const { return Space::total(fiber_dim, base_dim); }
  int total_dim() const { return fiber_dim + base_dim; }

  friend bool operator==(const NambuStructure&, const NambuStructure&) = default;
};

/// φ_X = Σ_i X^i y_i.
Scalar linear_function(const Section& x);

/// π = φ_{[e_1,…,e_n]} ∂y_1∧…∧∂y_n + Σ_l ∂y_1∧…∂ŷ_l…∧∂y_n ∧ ρ(e_1∧…ê_l…∧e_n).
/// Throws ShapeError unless rank = arity >= 3, and ConstructionError if the
/// result fails check_defining_relations.
NambuStructure dualize(const BracketTable& bracket);

/// {φ_{X_1}, …, φ_{X_n}} = φ_{[X_1,…,X_n]} and
/// {φ_{X_1}, …, φ_{X_{n-1}}, f} = ρ(X_1∧…∧X_{n-1})(f), on frame tuples first
/// and then on generic sections and a generic basic function f.
CheckReport check_defining_relations(const NambuStructure& nambu, const BracketTable& bracket);

struct LinearityReport {
  /// Pure ∂y component has a coefficient linear homogeneous in y.
  bool fiber_linear = true;
  /// Components with one ∂x factor have y-free coefficients.
  bool mixed_basic = true;
  /// Components with two or more ∂x factors vanish.
  bool higher_vanish = true;
  /// First offending component for each failed condition, in order.
  std::vector<Witness> witnesses;

  bool passed() const { return fiber_linear && mixed_basic && higher_vanish; }
  CheckReport as_check() const;
};

LinearityReport check_linearity(const NambuStructure& nambu);

struct NambuForms {
  DifferentialForm volume;  // dy_1∧…∧dy_n∧dx^1∧…∧dx^m
  DifferentialForm omega;   // ι_π volume
  DifferentialForm d_omega;
};

NambuForms nambu_forms(const NambuStructure& nambu);

/// (ι_K ω)∧ω and (ι_K ω)∧dω for a multivector K of degree l - n - 1.
std::pair<DifferentialForm, DifferentialForm> dufour_zung_terms(const NambuForms& forms, const MultiVectorField& k);

/// Both wedge conditions over every basis (l-n-1)-multivector K.
/// Throws ShapeError when n < 3.
CheckReport check_dufour_zung(const NambuStructure& nambu);

/// For i ≠ j: f_î ∂f_ĵ/∂x^1 = f_ĵ ∂f_î/∂x^1 and (-1)^i f_î c^j = (-1)^j f_ĵ c^i,
/// with f[l-1] the anchor coefficient f_{1…l̂…n} and c[k-1] = c^k.
CheckReport check_structure_relations(std::span<const Scalar> c, std::span<const Scalar> f);

/// {f_1, …, f_n} = π(df_1, …, df_n).
Scalar np_bracket(const NambuStructure& nambu, std::span<const Scalar> fs);

/// {f_1,…,f_{n-1},{g_1,…,g_n}} = Σ_i {g_1,…,{f_1,…,f_{n-1},g_i},…,g_n}
/// on generic functions of the total space.
CheckReport check_fundamental_identity(const NambuStructure& nambu);

}  // namespace flp
