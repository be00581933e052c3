#pragma once

#include <span>
#include <vector>

#include "flp/algebroid.hpp"
#include "flp/exterior.hpp"

namespace flp {

/// Covariant differential operator on the trivial rank-r bundle:
/// D(e_j) = Σ_k matrix[k][j] e_k with symbol X̂, so D(fX) = f D(X) + X̂(f) X.
class CDO {
 public:
  CDO() = default;
  /// Throws ShapeError unless the matrix is square and non-empty.
  CDO(std::vector<std::vector<Scalar>> matrix, VectorField symbol);

  int rank() const { return static_cast<int>(matrix_.size()); }
  const std::vector<std::vector<Scalar>>& matrix() const { return matrix_; }
  const VectorField& symbol() const { return symbol_; }

  friend bool operator==(const CDO&, const CDO&) = default;

 private:
  std::vector<std::vector<Scalar>> matrix_;
  VectorField symbol_;
};

/// Section of ∧^k A*, with ⟨e_I | ξ⟩ the coefficient at the increasing blade I.
using CoForm = Graded<Frame, CoFormKind>;

Section cdo_apply(const CDO& d, const Section& x);
/// D extended to ∧^k A by the Leibniz rule.
MultiSection cdo_apply(const CDO& d, const MultiSection& w);

/// ⟨W | ξ⟩ for W and ξ of the same degree.
Scalar pairing(const MultiSection& w, const CoForm& xi);

/// ⟨e_I | Dξ⟩ = X̂⟨e_I | ξ⟩ - Σ_s ⟨e_{I_1} ∧ … D(e_{I_s}) … ∧ e_{I_k} | ξ⟩.
CoForm cdo_dual_apply(const CDO& d, const CoForm& xi);

/// The polynomial g with D(ξ) = g ξ. Throws ConstructionError when ξ = 0 or
/// no polynomial g exists.
Scalar eigen_check(const CDO& d, const CoForm& xi);

struct PairStructure {
  Connection connection;  // carries the anchored bundle
  Scalar eigenvalue;
};

/// Anchor ρ(e_I) = ⟨e_I|ξ⟩ X̂ and connection ∇_{e_I} e_j = ⟨e_I|ξ⟩ D(e_j) on
/// the bundle of arity deg ξ + 1. Requires the eigen condition.
PairStructure build_pair_structure(const CDO& d, const CoForm& xi);

/// Σ_i (-1)^{(n-1)i} ⟨X_{i+1} ∧ … ∧ X_n ∧ X_1 ∧ … ∧ X_{i-1} | ξ⟩ D(X_i).
Section pair_bracket_expansion(const CDO& d, const CoForm& xi, std::span<const Section> xs);

}  // namespace flp
