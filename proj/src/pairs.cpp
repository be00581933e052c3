#include "flp/pairs.hpp"

#include "flp/error.hpp"

namespace flp {

CDO::CDO(std::vector<std::vector<Scalar>> matrix, VectorField symbol)
    : matrix_(std::move(matrix)), symbol_(std::move(symbol)) {
  if (matrix_.empty()) throw ShapeError("operator matrix is empty");
  for (const auto& row : matrix_)
    if (row.size() != matrix_.size()) throw ShapeError("operator matrix must be square");
  if (symbol_.space().fiber_dim != 0) throw ShapeError("operator symbol must be a vector field on the base");
  // The rule D(fX) = f D(X) + X̂(f) X, with generic f and X.
  const Scalar f = generic_function("f");
  const Section x = generic_section("X", rank());
  Section defect = cdo_apply(*this, f * x) - f * cdo_apply(*this, x) - symbol_(f) * x;
  if (!defect.is_zero()) throw ConstructionError("operator violates its Leibniz rule: " + defect.to_string());
}

Section cdo_apply(const CDO& d, const Section& x) {
  const int r = d.rank();
  if (x.rank() != r) throw ShapeError("section rank does not match the operator");
  Section out(r);
  for (int j = 0; j < r; ++j) {
    if (x[j].is_zero()) continue;
    for (int k = 0; k < r; ++k) {
      const Scalar& m = d.matrix()[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      if (!m.is_zero()) out[k] += m * x[j];
    }
    out[j] += d.symbol()(x[j]);
  }
  return out;
}

MultiSection cdo_apply(const CDO& d, const MultiSection& w) {
  const int r = d.rank();
  if (!(w.basis() == Frame{r})) throw ShapeError("multisection rank does not match the operator");
  MultiSection out(w.basis(), w.degree());
  for (const auto& [blade, c] : w.terms()) {
    out.add(blade, d.symbol()(c));
    for (std::size_t s = 0; s < blade.size(); ++s) {
      for (int k = 0; k < r; ++k) {
        const Scalar& m = d.matrix()[static_cast<std::size_t>(k)][static_cast<std::size_t>(blade[s])];
        if (m.is_zero()) continue;
        std::vector<int> slots = blade;
        slots[s] = k;
        out.add(std::move(slots), c * m);
      }
    }
  }
  return out;
}

Scalar pairing(const MultiSection& w, const CoForm& xi) {
  if (w.degree() != xi.degree() || !(w.basis() == xi.basis()))
    throw ShapeError("pairing of a multisection and a coform of different shapes");
  Scalar out;
  for (const auto& [blade, c] : w.terms()) {
    auto it = xi.terms().find(blade);
    if (it != xi.terms().end()) out += c * it->second;
  }
  return out;
}

CoForm cdo_dual_apply(const CDO& d, const CoForm& xi) {
  const int r = d.rank();
  if (!(xi.basis() == Frame{r})) throw ShapeError("coform rank does not match the operator");
  CoForm out(xi.basis(), xi.degree());
  // ⟨e_I|Dξ⟩ only involves ξ on blades reachable from I by replacing one slot,
  // so sweeping the terms of ξ and distributing backwards covers every I.
  for (const auto& [blade, c] : xi.terms()) out.add(blade, d.symbol()(c));
  for (const auto& [target, c] : xi.terms()) {
    // Contributions -M[k][i] ξ_{…k…} to ⟨e_{…i…}|Dξ⟩, slot s of `target` holding k.
    for (std::size_t s = 0; s < target.size(); ++s) {
      const int k = target[s];
      for (int i = 0; i < r; ++i) {
        const Scalar& m = d.matrix()[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        if (m.is_zero()) continue;
        std::vector<int> slots = target;
        slots[s] = i;
        out.add(std::move(slots), -(m * c));
      }
    }
  }
  return out;
}

Scalar eigen_check(const CDO& d, const CoForm& xi) {
  if (xi.is_zero()) throw ConstructionError("coform is zero");
  const CoForm dxi = cdo_dual_apply(d, xi);
  // Prefer a constant coefficient of ξ as the divisor.
  auto pick = xi.terms().begin();
  for (auto it = xi.terms().begin(); it != xi.terms().end(); ++it)
    if (it->second.is_constant()) {
      pick = it;
      break;
    }
  const auto g = exact_quotient(dxi.coefficient(pick->first), pick->second);
  if (!g) throw ConstructionError("no polynomial eigenvalue: D(xi) = " + dxi.to_string());
  const CoForm residual = dxi - (*g) * xi;
  if (!residual.is_zero())
    throw ConstructionError("D(xi) is not a multiple of xi; D(xi) - (" + g->to_string() + ") xi = " +
                            residual.to_string());
  return *g;
}

PairStructure build_pair_structure(const CDO& d, const CoForm& xi) {
  const Scalar g = eigen_check(d, xi);
  const int r = d.rank();
  AnchoredBundle bundle(d.symbol().space().base_dim, xi.degree() + 1, r);
  for (const auto& [blade, c] : xi.terms()) bundle.set_anchor(blade, c * d.symbol());
  Connection nabla(bundle);
  for (const auto& [blade, c] : xi.terms())
    for (int j = 0; j < r; ++j) nabla.set(blade, j, c * cdo_apply(d, Section::basis(r, j)));
  return {std::move(nabla), g};
}

Section pair_bracket_expansion(const CDO& d, const CoForm& xi, std::span<const Section> xs) {
  const int n = xi.degree() + 1;
  const int r = d.rank();
  if (static_cast<int>(xs.size()) != n)
    throw ShapeError("bracket takes " + std::to_string(n) + " sections, got " + std::to_string(xs.size()));
  Section out(r);
  for (int i = 1; i <= n; ++i) {
    std::vector<Section> rest;
    for (int k = 1; k < n; ++k) rest.push_back(xs[static_cast<std::size_t>((i - 1 + k) % n)]);
    const Scalar weight = pairing(wedge_sections(rest, r), xi);
    if (weight.is_zero()) continue;
    const Section term = weight * cdo_apply(d, xs[static_cast<std::size_t>(i - 1)]);
    if (((n - 1) * i) % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

}  // namespace flp
