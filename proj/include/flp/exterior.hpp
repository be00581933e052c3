#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flp/error.hpp"
#include "flp/scalar.hpp"

namespace flp {

/// Strictly increasing list of 0-based basis slots.
using Blade = std::vector<int>;

/// All strictly increasing k-subsets of 0..dim-1 in lexicographic order.
std::vector<Blade> increasing_blades(int dim, int k);

/// Sorts `slots` and returns the sorted blade with the permutation sign
/// (+1/-1), or sign 0 if a slot repeats.
std::pair<Blade, int> canonical_blade(std::vector<int> slots);

/// Sign of moving the slots `front` (in that order) ahead of the remaining
/// slots of the strictly increasing `whole`; 0 if `front` is not a subset.
int extraction_sign(const Blade& whole, const std::vector<int>& front, Blade* rest);

/// Linear combination text: "x1*a - b + (x2 + 1)*c"; an empty name stands
/// for a bare coefficient. "0" when there are no parts.
std::string format_combination(const std::vector<std::pair<std::string, Scalar>>& parts);

/// The frame e_1..e_r of a trivial bundle.
struct Frame {
  int rank = 0;

  int dim() const { return rank; }
  std::string symbol(int slot) const { return "e" + std::to_string(slot + 1); }
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// A coordinate space. With fiber_dim == 0 it is the base ℝ^m with
/// coordinates x^1..x^m; otherwise it is the total space of A* with
/// coordinates ordered y_1..y_n, x^1..x^m.
struct Space {
  int fiber_dim = 0;
  int base_dim = 0;

  static Space base(int m) { return {0, m}; }
  static Space total(int n, int m) { return {n, m}; }

  int dim() const { return fiber_dim + base_dim; }
  Coordinate coordinate(int slot) const {
    return slot < fiber_dim ? Coordinate::fiber(slot + 1) : Coordinate::base(slot - fiber_dim + 1);
  }
  /// Slot of a coordinate direction; throws ShapeError if it is not a coordinate of this space.
  int slot_of(Coordinate c) const;
  std::string symbol(int slot) const { return coordinate(slot).name(); }
  friend bool operator==(const Space&, const Space&) = default;
};

/// Sparse homogeneous element of an exterior algebra over `Basis`:
/// multisections over a Frame, multivector fields and differential forms
/// over a Space. Only strictly increasing blades with non-zero coefficients
/// are stored.
template <class Basis, class Kind>
class Graded {
 public:
  Graded() = default;
  Graded(Basis basis, int degree) : basis_(basis), degree_(degree) {
    if (degree < 0 || degree > basis.dim())
      throw ShapeError("degree " + std::to_string(degree) + " outside 0.." + std::to_string(basis.dim()));
  }

  /// c · b_{slots[0]} ∧ ... ∧ b_{slots[k-1]}, normalized with the permutation sign.
  static Graded blade(Basis basis, std::vector<int> slots, const Scalar& c = Scalar(1)) {
    Graded g(basis, static_cast<int>(slots.size()));
    g.add(std::move(slots), c);
    return g;
  }
  /// The degree-0 element c.
  static Graded scalar(Basis basis, const Scalar& c) { return blade(basis, {}, c); }

  /// Adds c · b_{slots...}; unsorted slots are normalized with the permutation sign.
  void add(std::vector<int> slots, const Scalar& c) {
    if (static_cast<int>(slots.size()) != degree_) throw ShapeError("blade degree does not match element degree");
    for (int s : slots)
      if (s < 0 || s >= basis_.dim()) throw ShapeError("basis slot out of range: " + std::to_string(s + 1));
    auto [b, sign] = canonical_blade(std::move(slots));
    if (sign == 0 || c.is_zero()) return;
    Scalar& slot = terms_[b];
    if (sign > 0) {
      slot += c;
    } else {
      slot -= c;
    }
    if (slot.is_zero()) terms_.erase(b);
  }

  const Basis& basis() const { return basis_; }
  int degree() const { return degree_; }
  const std::map<Blade, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Blade& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar() : it->second;
  }

  Graded& operator+=(const Graded& other) {
    check_compatible(other);
    for (const auto& [b, c] : other.terms_) add(b, c);
    return *this;
  }
  Graded& operator-=(const Graded& other) {
    check_compatible(other);
    for (const auto& [b, c] : other.terms_) add(b, -c);
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  Graded operator-() const {
    Graded out = *this;
    for (auto& [b, c] : out.terms_) c = -c;
    return out;
  }
  friend Graded operator*(const Scalar& s, const Graded& g) {
    Graded out(g.basis_, g.degree_);
    if (s.is_zero()) return out;
    for (const auto& [b, c] : g.terms_) {
      Scalar p = s * c;
      if (!p.is_zero()) out.terms_.emplace(b, std::move(p));
    }
    return out;
  }

  friend bool operator==(const Graded&, const Graded&) = default;

  void check_compatible(const Graded& other) const {
    if (!(basis_ == other.basis_)) throw ShapeError("operands live over different spaces");
    if (degree_ != other.degree_) throw ShapeError("operands have different degrees");
  }

  /// "x1*e1^e2 - e2^e3", "dy3^dx2", "0" when zero.
  std::string to_string() const {
    std::vector<std::pair<std::string, Scalar>> parts;
    for (const auto& [b, c] : terms_) {
      std::string name;
      for (int s : b) name += (name.empty() ? "" : "^") + std::string(Kind::prefix) + basis_.symbol(s);
      parts.emplace_back(std::move(name), c);
    }
    return format_combination(parts);
  }

 private:
  Basis basis_{};
  int degree_ = 0;
  std::map<Blade, Scalar> terms_;
};

template <class Basis, class Kind>
Graded<Basis, Kind> wedge(const Graded<Basis, Kind>& a, const Graded<Basis, Kind>& b) {
  if (!(a.basis() == b.basis())) throw ShapeError("wedge of elements over different spaces");
  if (a.degree() + b.degree() > a.basis().dim()) throw ShapeError("wedge degree exceeds the top degree");
  Graded<Basis, Kind> out(a.basis(), a.degree() + b.degree());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      std::vector<int> slots = ba;
      slots.insert(slots.end(), bb.begin(), bb.end());
      out.add(std::move(slots), ca * cb);
    }
  }
  return out;
}

struct MultiSectionKind {
  static constexpr const char* prefix = "";
};
struct MultiVectorKind {
  static constexpr const char* prefix = "d/d";
};
struct FormKind {
  static constexpr const char* prefix = "d";
};
struct CoFormKind {
  static constexpr const char* prefix = "*";
};

using MultiSection = Graded<Frame, MultiSectionKind>;
using MultiVectorField = Graded<Space, MultiVectorKind>;
using DifferentialForm = Graded<Space, FormKind>;

/// A section Σ_k c_k e_k of the trivial rank-r bundle.
class Section {
 public:
  Section() = default;
  explicit Section(int rank) : coefficients_(static_cast<std::size_t>(rank)) {}
  explicit Section(std::vector<Scalar> coefficients) : coefficients_(std::move(coefficients)) {}
  /// c · e_{slot+1}.
  static Section basis(int rank, int slot, const Scalar& c = Scalar(1));

  int rank() const { return static_cast<int>(coefficients_.size()); }
  const Scalar& operator[](int k) const { return coefficients_[static_cast<std::size_t>(k)]; }
  Scalar& operator[](int k) { return coefficients_[static_cast<std::size_t>(k)]; }
  const std::vector<Scalar>& coefficients() const { return coefficients_; }
  bool is_zero() const;

  Section& operator+=(const Section& other);
  Section& operator-=(const Section& other);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  Section operator-() const;
  friend Section operator*(const Scalar& s, const Section& x);
  friend bool operator==(const Section&, const Section&) = default;

  MultiSection as_multisection() const;
  /// "x1*e1 - e3", "(x1 + 1)*e2", "0".
  std::string to_string() const;

 private:
  std::vector<Scalar> coefficients_;
};

/// X_1 ∧ ... ∧ X_k for sections of a common rank; the empty wedge is the unit 1.
MultiSection wedge_sections(std::span<const Section> xs, int rank);

/// A vector field Σ_s v^s ∂/∂z_s on a coordinate space.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Space space) : space_(space), coefficients_(static_cast<std::size_t>(space.dim())) {}
  VectorField(Space space, std::vector<Scalar> coefficients);
  /// c · ∂/∂z_slot.
  static VectorField coordinate_field(Space space, int slot, const Scalar& c = Scalar(1));

  const Space& space() const { return space_; }
  const Scalar& operator[](int slot) const { return coefficients_[static_cast<std::size_t>(slot)]; }
  Scalar& operator[](int slot) { return coefficients_[static_cast<std::size_t>(slot)]; }
  const std::vector<Scalar>& coefficients() const { return coefficients_; }
  bool is_zero() const;

  /// The derivation V(f) = Σ_s v^s ∂f/∂z_s.
  Scalar operator()(const Scalar& f) const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Scalar& s, const VectorField& v);
  friend bool operator==(const VectorField&, const VectorField&) = default;

  MultiVectorField as_multivector() const;
  /// "x1*d/dx1 - d/dx2", "0".
  std::string to_string() const;

 private:
  Space space_{};
  std::vector<Scalar> coefficients_;
};

/// [X, Y]^c = X(Y^c) - Y(X^c).
VectorField lie_bracket_vf(const VectorField& x, const VectorField& y);

/// ι_K α with front-slot insertion: ι_{v1∧…∧vk} α = α(v1, …, vk, ·, …, ·).
/// Throws ShapeError when deg K > deg α or the spaces differ.
DifferentialForm interior_product(const MultiVectorField& k, const DifferentialForm& alpha);

/// d(f dz_I) = Σ_s ∂f/∂z_s dz_s ∧ dz_I. Throws ShapeError on jet coefficients.
DifferentialForm exterior_derivative(const DifferentialForm& alpha);

/// The exact 1-form df on `space`.
DifferentialForm differential(const Space& space, const Scalar& f);

/// α(v_1, …, v_p) = Σ_I α_I det[dz_{I_a}(v_b)].
Scalar evaluate(const DifferentialForm& alpha, std::span<const VectorField> vectors);

/// K(df_1, …, df_k) = Σ_J K_J det[∂f_a/∂z_{J_b}].
Scalar multivector_pair(const MultiVectorField& k, std::span<const Scalar> functions);

/// Determinant of a square matrix of Scalars (cofactor expansion).
Scalar determinant(const std::vector<std::vector<Scalar>>& matrix);

}  // namespace flp
