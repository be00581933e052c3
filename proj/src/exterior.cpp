#include "flp/exterior.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>

namespace flp {

std::vector<Blade> increasing_blades(int dim, int k) {
  std::vector<Blade> out;
  if (k < 0 || k > dim) return out;
  Blade cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == dim - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::pair<Blade, int> canonical_blade(std::vector<int> slots) {
  int sign = 1;
  for (std::size_t i = 1; i < slots.size(); ++i) {
    for (std::size_t j = i; j > 0 && slots[j - 1] >= slots[j]; --j) {
      if (slots[j - 1] == slots[j]) return {{}, 0};
      std::swap(slots[j - 1], slots[j]);
      sign = -sign;
    }
  }
  return {std::move(slots), sign};
}

int extraction_sign(const Blade& whole, const std::vector<int>& front, Blade* rest) {
  std::vector<std::size_t> order;
  order.reserve(whole.size());
  std::vector<bool> taken(whole.size(), false);
  for (int s : front) {
    auto it = std::lower_bound(whole.begin(), whole.end(), s);
    if (it == whole.end() || *it != s) return 0;
    const auto pos = static_cast<std::size_t>(it - whole.begin());
    if (taken[pos]) return 0;
    taken[pos] = true;
    order.push_back(pos);
  }
  if (rest) rest->clear();
  for (std::size_t pos = 0; pos < whole.size(); ++pos) {
    if (taken[pos]) continue;
    order.push_back(pos);
    if (rest) rest->push_back(whole[pos]);
  }
  int sign = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) sign = -sign;
  return sign;
}

int Space::slot_of(Coordinate c) const {
  if (c.is_fiber() && c.index >= 1 && c.index <= fiber_dim) return c.index - 1;
  if (c.is_base() && c.index >= 1 && c.index <= base_dim) return fiber_dim + c.index - 1;
  throw ShapeError("coordinate " + c.name() + " is not a coordinate of this space");
}

std::string format_combination(const std::vector<std::pair<std::string, Scalar>>& parts) {
  std::string out;
  for (const auto& [name, c] : parts) {
    if (c.is_zero()) continue;
    std::string text;
    if (name.empty()) {
      text = c.to_string();
    } else if (c == Scalar(1)) {
      text = name;
    } else if (c == Scalar(-1)) {
      text = "-" + name;
    } else if (c.terms().size() == 1) {
      text = c.to_string() + "*" + name;
    } else {
      text = "(" + c.to_string() + ")*" + name;
    }
    if (out.empty()) {
      out = std::move(text);
    } else if (text.front() == '-') {
      out += " - " + text.substr(1);
    } else {
      out += " + " + text;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- Section

Section Section::basis(int rank, int slot, const Scalar& c) {
  if (slot < 0 || slot >= rank) throw ShapeError("frame index out of range: " + std::to_string(slot + 1));
  Section s(rank);
  s[slot] = c;
  return s;
}

bool Section::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Scalar& c) { return c.is_zero(); });
}

Section& Section::operator+=(const Section& other) {
  if (rank() != other.rank()) throw ShapeError("sections of different rank");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
  return *this;
}

Section& Section::operator-=(const Section& other) {
  if (rank() != other.rank()) throw ShapeError("sections of different rank");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] -= other.coefficients_[k];
  return *this;
}

Section Section::operator-() const {
  Section out = *this;
  for (auto& c : out.coefficients_) c = -c;
  return out;
}

Section operator*(const Scalar& s, const Section& x) {
  Section out(x.rank());
  if (s.is_zero()) return out;
  for (int k = 0; k < x.rank(); ++k) out[k] = s * x[k];
  return out;
}

MultiSection Section::as_multisection() const {
  MultiSection out(Frame{rank()}, 1);
  for (int k = 0; k < rank(); ++k) out.add({k}, (*this)[k]);
  return out;
}

std::string Section::to_string() const {
  std::vector<std::pair<std::string, Scalar>> parts;
  for (int k = 0; k < rank(); ++k) parts.emplace_back("e" + std::to_string(k + 1), (*this)[k]);
  return format_combination(parts);
}

MultiSection wedge_sections(std::span<const Section> xs, int rank) {
  MultiSection out = MultiSection::scalar(Frame{rank}, Scalar(1));
  for (const auto& x : xs) {
    if (x.rank() != rank) throw ShapeError("section rank does not match the bundle rank");
    out = wedge(out, x.as_multisection());
  }
  return out;
}

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(Space space, std::vector<Scalar> coefficients)
    : space_(space), coefficients_(std::move(coefficients)) {
  if (static_cast<int>(coefficients_.size()) != space.dim())
    throw ShapeError("vector field needs " + std::to_string(space.dim()) + " coefficients");
}

VectorField VectorField::coordinate_field(Space space, int slot, const Scalar& c) {
  VectorField v(space);
  if (slot < 0 || slot >= space.dim()) throw ShapeError("coordinate slot out of range");
  v[slot] = c;
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Scalar& c) { return c.is_zero(); });
}

Scalar VectorField::operator()(const Scalar& f) const {
  Scalar out;
  for (int s = 0; s < space_.dim(); ++s) {
    const Scalar& c = (*this)[s];
    if (c.is_zero()) continue;
    out += c * derivative(f, space_.coordinate(s));
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (!(space_ == other.space_)) throw ShapeError("vector fields on different spaces");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (!(space_ == other.space_)) throw ShapeError("vector fields on different spaces");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] -= other.coefficients_[k];
  return *this;
}

VectorField operator*(const Scalar& s, const VectorField& v) {
  VectorField out(v.space_);
  if (s.is_zero()) return out;
  for (int k = 0; k < v.space_.dim(); ++k) out[k] = s * v[k];
  return out;
}

MultiVectorField VectorField::as_multivector() const {
  MultiVectorField out(space_, 1);
  for (int s = 0; s < space_.dim(); ++s) out.add({s}, (*this)[s]);
  return out;
}

std::string VectorField::to_string() const {
  std::vector<std::pair<std::string, Scalar>> parts;
  for (int s = 0; s < space_.dim(); ++s) parts.emplace_back("d/d" + space_.symbol(s), (*this)[s]);
  return format_combination(parts);
}

VectorField lie_bracket_vf(const VectorField& x, const VectorField& y) {
  if (!(x.space() == y.space())) throw ShapeError("Lie bracket of vector fields on different spaces");
  VectorField out(x.space());
  for (int c = 0; c < x.space().dim(); ++c) out[c] = x(y[c]) - y(x[c]);
  return out;
}

// ---------------------------------------------------------------- forms

DifferentialForm interior_product(const MultiVectorField& k, const DifferentialForm& alpha) {
  if (!(k.basis() == alpha.basis())) throw ShapeError("interior product across different spaces");
  if (k.degree() > alpha.degree())
    throw ShapeError("interior product degree underflow: " + std::to_string(k.degree()) + " > " +
                     std::to_string(alpha.degree()));
  DifferentialForm out(alpha.basis(), alpha.degree() - k.degree());
  Blade rest;
  for (const auto& [j, kc] : k.terms()) {
    for (const auto& [i, ac] : alpha.terms()) {
      const int sign = extraction_sign(i, j, &rest);
      if (sign == 0) continue;
      out.add(rest, sign > 0 ? kc * ac : -(kc * ac));
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& alpha) {
  const Space& space = alpha.basis();
  if (alpha.degree() + 1 > space.dim()) return DifferentialForm(space, alpha.degree());
  DifferentialForm out(space, alpha.degree() + 1);
  for (const auto& [i, f] : alpha.terms()) {
    if (f.has_jets()) throw ShapeError("exterior derivative of a form with jet coefficients");
    for (int s = 0; s < space.dim(); ++s) {
      Scalar df = derivative(f, space.coordinate(s));
      if (df.is_zero()) continue;
      std::vector<int> slots{s};
      slots.insert(slots.end(), i.begin(), i.end());
      out.add(std::move(slots), df);
    }
  }
  return out;
}

DifferentialForm differential(const Space& space, const Scalar& f) {
  DifferentialForm out(space, 1);
  for (int s = 0; s < space.dim(); ++s) out.add({s}, derivative(f, space.coordinate(s)));
  return out;
}

Scalar determinant(const std::vector<std::vector<Scalar>>& matrix) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != n) throw ShapeError("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  if (n > 20) throw ShapeError("determinant too large for cofactor expansion");
  // Expand along rows in order; memoize on the set of columns already used.
  std::unordered_map<std::uint32_t, Scalar> memo;
  auto minor = [&](auto&& self, std::size_t row, std::uint32_t used) -> Scalar {
    if (row == n) return Scalar(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Scalar total;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      const Scalar& entry = matrix[row][c];
      if (!entry.is_zero()) {
        Scalar term = entry * self(self, row + 1, used | (1u << c));
        if (sign > 0) {
          total += term;
        } else {
          total -= term;
        }
      }
      sign = -sign;
    }
    memo.emplace(used, total);
    return total;
  };
  return minor(minor, 0, 0);
}

Scalar evaluate(const DifferentialForm& alpha, std::span<const VectorField> vectors) {
  if (static_cast<int>(vectors.size()) != alpha.degree())
    throw ShapeError("form of degree " + std::to_string(alpha.degree()) + " evaluated on " +
                     std::to_string(vectors.size()) + " vectors");
  for (const auto& v : vectors)
    if (!(v.space() == alpha.basis())) throw ShapeError("vector field on a different space");
  Scalar out;
  const std::size_t p = vectors.size();
  for (const auto& [blade, c] : alpha.terms()) {
    std::vector<std::vector<Scalar>> m(p, std::vector<Scalar>(p));
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) m[a][b] = vectors[b][blade[a]];
    out += c * determinant(m);
  }
  return out;
}

Scalar multivector_pair(const MultiVectorField& k, std::span<const Scalar> functions) {
  if (static_cast<int>(functions.size()) != k.degree())
    throw ShapeError("multivector of degree " + std::to_string(k.degree()) + " paired with " +
                     std::to_string(functions.size()) + " differentials");
  const Space& space = k.basis();
  const std::size_t p = functions.size();
  // partials[a][s] = ∂f_a/∂z_s, computed lazily.
  std::vector<std::vector<std::optional<Scalar>>> partials(p, std::vector<std::optional<Scalar>>(space.dim()));
  auto partial = [&](std::size_t a, int s) -> const Scalar& {
    auto& slot = partials[a][static_cast<std::size_t>(s)];
    if (!slot) slot = derivative(functions[a], space.coordinate(s));
    return *slot;
  };
  Scalar out;
  for (const auto& [blade, c] : k.terms()) {
    std::vector<std::vector<Scalar>> m(p, std::vector<Scalar>(p));
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) m[a][b] = partial(a, blade[b]);
    out += c * determinant(m);
  }
  return out;
}

}  // namespace flp
