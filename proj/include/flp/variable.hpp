#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace flp {

/// A coordinate direction: a fiber coordinate y_i or a base coordinate x^a
/// (1-based). Fiber directions order before base directions, matching the
/// total-space order y_1..y_n, x^1..x^m.
struct Coordinate {
  enum class Kind : std::uint8_t { Fiber, Base };

  Kind kind = Kind::Base;
  int index = 1;

  static Coordinate base(int a) { return {Kind::Base, a}; }
  static Coordinate fiber(int i) { return {Kind::Fiber, i}; }

  bool is_base() const { return kind == Kind::Base; }
  bool is_fiber() const { return kind == Kind::Fiber; }
  /// "x2", "y1".
  std::string name() const;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

enum class VariableKind : std::uint8_t { Coordinate, Fiber, Jet };

/// A polynomial indeterminate: a base coordinate x^a, a fiber coordinate y_i,
/// or a jet symbol u_I standing for the partial derivative ∂_I u of a generic
/// smooth function u. Jet multi-indices are kept sorted, so mixed partials
/// commute by construction. Identity is by value.
class Variable {
 public:
  static Variable coordinate(int a);
  static Variable fiber(int i);
  /// Jet symbol for the function `tag`. A jet on the total space may be
  /// differentiated along fiber directions; a base jet is constant along them.
  static Variable jet(std::string tag, std::vector<Coordinate> partials = {}, bool on_total_space = false);
  static Variable from(Coordinate c) { return c.is_base() ? coordinate(c.index) : fiber(c.index); }

  VariableKind kind() const { return kind_; }
  bool is_jet() const { return kind_ == VariableKind::Jet; }
  /// The direction of a coordinate or fiber variable.
  Coordinate direction() const;
  int index() const { return index_; }
  const std::string& tag() const { return tag_; }
  const std::vector<Coordinate>& partials() const { return partials_; }
  bool on_total_space() const { return total_; }

  /// For a jet: the jet of one order higher along `c` (multi-index re-sorted).
  Variable differentiated(Coordinate c) const;
  /// Jet symbols are constant along fiber directions unless they live on the total space.
  bool jet_depends_on(Coordinate c) const { return c.is_base() || total_; }

  /// "x1", "y2", "f", "X1e2_{x1,x1}".
  std::string name() const;

  friend auto operator<=>(const Variable&, const Variable&) = default;

 private:
  VariableKind kind_ = VariableKind::Coordinate;
  int index_ = 0;
  std::string tag_;
  std::vector<Coordinate> partials_;
  bool total_ = false;
};

}  // namespace flp
