#pragma once

#include <map>
#include <string>
#include <string_view>

#include "flp/scalar.hpp"

namespace flp {

/// Names an expression may refer to, each bound to the Scalar it denotes.
class NameTable {
 public:
  NameTable() = default;

  /// x1..xm bound to the base coordinates.
  static NameTable coordinates(int m);
  /// y1..yn and x1..xm bound to the total-space coordinates.
  static NameTable total_space(int n, int m);

  void declare(std::string name, Scalar value);
  const Scalar* find(std::string_view name) const;

 private:
  std::map<std::string, Scalar, std::less<>> names_;
};

/// Parses
///
///   expr     := ['-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := rational | name | '(' expr ')'
///   rational := int ('/' uint)?
///
/// into a canonical Scalar. Whitespace is ignored. Throws ParseError with the
/// offending position on syntax errors and unknown names.
Scalar parse_scalar(std::string_view text, const NameTable& names);

}  // namespace flp
