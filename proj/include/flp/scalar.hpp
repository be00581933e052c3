#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flp/rational.hpp"
#include "flp/variable.hpp"

namespace flp {

struct Factor {
  Variable variable;
  unsigned exponent = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Power product of variables, factors sorted by variable with positive
/// exponents. Ordered graded-lexicographically: higher total degree first,
/// ties broken lexicographically with earlier variables more significant.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Variable v, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  unsigned exponent_of(const Variable& v) const;
  /// Sum of exponents of variables of the given kind.
  unsigned degree_in(VariableKind kind) const;
  bool has_jets() const;

  /// Quotient when `divisor` divides this monomial.
  std::optional<Monomial> divided_by(const Monomial& divisor) const;
  /// This monomial with one power of `v` removed; `v` must be present.
  Monomial without_one(const Variable& v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  /// "x1^2*x3"; the unit monomial prints as "1".
  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Multivariate polynomial with exact rational coefficients over coordinate,
/// fiber and jet variables. The stored form is canonical (terms strictly
/// decreasing in graded-lex order, no zero coefficients), so equality is
/// structural and `is_zero` is a decision procedure.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : Scalar(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value);                    // NOLINT(google-explicit-constructor)
  Scalar(const Variable& v);                        // NOLINT(google-explicit-constructor)
  Scalar(const Rational& coefficient, Monomial monomial);

  /// Canonicalizes an arbitrary list of terms (merging duplicates, dropping zeros).
  static Scalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one()); }
  /// The value of a constant Scalar.
  std::optional<Rational> constant_value() const;
  /// Highest term in graded-lex order; the Scalar must be non-zero.
  const Term& leading_term() const { return terms_.front(); }
  unsigned total_degree() const;
  bool has_jets() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator*=(const Rational& factor);

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const Rational& b) { return a *= b; }
  friend Scalar operator*(const Rational& a, Scalar b) { return b *= a; }

  Scalar pow(unsigned exponent) const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

  /// Canonical text: "3/2*x1^2*x3 - x2", "0" for zero. Jet-free output parses
  /// back to the same Scalar.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Derivative along a coordinate direction. Jets gain the direction in their
/// multi-index; base jets are constant along fiber directions.
Scalar derivative(const Scalar& s, Coordinate direction);
/// ∂/∂x^a on the base (fiber variables are constants). Throws ShapeError for a < 1.
Scalar total_derivative(const Scalar& s, int a);
/// ∂/∂y_i on the total space.
Scalar fiber_derivative(const Scalar& s, int i);

/// Simultaneous substitution. Coordinate and fiber variables are bound
/// individually; a jet family is bound through a polynomial realization of
/// the underlying function, from which every u_I is derived by differentiation.
struct Substitution {
  std::map<Variable, Scalar> variables;
  std::map<std::string, Scalar> jet_families;
};

/// Throws Error when `bindings.variables` binds an individual jet symbol
/// (a partially bound jet family).
Scalar substitute(const Scalar& s, const Substitution& bindings);

/// Exact polynomial quotient a / b, or nullopt when b does not divide a.
/// Throws std::domain_error when b is zero.
std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b);

}  // namespace flp
