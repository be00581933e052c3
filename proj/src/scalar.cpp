#include "flp/scalar.hpp"

#include <algorithm>
#include <stdexcept>

#include "flp/error.hpp"

namespace flp {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Variable v, unsigned exponent) {
  if (exponent > 0) {
    factors_.push_back({std::move(v), exponent});
    degree_ = exponent;
  }
}

unsigned Monomial::exponent_of(const Variable& v) const {
  for (const auto& f : factors_)
    if (f.variable == v) return f.exponent;
  return 0;
}

unsigned Monomial::degree_in(VariableKind kind) const {
  unsigned d = 0;
  for (const auto& f : factors_)
    if (f.variable.kind() == kind) d += f.exponent;
  return d;
}

bool Monomial::has_jets() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.variable.is_jet(); });
}

std::optional<Monomial> Monomial::divided_by(const Monomial& divisor) const {
  Monomial out;
  auto it = factors_.begin();
  for (const auto& d : divisor.factors_) {
    while (it != factors_.end() && it->variable < d.variable) out.factors_.push_back(*it++);
    if (it == factors_.end() || it->variable != d.variable || it->exponent < d.exponent) return std::nullopt;
    if (it->exponent > d.exponent) out.factors_.push_back({it->variable, it->exponent - d.exponent});
    ++it;
  }
  out.factors_.insert(out.factors_.end(), it, factors_.end());
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::without_one(const Variable& v) const {
  Monomial out = *this;
  auto it = std::find_if(out.factors_.begin(), out.factors_.end(), [&](const Factor& f) { return f.variable == v; });
  if (it == out.factors_.end()) throw std::logic_error("variable not present in monomial");
  if (--it->exponent == 0) out.factors_.erase(it);
  --out.degree_;
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->variable < j->variable) {
      out.factors_.push_back(*i++);
    } else if (j->variable < i->variable) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.push_back({i->variable, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  out.factors_.insert(out.factors_.end(), i, a.factors_.end());
  out.factors_.insert(out.factors_.end(), j, b.factors_.end());
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Factor& fa = a.factors_[k];
    const Factor& fb = b.factors_[k];
    if (fa.variable != fb.variable)
      // The monomial holding the earlier variable is the larger one.
      return fa.variable < fb.variable ? std::strong_ordering::greater : std::strong_ordering::less;
    if (fa.exponent != fb.exponent) return fa.exponent <=> fb.exponent;
  }
  return a.factors_.size() <=> b.factors_.size();
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += f.variable.name();
    if (f.exponent > 1) out += '^' + std::to_string(f.exponent);
  }
  return out;
}

// ---------------------------------------------------------------- Scalar

namespace {

bool term_greater(const Term& a, const Term& b) { return a.monomial > b.monomial; }

// Merges two canonical term lists, subtracting `b` when `negate` is set.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    const auto c = i->monomial <=> j->monomial;
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(negate ? Term{j->monomial, -j->coefficient} : *j);
      ++j;
    } else {
      Rational sum = negate ? i->coefficient - j->coefficient : i->coefficient + j->coefficient;
      if (!sum.is_zero()) out.push_back({i->monomial, std::move(sum)});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  for (; j != b.end(); ++j) out.push_back(negate ? Term{j->monomial, -j->coefficient} : *j);
  return out;
}

}  // namespace

Scalar::Scalar(const Rational& value) {
  if (!value.is_zero()) terms_.push_back({Monomial(), value});
}

Scalar::Scalar(const Variable& v) { terms_.push_back({Monomial(v), Rational(1)}); }

Scalar::Scalar(const Rational& coefficient, Monomial monomial) {
  if (!coefficient.is_zero()) terms_.push_back({std::move(monomial), coefficient});
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Scalar out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().monomial == t.monomial) {
      out.terms_.back().coefficient += t.coefficient;
    } else {
      if (!out.terms_.empty() && out.terms_.back().coefficient.is_zero()) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coefficient.is_zero()) out.terms_.pop_back();
  return out;
}

std::optional<Rational> Scalar::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.front().monomial.is_one()) return terms_.front().coefficient;
  return std::nullopt;
}

unsigned Scalar::total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

bool Scalar::has_jets() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.monomial.has_jets(); });
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) { return *this = *this * other; }

Scalar& Scalar::operator*=(const Rational& factor) {
  if (factor.is_zero()) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coefficient *= factor;
  }
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out = a;
  return out += b;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar out = a;
  return out -= b;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Scalar();
  const Scalar& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Scalar& large = a.terms_.size() <= b.terms_.size() ? b : a;
  if (small.terms_.size() == 1) {
    // Multiplying by a single term preserves the monomial order.
    const Term& s = small.terms_.front();
    Scalar out;
    out.terms_.reserve(large.terms_.size());
    for (const auto& t : large.terms_) out.terms_.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
    return out;
  }
  std::vector<Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : small.terms_)
    for (const auto& t : large.terms_) products.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
  return Scalar::from_terms(std::move(products));
}

Scalar Scalar::pow(unsigned exponent) const {
  Scalar result(1);
  Scalar base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coefficient.sign() < 0;
    const Rational magnitude = negative ? -t.coefficient : t.coefficient;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += magnitude.to_string();
    } else if (magnitude.is_one()) {
      out += t.monomial.to_string();
    } else {
      out += magnitude.to_string() + "*" + t.monomial.to_string();
    }
  }
  return out;
}

// ---------------------------------------------------------------- calculus

Scalar derivative(const Scalar& s, Coordinate direction) {
  std::vector<Term> out;
  for (const auto& t : s.terms()) {
    for (const auto& f : t.monomial.factors()) {
      const Variable& v = f.variable;
      if (v.is_jet()) {
        if (!v.jet_depends_on(direction)) continue;
        Monomial m = t.monomial.without_one(v) * Monomial(v.differentiated(direction));
        out.push_back({std::move(m), t.coefficient * Rational(static_cast<long>(f.exponent))});
      } else if (v.direction() == direction) {
        out.push_back({t.monomial.without_one(v), t.coefficient * Rational(static_cast<long>(f.exponent))});
      }
    }
  }
  return Scalar::from_terms(std::move(out));
}

Scalar total_derivative(const Scalar& s, int a) {
  if (a < 1) throw ShapeError("coordinate index out of range: " + std::to_string(a));
  return derivative(s, Coordinate::base(a));
}

Scalar fiber_derivative(const Scalar& s, int i) {
  if (i < 1) throw ShapeError("fiber index out of range: " + std::to_string(i));
  return derivative(s, Coordinate::fiber(i));
}

Scalar substitute(const Scalar& s, const Substitution& bindings) {
  for (const auto& [v, value] : bindings.variables)
    if (v.is_jet())
      throw Error("partially bound jet family '" + v.tag() +
                  "': bind the function through a realization instead of an individual jet");

  std::map<Variable, Scalar> resolved;
  auto value_of = [&](const Variable& v) -> const Scalar* {
    if (auto it = resolved.find(v); it != resolved.end()) return &it->second;
    if (v.is_jet()) {
      auto fam = bindings.jet_families.find(v.tag());
      if (fam == bindings.jet_families.end()) return nullptr;
      Scalar d = fam->second;
      for (const auto& c : v.partials()) d = derivative(d, c);
      return &resolved.emplace(v, std::move(d)).first->second;
    }
    auto it = bindings.variables.find(v);
    return it == bindings.variables.end() ? nullptr : &it->second;
  };

  Scalar out;
  for (const auto& t : s.terms()) {
    Scalar product(t.coefficient);
    Monomial kept;
    for (const auto& f : t.monomial.factors()) {
      if (const Scalar* value = value_of(f.variable)) {
        product *= value->pow(f.exponent);
      } else {
        kept = kept * Monomial(f.variable, f.exponent);
      }
    }
    out += product * Scalar(Rational(1), kept);
  }
  return out;
}

std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Term& lead = b.leading_term();
  Scalar remainder = a;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& top = remainder.leading_term();
    auto m = top.monomial.divided_by(lead.monomial);
    if (!m) return std::nullopt;
    Scalar step(top.coefficient / lead.coefficient, std::move(*m));
    quotient.push_back(step.terms().front());
    remainder -= step * b;
  }
  return Scalar::from_terms(std::move(quotient));
}

}  // namespace flp
