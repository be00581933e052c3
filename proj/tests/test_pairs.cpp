#include <doctest.h>

#include "flp/error.hpp"
#include "flp/pairs.hpp"
#include "generators.hpp"

using namespace flp;
using flp::testing::Generator;

namespace {

Scalar x(int a) { return Scalar(Variable::coordinate(a)); }

std::vector<std::vector<Scalar>> zeros(int r) { return std::vector<std::vector<Scalar>>(r, std::vector<Scalar>(r)); }
std::vector<std::vector<Scalar>> identity(int r) {
  auto m = zeros(r);
  for (int k = 0; k < r; ++k) m[k][k] = Scalar(1);
  return m;
}
VectorField d(int m, int a) { return VectorField::coordinate_field(Space::base(m), a - 1); }
CoForm co(int r, std::vector<int> one_based, const Scalar& c = Scalar(1)) {
  for (auto& s : one_based) --s;
  return CoForm::blade(Frame{r}, std::move(one_based), c);
}

}  // namespace

TEST_SUITE("pairs") {
  TEST_CASE("operator action on sections") {
    const CDO pure(zeros(3), d(3, 1));
    CHECK(cdo_apply(pure, x(1) * Section::basis(3, 0)) == Section::basis(3, 0));
    const CDO id(identity(3), VectorField(Space::base(3)));
    const Section s = x(2) * Section::basis(3, 1) + Section::basis(3, 2);
    CHECK(cdo_apply(id, s) == s);
    auto m = zeros(2);
    m[0][1] = Scalar(1);  // D(e2) = e1
    const CDO e12(m, d(2, 2));
    // D(x2 e2) = x2 D(e2) + ∂2(x2) e2 = x2 e1 + e2.
    CHECK(cdo_apply(e12, x(2) * Section::basis(2, 1)) == x(2) * Section::basis(2, 0) + Section::basis(2, 1));
    CHECK_THROWS_AS(CDO({{Scalar(1), Scalar(0)}}, d(2, 1)), ShapeError);
    CHECK_THROWS_AS(CDO(identity(2), VectorField(Space::total(1, 2))), ShapeError);
  }

  TEST_CASE("dual action on coforms") {
    const CDO pure(zeros(3), d(3, 1));
    const CoForm xi = co(3, {1, 2}) + co(3, {2, 3}, Scalar(Rational(1, 2)));
    CHECK(cdo_dual_apply(pure, xi).is_zero());
    const CDO id(identity(3), VectorField(Space::base(3)));
    CHECK(cdo_dual_apply(id, xi) == Scalar(-2) * xi);
    CHECK(cdo_dual_apply(pure, co(3, {1, 2}, x(1))) == co(3, {1, 2}));
  }

  TEST_CASE("eigen condition") {
    const CDO pure(zeros(3), d(3, 1));
    CHECK(eigen_check(pure, co(3, {1, 2})) == Scalar(0));
    const CDO id(identity(3), VectorField(Space::base(3)));
    CHECK(eigen_check(id, co(3, {1, 3}, Scalar(5))) == Scalar(-2));
    CHECK_THROWS_AS(eigen_check(pure, co(3, {1, 2}) + co(3, {1, 3}, x(1))), ConstructionError);
    CHECK_THROWS_AS(eigen_check(pure, CoForm(Frame{3}, 2)), ConstructionError);
    // Non-constant ξ = x1 (e1∧e2)* under (0, x1 ∂1): D(ξ) = x1 (e1∧e2)*, g = 1.
    const CDO euler(zeros(3), x(1) * d(3, 1));
    CHECK(eigen_check(euler, co(3, {1, 2}, x(1))) == Scalar(1));
    // (0, ∂1) on x1 (e1∧e2)*: g would be 1/x1.
    CHECK_THROWS_AS(eigen_check(pure, co(3, {1, 2}, x(1))), ConstructionError);
  }

  TEST_CASE("pair structures") {
    const CDO pure(zeros(3), d(3, 1));
    const auto ex = build_pair_structure(pure, co(3, {1, 2}));
    CHECK(ex.eigenvalue == Scalar(0));
    CHECK(ex.connection.bundle().anchor_of({0, 1}) == d(3, 1));
    CHECK(ex.connection.bundle().anchor().size() == 1);
    CHECK(ex.connection.table().empty());

    const CDO id(identity(3), VectorField(Space::base(2)));
    const CoForm xi = co(3, {1, 2}) + co(3, {1, 3}, Scalar(2));
    const auto p = build_pair_structure(id, xi);
    CHECK(p.eigenvalue == Scalar(-2));
    CHECK(p.connection.bundle().anchor_is_zero());
    CHECK(p.connection.at({0, 2}, 1) == Scalar(2) * Section::basis(3, 1));
    CHECK(check_condition1(p.connection).passed());
    CHECK(check_bianchi(p.connection).passed());

    CHECK_THROWS_AS(build_pair_structure(id, CoForm(Frame{3}, 2)), ConstructionError);
  }

  TEST_CASE("operator Leibniz rule and duality adjunction") {
    Generator gen(201);
    const int r = 3;
    for (int t = 0; t < 200; ++t) {
      std::vector<std::vector<Scalar>> m(r, std::vector<Scalar>(r));
      for (auto& row : m)
        for (auto& entry : row) entry = gen.base_scalar(2, 1, 1);
      const CDO op(m, gen.vector_field(Space::base(2), 1, 2));
      const Scalar f = gen.base_scalar(2, 2, 3);
      const Section s = gen.section(r, 2);
      CHECK(cdo_apply(op, f * s) == f * cdo_apply(op, s) + op.symbol()(f) * s);

      const int k = gen.integer(1, 2);
      MultiSection w(Frame{r}, k);
      CoForm xi(Frame{r}, k);
      for (int b = 0; b < 3; ++b) {
        std::vector<int> slots;
        for (int i = 0; i < k; ++i) slots.push_back(gen.integer(0, r - 1));
        w.add(slots, gen.base_scalar(2, 1, 2));
        std::vector<int> other;
        for (int i = 0; i < k; ++i) other.push_back(gen.integer(0, r - 1));
        xi.add(other, gen.base_scalar(2, 1, 2));
      }
      CHECK(op.symbol()(pairing(w, xi)) == pairing(cdo_apply(op, w), xi) + pairing(w, cdo_dual_apply(op, xi)));
    }
  }

  TEST_CASE("eigen-condition pairs give Filippov connections with the closing bracket") {
    Generator gen(203);
    const int r = 3;
    for (int t = 0; t < 30; ++t) {
      std::vector<std::vector<Scalar>> m(r, std::vector<Scalar>(r));
      CoForm xi(Frame{r}, 2);
      if (t % 2 == 0) {
        // Scalar operator s·Id with any constant ξ: g = -2s.
        const Scalar s = gen.base_scalar(2, 1, 2);
        for (int k = 0; k < r; ++k) m[k][k] = s;
        for (int b = 0; b < 2; ++b) xi.add({gen.integer(0, 1), 2}, Scalar(gen.rational()));
        xi.add({0, 1}, Scalar(1));
      } else {
        // ξ = c (e1∧e2)* is an eigenvector when D(e3) has no e1, e2 part.
        for (int i = 0; i < r; ++i)
          for (int k = 0; k < r; ++k)
            if (!(i == 2 && k < 2)) m[k][i] = gen.base_scalar(2, 1, 1);
        xi.add({0, 1}, Scalar(gen.integer(1, 3)));
      }
      const CDO op(m, gen.vector_field(Space::base(2), 1, 2));
      const auto p = build_pair_structure(op, xi);
      CHECK(check_condition1(p.connection).passed());
      CHECK(check_bianchi(p.connection).passed());
      std::vector<Section> xs;
      for (int i = 1; i <= 3; ++i) xs.push_back(generic_section("X" + std::to_string(i), r));
      CHECK(bracket_from_connection(p.connection, xs) == pair_bracket_expansion(op, xi, xs));
    }
  }
}
