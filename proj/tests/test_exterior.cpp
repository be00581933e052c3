#include <doctest.h>

#include "flp/exterior.hpp"
#include "flp/parse.hpp"
#include "generators.hpp"

using namespace flp;
using flp::testing::Generator;

namespace {

Scalar x(int a) { return Scalar(Variable::coordinate(a)); }
Scalar y(int i) { return Scalar(Variable::fiber(i)); }

const Space kTotal33 = Space::total(3, 3);

// Total-space slots for n = 3, m = 3: y1 y2 y3 x1 x2 x3.
int ys(int i) { return i - 1; }
int xs(int a) { return 3 + a - 1; }

DifferentialForm volume(const Space& space) {
  std::vector<int> all;
  for (int s = 0; s < space.dim(); ++s) all.push_back(s);
  return DifferentialForm::blade(space, all);
}

}  // namespace

TEST_SUITE("exterior") {
  TEST_CASE("wedge of frame elements") {
    const Frame f{3};
    const auto e1 = MultiSection::blade(f, {0});
    const auto e2 = MultiSection::blade(f, {1});
    CHECK(wedge(e1, e2).coefficient({0, 1}) == Scalar(1));
    CHECK(wedge(e2, e1).coefficient({0, 1}) == Scalar(-1));
    CHECK(wedge(e1, e1).is_zero());
    CHECK_THROWS_AS(wedge(e1, MultiSection::blade(Frame{2}, {0})), ShapeError);
  }

  TEST_CASE("wedge of sections matches the determinant of their coefficients") {
    const int r = 3;
    Section a(r);
    a[0] = x(1);
    a[2] = Scalar(1);
    const std::vector<Section> args{a, Section::basis(r, 1), Section::basis(r, 2)};
    const MultiSection w = wedge_sections(args, r);
    // Oracle: determinant of the matrix whose columns are the three sections.
    std::vector<std::vector<Scalar>> m(3, std::vector<Scalar>(3));
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col) m[row][col] = args[col][row];
    CHECK(w.coefficient({0, 1, 2}) == determinant(m));
    CHECK(w.coefficient({0, 1, 2}) == x(1));

    Generator gen(3);
    for (int t = 0; t < 200; ++t) {
      std::vector<Section> s;
      for (int k = 0; k < r; ++k) s.push_back(gen.section(r, 2, 1, 2));
      std::vector<std::vector<Scalar>> mat(3, std::vector<Scalar>(3));
      for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) mat[row][col] = s[col][row];
      CHECK(wedge_sections(s, r).coefficient({0, 1, 2}) == determinant(mat));
    }
  }

  TEST_CASE("wedge is graded-commutative and associative") {
    Generator gen(5);
    const Space space = Space::total(2, 3);
    for (int t = 0; t < 200; ++t) {
      const int p = gen.integer(0, 2);
      const int q = gen.integer(0, 2);
      const auto a = gen.form(space, p, 1, 3);
      const auto b = gen.form(space, q, 1, 3);
      const auto c = gen.form(space, 1, 1, 2);
      const Scalar sign((p * q) % 2 == 0 ? 1 : -1);
      CHECK(wedge(a, b) == sign * wedge(b, a));
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
  }

  TEST_CASE("interior product against the volume form") {
    const auto omega = volume(kTotal33);
    const auto k1 = MultiVectorField::blade(kTotal33, {ys(1), ys(2), ys(3)});
    CHECK(interior_product(k1, omega) == DifferentialForm::blade(kTotal33, {xs(1), xs(2), xs(3)}));
    const auto k2 = MultiVectorField::blade(kTotal33, {ys(1), ys(3), xs(1)});
    CHECK(interior_product(k2, omega) == DifferentialForm::blade(kTotal33, {ys(2), xs(2), xs(3)}));

    const Space base = Space::base(2);
    const auto d1 = MultiVectorField::blade(base, {0});
    CHECK(interior_product(d1, DifferentialForm::blade(base, {0})) == DifferentialForm::scalar(base, Scalar(1)));
    CHECK(interior_product(d1, DifferentialForm::blade(base, {1})).is_zero());
    CHECK_THROWS_AS(interior_product(MultiVectorField::blade(base, {0, 1}), DifferentialForm::blade(base, {0})),
                    ShapeError);
  }

  TEST_CASE("interior product is tensorial and nests front to back") {
    Generator gen(9);
    const Space space = Space::total(2, 2);
    const auto vars = Generator::total_variables(2, 2);
    for (int t = 0; t < 200; ++t) {
      const int p = gen.integer(2, 4);
      const auto alpha = gen.form(space, p, 1, 4);
      const auto k = gen.multivector(space, gen.integer(0, 2), 1, 3);
      const Scalar s = gen.scalar(vars, 2, 3);
      CHECK(interior_product(s * k, alpha) == s * interior_product(k, alpha));

      const auto v = gen.vector_field(space, 1, 2).as_multivector();
      const auto w = gen.vector_field(space, 1, 2).as_multivector();
      CHECK(interior_product(wedge(v, w), alpha) == interior_product(w, interior_product(v, alpha)));
    }
  }

  TEST_CASE("exterior derivative") {
    const Space base = Space::base(2);
    CHECK(exterior_derivative(DifferentialForm::blade(base, {1}, x(1))) == DifferentialForm::blade(base, {0, 1}));
    // d(Σ c^k y_k dx1∧dx2∧dx3) with constant c.
    const std::vector<Rational> c{2, 0, Rational(-1, 3)};
    DifferentialForm alpha(kTotal33, 3);
    DifferentialForm expected(kTotal33, 4);
    for (int k = 1; k <= 3; ++k) {
      alpha.add({xs(1), xs(2), xs(3)}, Scalar(c[k - 1]) * y(k));
      expected.add({ys(k), xs(1), xs(2), xs(3)}, Scalar(c[k - 1]));
    }
    CHECK(exterior_derivative(alpha) == expected);
    DifferentialForm jetty(base, 0);
    jetty.add({}, Scalar(Variable::jet("u")));
    CHECK_THROWS_AS(exterior_derivative(jetty), ShapeError);
  }

  TEST_CASE("d squares to zero and is a graded derivation") {
    Generator gen(21);
    const Space space = Space::total(2, 2);
    const auto vars = Generator::total_variables(2, 2);
    for (int t = 0; t < 200; ++t) {
      const Scalar s = gen.scalar(vars, 3, 4);
      CHECK(exterior_derivative(differential(space, s)).is_zero());
      const int p = gen.integer(0, 2);
      const auto a = gen.form(space, p, 2, 3);
      CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
      const auto b = gen.form(space, 1, 2, 2);
      const Scalar sign(p % 2 == 0 ? 1 : -1);
      CHECK(exterior_derivative(wedge(a, b)) ==
            wedge(exterior_derivative(a), b) + sign * wedge(a, exterior_derivative(b)));
    }
  }

  TEST_CASE("Lie bracket of vector fields") {
    const Space base = Space::base(2);
    const auto d1 = VectorField::coordinate_field(base, 0);
    const auto d2 = VectorField::coordinate_field(base, 1);
    CHECK(lie_bracket_vf(d1, d2).is_zero());
    // [x1 ∂1, ∂1] = x1·∂1(1)∂1 − ∂1(x1)∂1 = −∂1.
    CHECK(lie_bracket_vf(x(1) * d1, d1) == Scalar(-1) * d1);

    const Scalar f(Variable::jet("f"));
    const Scalar g(Variable::jet("g"));
    const Scalar f1(Variable::jet("f", {Coordinate::base(1)}));
    const Scalar g1(Variable::jet("g", {Coordinate::base(1)}));
    CHECK(lie_bracket_vf(f * d1, g * d1) == (f * g1 - g * f1) * d1);
  }

  TEST_CASE("Lie bracket is antisymmetric and satisfies Jacobi") {
    Generator gen(31);
    const Space space = Space::base(3);
    for (int t = 0; t < 200; ++t) {
      const auto a = gen.vector_field(space, 2, 2);
      const auto b = gen.vector_field(space, 2, 2);
      const auto c = gen.vector_field(space, 2, 2);
      CHECK((lie_bracket_vf(a, b) + lie_bracket_vf(b, a)).is_zero());
      const auto jac = lie_bracket_vf(a, lie_bracket_vf(b, c)) + lie_bracket_vf(b, lie_bracket_vf(c, a)) +
                       lie_bracket_vf(c, lie_bracket_vf(a, b));
      CHECK(jac.is_zero());
    }
  }

  TEST_CASE("pairing multivectors with differentials") {
    const auto k = MultiVectorField::blade(kTotal33, {ys(1), ys(2), ys(3)});
    const std::vector<Scalar> fs{y(1), y(2), y(3)};
    CHECK(multivector_pair(k, fs) == Scalar(1));

    const auto k2 = MultiVectorField::blade(kTotal33, {ys(1), ys(2), xs(1)});
    const Scalar f = parse_scalar("x1^2*x2 + y3", NameTable::total_space(3, 3));
    const std::vector<Scalar> gs{y(1), y(2), f};
    CHECK(multivector_pair(k2, gs) == total_derivative(f, 1));

    const Scalar h = parse_scalar("x1*y2 + x3", NameTable::total_space(3, 3));
    const std::vector<Scalar> rep{h, h, f};
    CHECK(multivector_pair(k2 + k, rep).is_zero());
    CHECK_THROWS_AS(multivector_pair(k, std::vector<Scalar>{h}), ShapeError);
  }

  TEST_CASE("evaluation of forms follows the determinant convention") {
    const Space base = Space::base(2);
    const auto d1 = VectorField::coordinate_field(base, 0);
    const auto d2 = VectorField::coordinate_field(base, 1);
    const auto form = DifferentialForm::blade(base, {0, 1});
    CHECK(evaluate(form, std::vector<VectorField>{d1, d2}) == Scalar(1));
    CHECK(evaluate(form, std::vector<VectorField>{d2, d1}) == Scalar(-1));
    CHECK(evaluate(form, std::vector<VectorField>{d1, d1}).is_zero());
  }

  TEST_CASE("printing") {
    Section s(3);
    s[0] = x(1);
    s[1] = x(1) + Scalar(1);
    s[2] = Scalar(1);
    CHECK(s.to_string() == "x1*e1 + (x1 + 1)*e2 + e3");
    CHECK(Section(2).to_string() == "0");
    const auto v = VectorField::coordinate_field(Space::base(2), 1, x(1)) + VectorField::coordinate_field(Space::base(2), 0);
    CHECK(v.to_string() == "d/dx1 + x1*d/dx2");
    const auto w = DifferentialForm::blade(kTotal33, {ys(3), xs(2), xs(3)}, Scalar(-1));
    CHECK(w.to_string() == "-dy3^dx2^dx3");
  }
}
