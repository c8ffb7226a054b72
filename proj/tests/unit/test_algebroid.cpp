#include <random>

#include <gtest/gtest.h>

#include "manin/algebroid.hpp"

using namespace manin;

namespace {

using A = Algebroid<Side::Primal>;

Polynomial C(const Coordinates& c, long v) { return Polynomial(c, v); }

A a_plus_b(long a, long b) {
  Coordinates none;
  A g(2, none);
  Multivector v(2, none);
  v.add_term(singleton(0), C(none, a));
  v.add_term(singleton(1), C(none, b));
  g.set_bracket(0, 1, v);
  return g;
}

// e'_1 = d1, e'_2 = d2 + x1^2 d1 + x2 d3, e'_3 = d3 + x1*x2 d2 on R^3
A twisted_tangent() {
  Coordinates c = Coordinates::standard(3);
  Matrix m = identity_matrix(3, c);
  m[1][0] = parse_polynomial("x1^2", c);
  m[1][2] = parse_polynomial("x2", c);
  m[2][1] = parse_polynomial("x1*x2", c);
  // make it triangular: reorder as lower unitriangular
  m[1][2] = Polynomial(c);
  m[2][0] = parse_polynomial("x2 - x3", c);
  return change_frame(A::tangent(c), m);
}

// rank 3 Lie algebra bundle over R^2 glued to nothing: sl2 with
// polynomial frame change (zero anchor)
A sl2_bundle() {
  Coordinates c = Coordinates::standard(2);
  A g(3, c);
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h with (e1,e2,e3) = (h,e,f)
  g.set_bracket(0, 1, Multivector::term(3, singleton(1), C(c, 2)));
  g.set_bracket(0, 2, Multivector::term(3, singleton(2), C(c, -2)));
  g.set_bracket(1, 2, Multivector::term(3, singleton(0), C(c, 1)));
  Matrix m = identity_matrix(3, c);
  m[0][1] = parse_polynomial("x1", c);
  m[0][2] = parse_polynomial("x2^2 - 1", c);
  m[1][2] = parse_polynomial("3*x1*x2", c);
  return change_frame(g, m);
}

template <Side S>
Exterior<S> random_element(std::mt19937_64& rng, std::size_t n, const Coordinates& c, int degree,
                           unsigned max_deg = 2) {
  Exterior<S> out(n, c);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (IndexSet s = 0; s <= full_set(n); ++s) {
    if (degree >= 0 && degree_of(s) != degree) continue;
    if (rng() % 3 == 0) continue;
    Polynomial p(c);
    for (const auto& m : monomials_up_to(c, max_deg))
      if (rng() % 2) p += m * Rational(coef(rng));
    out.add_term(s, p);
  }
  return out;
}

Rational sign(int k) { return Rational(k % 2 ? -1 : 1); }

}  // namespace

TEST(Validate, AbelianAndAPlusB) {
  EXPECT_TRUE(A(2, Coordinates()).validate().ok());
  for (long a : {-2, 0, 3})
    for (long b : {-1, 0, 5}) EXPECT_TRUE(a_plus_b(a, b).validate().ok());
}

TEST(Validate, JacobiFailureWitness) {
  Coordinates none;
  A g(3, none);
  g.set_bracket(0, 1, Multivector::generator(3, none, 0));
  g.set_bracket(0, 2, Multivector::generator(3, none, 0));
  g.set_bracket(1, 2, Multivector::generator(3, none, 1));
  auto r = g.validate();
  EXPECT_FALSE(r.jacobi_ok);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0][1].second, "1,2,3");
  // d^2 fails on some basis covector
  bool found = false;
  for (std::size_t k = 0; k < 3; ++k)
    found |= !g.differential(g.differential(g.cogenerator(k))).is_zero();
  EXPECT_TRUE(found);
}

TEST(Validate, AnchorMorphismFailure) {
  Coordinates c = Coordinates::standard(1);
  A g(2, c);
  g.set_anchor(0, {C(c, 1)});
  g.set_anchor(1, {parse_polynomial("x1", c)});
  auto r = g.validate();  // [d, x d] = d but [e1, e2] = 0
  EXPECT_FALSE(r.anchor_morphism_ok);
}

TEST(Validate, FrameChangesStayValid) {
  EXPECT_TRUE(twisted_tangent().validate().ok());
  EXPECT_TRUE(sl2_bundle().validate().ok());
}

TEST(Differential, Examples) {
  Coordinates c = Coordinates::standard(1);
  A t = A::tangent(c);
  EXPECT_EQ(t.differential(Polynomial::variable(c, 0)), Form::generator(1, c, 0));
  A g = a_plus_b(3, 5);
  EXPECT_EQ(g.differential(g.cogenerator(0)), Form::term(2, 3, C(Coordinates(), -3)));
  A ab(3, c);
  for (IndexSet s = 0; s < 8; ++s)
    EXPECT_TRUE(ab.differential(Form::term(3, s, parse_polynomial("x1^2", c))).is_zero());
}

TEST(Schouten, Examples) {
  A g = a_plus_b(3, 5);
  Coordinates none;
  Multivector expected(2, none);
  expected.add_term(1, C(none, 3));
  expected.add_term(2, C(none, 5));
  EXPECT_EQ(g.schouten(g.generator(0), g.generator(1)), expected);
  Coordinates c = Coordinates::standard(2);
  A zero(2, c);
  Multivector f = Multivector::scalar(2, parse_polynomial("x1*x2", c));
  EXPECT_TRUE(zero.schouten(zero.generator(0) * parse_polynomial("x2", c), f).is_zero());
  A t = A::tangent(c);
  Multivector pi = Multivector::term(2, 3, parse_polynomial("x1", c));
  EXPECT_TRUE(t.schouten(pi, pi).is_zero());
  // a non-Poisson bivector in 3D: x2 d2^d3 + d1^d2
  A t3 = A::tangent(Coordinates::standard(3));
  const Coordinates& c3 = t3.coordinates();
  Multivector q = Multivector::term(3, 6, parse_polynomial("x2", c3)) +
                  Multivector::term(3, 3, C(c3, 1));
  EXPECT_FALSE(t3.schouten(q, q).is_zero());
}

TEST(LieDerivative, Examples) {
  A g = a_plus_b(3, 5);
  EXPECT_EQ(g.lie_derivative(g.generator(0), g.cogenerator(1)),
            g.cogenerator(1) * Rational(-5));
  Coordinates c = Coordinates::standard(1);
  A t = A::tangent(c);
  Form xdx = Form::term(1, 1, Polynomial::variable(c, 0));
  EXPECT_EQ(t.lie_derivative(t.generator(0), xdx), Form::generator(1, c, 0));
}

TEST(Boundary, Examples) {
  A g = a_plus_b(3, 5);
  Coordinates none;
  EXPECT_TRUE(g.boundary(Multivector::scalar(2, C(none, 7))).is_zero());
  EXPECT_TRUE(g.boundary(Multivector::top(2, none)).is_zero());
  EXPECT_EQ(g.boundary(g.generator(0)), Multivector::scalar(2, C(none, 5)));
  EXPECT_EQ(g.boundary(g.generator(1)), Multivector::scalar(2, C(none, -3)));
  // tangent algebroid: boundary of a vector field is minus its divergence
  Coordinates c = Coordinates::standard(2);
  A t = A::tangent(c);
  Multivector X = Multivector::term(2, 1, parse_polynomial("x1^2*x2", c)) +
                  Multivector::term(2, 2, parse_polynomial("x2^3", c));
  EXPECT_EQ(t.boundary(X), Multivector::scalar(2, parse_polynomial("-2*x1*x2 - 3*x2^2", c)));
}

TEST(Modular, TraceOfAdjoint) {
  A g = a_plus_b(3, 5);
  Form xi = g.modular_cocycle();
  // <xi, e_i> = trace(ad e_i)
  EXPECT_EQ(xi.coefficient(1), C(Coordinates(), 5));
  EXPECT_EQ(xi.coefficient(2), C(Coordinates(), -3));
  EXPECT_TRUE(g.differential(xi).is_zero());
}

class AlgebroidProperty : public ::testing::TestWithParam<int> {};

TEST_P(AlgebroidProperty, StructuralIdentities) {
  const A g = GetParam() == 0 ? twisted_tangent() : GetParam() == 1 ? sl2_bundle() : a_plus_b(2, -3);
  const std::size_t n = g.rank();
  const Coordinates& c = g.coordinates();
  std::mt19937_64 rng(100 + GetParam());
  const Multivector top = Multivector::top(n, c);
  const Form omega = Form::top(n, c);
  for (int trial = 0; trial < 70; ++trial) {
    const int k = static_cast<int>(rng() % (n + 1));
    const int l = static_cast<int>(rng() % (n + 1));
    Multivector u = random_element<Side::Primal>(rng, n, c, k);
    Multivector v = random_element<Side::Primal>(rng, n, c, l);
    Form theta = random_element<Side::Dual>(rng, n, c, k);
    EXPECT_TRUE(g.differential(g.differential(theta)).is_zero());
    EXPECT_TRUE(g.boundary(g.boundary(u)).is_zero());
    // generator identity
    Multivector rhs = g.boundary(wedge(u, v)) - wedge(g.boundary(u), v) -
                      wedge(u, g.boundary(v)) * sign(k);
    EXPECT_EQ(g.schouten(u, v), rhs * sign(k));
    // graded skew symmetry
    EXPECT_EQ(g.schouten(u, v), g.schouten(v, u) * -sign((k - 1) * (l - 1)));
    // boundary is a derivation of the bracket
    EXPECT_EQ(g.boundary(g.schouten(u, v)),
              g.schouten(g.boundary(u), v) + g.schouten(u, g.boundary(v)) * sign(k + 1));
    // degree-1 consequences
    Multivector x = random_element<Side::Primal>(rng, n, c, 1);
    Form t1 = random_element<Side::Dual>(rng, n, c, 1);
    const Polynomial dx = g.boundary(x).coefficient(0);
    EXPECT_EQ(g.lie_derivative(x, omega), omega * -dx);
    EXPECT_EQ(g.lie_derivative(x, top), top * dx);
    EXPECT_EQ(g.boundary(contract<Side::Primal>(t1, u)) + contract<Side::Primal>(t1, g.boundary(u)),
              contract<Side::Primal>(g.differential(t1), u));
    // Cartan formula is dual to the bracket derivation on degree 1
    Multivector y = random_element<Side::Primal>(rng, n, c, 1);
    EXPECT_EQ(g.act(x, pairing<Side::Primal>(t1, y)),
              pairing<Side::Primal>(g.lie_derivative(x, t1), y) +
                  pairing<Side::Primal>(t1, g.lie_derivative(x, y)));
    // graded Jacobi on degree <= 2
    Multivector w = random_element<Side::Primal>(rng, n, c, 1);
    Multivector vv = random_element<Side::Primal>(rng, n, c, 2);
    EXPECT_EQ(g.schouten(x, g.schouten(vv, w)),
              g.schouten(g.schouten(x, vv), w) + g.schouten(vv, g.schouten(x, w)));
  }
}

INSTANTIATE_TEST_SUITE_P(Samples, AlgebroidProperty, ::testing::Values(0, 1, 2));
