#include <random>

#include <gtest/gtest.h>

#include "manin/exterior.hpp"

using namespace manin;

namespace {

const Coordinates cx({"x"});

Multivector e(std::size_t n, std::initializer_list<std::size_t> idx, const Coordinates& c = cx) {
  IndexSet s = 0;
  for (auto i : idx) s |= singleton(i - 1);
  Multivector out = Multivector::basis(n, c, s);
  return out;
}

Form eps(std::size_t n, std::initializer_list<std::size_t> idx, const Coordinates& c = cx) {
  IndexSet s = 0;
  for (auto i : idx) s |= singleton(i - 1);
  return Form::basis(n, c, s);
}

// determinant-convention insertion of e_I into slot order, used as an
// independent oracle: evaluates a form on a list of basis vectors.
Polynomial evaluate(const Form& f, const std::vector<std::size_t>& args) {
  // f(e_{a1}, ..., e_{ak}) = sum over sorted J of f_J * sign(permutation sorting args to J)
  IndexSet set = 0;
  for (auto a : args) {
    if (set & singleton(a)) return Polynomial(f.coordinates());
    set |= singleton(a);
  }
  int inv = 0;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j)
      if (args[i] > args[j]) ++inv;
  Polynomial c = f.coefficient(set);
  return inv % 2 ? -c : c;
}

template <Side S>
Exterior<S> random_element(std::mt19937_64& rng, std::size_t n, const Coordinates& c, int degree) {
  Exterior<S> out(n, c);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (IndexSet s = 0; s <= full_set(n); ++s) {
    if (degree >= 0 && degree_of(s) != degree) continue;
    if (rng() % 2) continue;
    Polynomial p(c);
    for (const auto& m : monomials_up_to(c, 2)) p += m * Rational(coef(rng));
    out.add_term(s, p);
  }
  return out;
}

const Coordinates cxy({"x", "y"});

}  // namespace

TEST(Wedge, Alternation) {
  EXPECT_TRUE(wedge(e(2, {1}), e(2, {1})).is_zero());
  EXPECT_EQ(wedge(e(2, {2}), e(2, {1})), -e(2, {1, 2}));
  Polynomial x = Polynomial::variable(cx, 0);
  EXPECT_EQ(wedge(e(2, {1}) * x + e(2, {2}), e(2, {2})), e(2, {1, 2}) * x);
  EXPECT_THROW(wedge(e(2, {1}), e(3, {1})), std::invalid_argument);
}

TEST(Contraction, FirstSlot) {
  EXPECT_EQ(contract<Side::Primal>(eps(2, {1}), e(2, {1, 2})), e(2, {2}));
  EXPECT_EQ(contract<Side::Primal>(eps(2, {2}), e(2, {1, 2})), -e(2, {1}));
  EXPECT_EQ(contract<Side::Primal>(eps(2, {1, 2}), e(2, {1, 2})), e(2, {}));
  EXPECT_EQ(contract<Side::Dual>(e(2, {1}), eps(2, {1, 2})), eps(2, {2}));
  EXPECT_TRUE(contract<Side::Dual>(e(2, {1}), eps(2, {2})).is_zero());
  Polynomial x = Polynomial::variable(cx, 0);
  EXPECT_EQ(contract<Side::Dual>(e(2, {2}) * x, eps(2, {1, 2})), -eps(2, {1}) * x);
}

TEST(Contraction, AgreesWithEvaluationOracle) {
  // (i_X a)(X1..Xk) = a(X, X1..Xk) on all basis data up to rank 4
  for (std::size_t n = 1; n <= 4; ++n) {
    for (IndexSet s = 0; s <= full_set(n); ++s) {
      Form a = Form::basis(n, cx, s);
      for (std::size_t i = 0; i < n; ++i) {
        Form c = contract<Side::Dual>(e(n, {i + 1}), a);
        for (IndexSet t = 0; t <= full_set(n); ++t) {
          if (degree_of(t) + 1 != degree_of(s)) continue;
          std::vector<std::size_t> args{i};
          for (auto m : members(t)) args.push_back(m);
          EXPECT_EQ(evaluate(c, members(t)), evaluate(a, args));
        }
      }
    }
  }
}

TEST(Pairing, DeterminantConvention) {
  EXPECT_EQ(pairing<Side::Primal>(eps(2, {1, 2}), e(2, {1, 2})), Polynomial(cx, 1));
  EXPECT_TRUE(pairing<Side::Primal>(eps(2, {1, 2}), wedge(e(2, {1}), e(2, {1}))).is_zero());
  EXPECT_EQ(pairing<Side::Primal>(eps(2, {1, 2}), wedge(e(2, {1}) + e(2, {2}), e(2, {2}))),
            Polynomial(cx, 1));
}

TEST(Sharp, Examples) {
  EXPECT_EQ(sharp(e(2, {})), eps(2, {1, 2}));
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(sharp(Multivector::top(n, cx)), Form::basis(n, cx, 0));
    EXPECT_EQ(sharp(Form::top(n, cx)), Multivector::basis(n, cx, 0));
  }
  EXPECT_EQ(sharp(e(2, {1})), eps(2, {2}));
}

TEST(Sharp, CompositionSigns) {
  // V# o Omega# = (-1)^{k(n-1)} on degree k and Omega# o V# likewise
  for (std::size_t n = 1; n <= 4; ++n) {
    for (IndexSet s = 0; s <= full_set(n); ++s) {
      const int k = degree_of(s);
      const int sign = (k * (static_cast<int>(n) - 1)) % 2 ? -1 : 1;
      Multivector X = Multivector::basis(n, cx, s);
      Form phi = Form::basis(n, cx, s);
      EXPECT_EQ(sharp(sharp(X)), X * Rational(sign)) << n << " " << s;
      EXPECT_EQ(sharp(sharp(phi)), phi * Rational(sign)) << n << " " << s;
      EXPECT_EQ(sharp(sharp_inverse(phi)), phi);
      EXPECT_EQ(sharp_inverse(sharp(X)), X);
    }
  }
}

TEST(ExteriorProperty, GradedCommutativityAndDerivation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const int p = static_cast<int>(rng() % (n + 1)), q = static_cast<int>(rng() % (n + 1));
    Multivector a = random_element<Side::Primal>(rng, n, cxy, p);
    Multivector b = random_element<Side::Primal>(rng, n, cxy, q);
    Form t = random_element<Side::Dual>(rng, n, cxy, 1);
    Multivector ab = wedge(a, b);
    EXPECT_EQ(ab, wedge(b, a) * Rational((p * q) % 2 ? -1 : 1));
    // i_t is a degree -1 derivation
    EXPECT_EQ(contract<Side::Primal>(t, ab),
              wedge(contract<Side::Primal>(t, a), b) +
                  wedge(a, contract<Side::Primal>(t, b)) * Rational(p % 2 ? -1 : 1));
    EXPECT_TRUE(contract<Side::Primal>(t, contract<Side::Primal>(t, a)).is_zero());
    // composition rule for higher-degree arguments
    Form t2 = random_element<Side::Dual>(rng, n, cxy, 1);
    EXPECT_EQ(contract<Side::Primal>(wedge(t, t2), a),
              contract<Side::Primal>(t2, contract<Side::Primal>(t, a)));
    // pairing of Omega#u against v versus wedge into the top degree
    Multivector u = random_element<Side::Primal>(rng, n, cxy, p);
    Multivector v = random_element<Side::Primal>(rng, n, cxy, static_cast<int>(n) - p);
    EXPECT_EQ(pairing<Side::Primal>(sharp(u), v),
              pairing<Side::Primal>(Form::top(n, cxy), wedge(u, v)));
  }
}
