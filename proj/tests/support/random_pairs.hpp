#pragma once

// Seeded generators of random exact data: polynomials, sections, Lie
// algebroids and pairs, all with rational coefficients.  Ranks stay <= 4,
// base dimensions <= 3 and structure coefficients have degree <= 3.

#include <random>
#include <string>

#include "manin/constructions.hpp"

namespace manin::testing {

inline constexpr unsigned kMaxStructureDegree = 3;

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return integer(1, 100) <= percent; }

  /// p/q with |p| <= 3 and q in {1, 2, 3}; never zero when nonzero is set.
  Rational rational(bool nonzero = false);
  /// Up to `terms` random monomials of degree <= max_degree.
  Polynomial polynomial(const Coordinates& coords, unsigned max_degree, int terms = 3);

  template <Side S>
  Exterior<S> section(std::size_t rank, const Coordinates& coords, int degree,
                      unsigned max_coord_degree);
  /// A section of random degree 0..rank.
  template <Side S>
  Exterior<S> any_section(std::size_t rank, const Coordinates& coords, unsigned max_coord_degree);

  /// Unit upper or lower triangular with entries of degree <= max_degree.
  Matrix unitriangular(std::size_t n, const Coordinates& coords, unsigned max_degree);

  /// A Lie algebroid drawn from several families (bundles of Lie algebras,
  /// tangent bundles, Poisson cotangent algebroids, rank-one actions
  /// extended by a module), written in a random frame.
  template <Side S>
  Algebroid<S> algebroid(std::size_t rank, const Coordinates& coords);

  /// Two independent random structures: almost never a bialgebroid.
  Pair any_pair();
  /// A Lie bialgebroid; `family` receives a short label of the construction.
  Pair bialgebroid(std::string* family = nullptr);

  /// A Poisson bivector on R^m, m in {2, 3}.
  PoissonData poisson(std::size_t m);

  std::size_t rank() { return static_cast<std::size_t>(integer(1, 4)); }
  Coordinates base() { return Coordinates::standard(static_cast<std::size_t>(integer(0, 3))); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

SectionE<Side::Primal> random_double_section(Random& r, const Pair& p, unsigned max_coord_degree);

}  // namespace manin::testing
