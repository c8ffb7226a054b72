#include "random_pairs.hpp"

#include <algorithm>

namespace manin::testing {

Rational Random::rational(bool nonzero) {
  for (;;) {
    const Rational q(integer(-3, 3), integer(1, 3));
    if (!nonzero || q != 0) {
      Rational out(q);
      out.canonicalize();
      return out;
    }
  }
}

Polynomial Random::polynomial(const Coordinates& coords, unsigned max_degree, int terms) {
  const auto monos = monomials_up_to(coords, max_degree);
  Polynomial out(coords);
  const int count = integer(1, terms);
  for (int t = 0; t < count; ++t) {
    out += monos[static_cast<std::size_t>(integer(0, static_cast<int>(monos.size()) - 1))] *
           rational(true);
  }
  return out;
}

template <Side S>
Exterior<S> Random::section(std::size_t rank, const Coordinates& coords, int degree,
                            unsigned max_coord_degree) {
  std::vector<IndexSet> sets;
  for (IndexSet s = 0; s <= full_set(rank); ++s) {
    if (degree_of(s) == degree) sets.push_back(s);
  }
  Exterior<S> out(rank, coords);
  while (out.is_zero()) {
    for (IndexSet s : sets) {
      if (chance(60)) out.add_term(s, polynomial(coords, max_coord_degree, 2));
    }
  }
  return out;
}

template <Side S>
Exterior<S> Random::any_section(std::size_t rank, const Coordinates& coords,
                                unsigned max_coord_degree) {
  return section<S>(rank, coords, integer(0, static_cast<int>(rank)), max_coord_degree);
}

Matrix Random::unitriangular(std::size_t n, const Coordinates& coords, unsigned max_degree) {
  Matrix m = identity_matrix(n, coords);
  const bool upper = chance(50);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((upper ? j > i : j < i) && chance(40)) m[i][j] = polynomial(coords, max_degree, 1);
    }
  }
  return m;
}

namespace {

// ad of a basis element through a matrix: [e_0, e_j] = sum_k m[j][k] e_k for
// j >= 1, with e_0 anchored to `field` and all other brackets zero.
template <Side S>
Algebroid<S> rank_one_action(std::size_t rank, const Coordinates& coords, const VectorField& field,
                             const Matrix& m) {
  Algebroid<S> a(rank, coords);
  if (rank == 0) return a;
  a.set_anchor(0, field);
  for (std::size_t j = 1; j < rank; ++j) {
    Exterior<S> value(rank, coords);
    for (std::size_t k = 1; k < rank; ++k) value.add_term(singleton(k), m[j][k]);
    a.set_bracket(0, j, value);
  }
  return a;
}

// The same data read on the other side.
template <Side T, Side S>
Algebroid<T> reinterpret(const Algebroid<S>& a) {
  Algebroid<T> out(a.rank(), a.coordinates());
  for (std::size_t i = 0; i < a.rank(); ++i) {
    out.set_anchor(i, a.anchor(i));
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      Exterior<T> v(a.rank(), a.coordinates());
      for (const auto& [set, c] : a.bracket(i, j).components()) v.add_term(set, c);
      out.set_bracket(i, j, v);
    }
  }
  return out;
}

template <Side S>
unsigned structure_degree(const Algebroid<S>& a) {
  unsigned out = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (const auto& c : a.anchor(i)) out = std::max(out, c.total_degree());
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      for (const auto& [set, c] : a.bracket(i, j).components()) out = std::max(out, c.total_degree());
    }
  }
  return out;
}

}  // namespace

template <Side S>
Algebroid<S> Random::algebroid(std::size_t rank, const Coordinates& coords) {
  const std::size_t m = coords.size();
  Algebroid<S> a(rank, coords);
  int family = integer(0, 9);
  if ((family == 4 || family == 5) && !(rank == m && m > 0) && rank != 3) family = 1;
  if ((family == 6 || family == 7) && !(rank == m && m >= 2)) family = 2;
  if (family >= 8 && rank < 3) family = 3;
  switch (family) {
    case 0:
      break;
    case 1:
    case 2:
    case 3: {
      // e_0 acts by a vector field and by a matrix of functions on the rest
      VectorField field = zero_field(coords);
      for (auto& c : field) c = polynomial(coords, 2, 2);
      Matrix mat = identity_matrix(rank, coords);
      for (auto& row : mat) {
        for (auto& c : row) c = polynomial(coords, 1, 1);
      }
      a = rank_one_action<S>(rank, coords, field, mat);
      break;
    }
    case 4:
    case 5:
      if (rank == m && m > 0) {
        a = Algebroid<S>::tangent(coords);
      } else if (rank == 3) {
        // sl2 or so3 with a random scale, as a bundle of Lie algebras
        const bool compact = chance(50);
        const Polynomial t(coords, rational(true));
        auto g = [&](std::size_t k, const Polynomial& c) {
          Exterior<S> out(rank, coords);
          out.add_term(singleton(k), c);
          return out;
        };
        a.set_bracket(0, 1, g(2, t));
        a.set_bracket(1, 2, g(0, t));
        a.set_bracket(0, 2, g(1, compact ? -t : t));
      }
      break;
    case 6:
    case 7:
      a = reinterpret<S>(poisson_double(poisson(m)).Astar());
      break;
    default:
      if (rank >= 3) {
        // Heisenberg with a polynomial centre coefficient
        Exterior<S> z(rank, coords);
        Polynomial c = polynomial(coords, 1, 2);
        if (c.is_zero()) c = Polynomial(coords, 1);
        z.add_term(singleton(2), c);
        a.set_bracket(0, 1, z);
      }
      break;
  }
  if (chance(70)) {
    auto framed = change_frame(a, unitriangular(rank, coords, m > 0 ? 1 : 0));
    if (structure_degree(framed) <= kMaxStructureDegree) a = std::move(framed);
  }
  return a;
}

PoissonData Random::poisson(std::size_t m) {
  const Coordinates coords = Coordinates::standard(m);
  Matrix pi(m, std::vector<Polynomial>(m, Polynomial(coords)));
  auto set = [&](std::size_t i, std::size_t j, const Polynomial& v) {
    pi[i][j] = v;
    pi[j][i] = -v;
  };
  if (m == 2) {
    set(0, 1, polynomial(coords, 3, 3));
    return {coords, pi};
  }
  // In dimension three g * pi_0 is Poisson whenever pi_0 is.
  const Polynomial g = polynomial(coords, 2, 2) + Polynomial(coords, 1);
  const auto x = [&](std::size_t i) { return Polynomial::variable(coords, i); };
  switch (integer(0, 2)) {
    case 0:
      set(0, 1, g);
      break;
    case 1:  // so(3)*
      set(0, 1, g * x(2));
      set(1, 2, g * x(0));
      set(2, 0, g * x(1));
      break;
    default:  // book algebra, linear
      set(0, 1, g * x(1));
      set(0, 2, g * x(2));
      break;
  }
  return {coords, pi};
}

Pair Random::any_pair() {
  const std::size_t n = rank();
  const Coordinates c = base();
  return Pair(algebroid<Side::Primal>(n, c), algebroid<Side::Dual>(n, c));
}

Pair Random::bialgebroid(std::string* family) {
  std::string label;
  Pair out = [&]() -> Pair {
    switch (integer(0, 5)) {
      case 0: {
        label = "dual abelian";
        const std::size_t n = rank();
        const Coordinates c = base();
        return Pair(algebroid<Side::Primal>(n, c), Algebroid<Side::Dual>(n, c));
      }
      case 1: {
        label = "primal abelian";
        const std::size_t n = rank();
        const Coordinates c = base();
        return Pair(Algebroid<Side::Primal>(n, c), algebroid<Side::Dual>(n, c));
      }
      case 2:
        label = "a+b";
        return a_plus_b(rational(), rational(), rational(), rational());
      case 3:
        label = "poisson double";
        return poisson_double(poisson(static_cast<std::size_t>(integer(2, 3))));
      case 4: {
        // e_0 acting on the rest; any bivector in the span of e_1..e_{n-1}
        // commutes with itself
        label = "triangular";
        const std::size_t n = static_cast<std::size_t>(integer(3, 4));
        const Coordinates c = Coordinates::standard(static_cast<std::size_t>(integer(0, 2)));
        VectorField field = zero_field(c);
        for (auto& f : field) f = polynomial(c, 1, 1);
        Matrix mat = identity_matrix(n, c);
        for (auto& row : mat) {
          for (auto& e : row) e = Polynomial(c, rational());
        }
        const auto a = rank_one_action<Side::Primal>(n, c, field, mat);
        Multivector lambda(n, c);
        for (std::size_t i = 1; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            lambda.add_term(singleton(i) | singleton(j), polynomial(c, 1, 2));
          }
        }
        return exact_from_bivector(a, lambda).pair;
      }
      default: {
        label = "standard exact";
        switch (integer(0, 2)) {
          case 0:
            return heisenberg_triangular().pair;
          case 1:
            return book_triangular().pair;
          default:
            return sl2_exact().pair;
        }
      }
    }
  }();
  if (chance(60)) {
    const unsigned deg = out.coordinates().size() > 0 ? 1 : 0;
    Pair framed = change_frame(out, unitriangular(out.rank(), out.coordinates(), deg));
    if (structure_degree(framed.A()) <= kMaxStructureDegree &&
        structure_degree(framed.Astar()) <= kMaxStructureDegree) {
      out = std::move(framed);
      label += ", framed";
    }
  }
  if (family) *family = label;
  return out;
}

SectionE<Side::Primal> random_double_section(Random& r, const Pair& p, unsigned max_coord_degree) {
  return {r.section<Side::Primal>(p.rank(), p.coordinates(), 1, max_coord_degree),
          r.section<Side::Dual>(p.rank(), p.coordinates(), 1, max_coord_degree)};
}

template Exterior<Side::Primal> Random::section<Side::Primal>(std::size_t, const Coordinates&, int, unsigned);
template Exterior<Side::Dual> Random::section<Side::Dual>(std::size_t, const Coordinates&, int, unsigned);
template Exterior<Side::Primal> Random::any_section<Side::Primal>(std::size_t, const Coordinates&, unsigned);
template Exterior<Side::Dual> Random::any_section<Side::Dual>(std::size_t, const Coordinates&, unsigned);
template Algebroid<Side::Primal> Random::algebroid<Side::Primal>(std::size_t, const Coordinates&);
template Algebroid<Side::Dual> Random::algebroid<Side::Dual>(std::size_t, const Coordinates&);

}  // namespace manin::testing
