#pragma once

// Sparse exterior algebra of sections of a trivial rank-n bundle and of its
// dual, with polynomial coefficients.
//
// Indices are 0-based here; the JSON layer shifts them to 1-based.  A basis
// element e_I (or eps^I) is keyed by the bitmask I, read in increasing order.
//
// Contraction convention: a degree-1 argument contracts into the first slot,
// so i_{eps^i} e_I = (-1)^p e_{I \ i} with p the position of i in I.  For a
// product, i_{t1 ^ t2} = i_{t2} o i_{t1}: the leftmost factor is contracted
// first.  With this choice i_{eps^I} e_I = 1 and
//   V# o Omega#(X) = (-1)^{k(n-1)} X,   Omega# o V#(phi) = (-1)^{k(n-1)} phi.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "manin/ring.hpp"

namespace manin {

using IndexSet = std::uint32_t;

inline constexpr std::size_t kMaxRank = 16;

inline int degree_of(IndexSet s) { return std::popcount(s); }
inline IndexSet full_set(std::size_t n) { return n == 0 ? 0u : ((1u << n) - 1u); }
inline IndexSet singleton(std::size_t i) { return 1u << i; }

/// 0-based indices of s in increasing order.
std::vector<std::size_t> members(IndexSet s);

/// Sign of e_a ^ e_b as a multiple of e_{a|b}; 0 if they overlap.
int wedge_sign(IndexSet a, IndexSet b);

/// Primal: sections of Lambda A (multivectors, basis e_I).
/// Dual:   sections of Lambda A* (forms, basis eps^I).
enum class Side { Primal, Dual };

constexpr Side opposite(Side s) { return s == Side::Primal ? Side::Dual : Side::Primal; }

template <Side S>
class Exterior {
 public:
  using Components = std::map<IndexSet, Polynomial>;

  Exterior() = default;
  Exterior(std::size_t rank, Coordinates coords);

  static Exterior scalar(std::size_t rank, const Polynomial& f);
  static Exterior basis(std::size_t rank, const Coordinates& coords, IndexSet set);
  static Exterior term(std::size_t rank, IndexSet set, const Polynomial& coefficient);
  /// e_i or eps^i
  static Exterior generator(std::size_t rank, const Coordinates& coords, std::size_t i);
  static Exterior top(std::size_t rank, const Coordinates& coords);

  std::size_t rank() const noexcept { return rank_; }
  const Coordinates& coordinates() const noexcept { return coords_; }
  const Components& components() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Degree of a nonzero homogeneous element; nullopt if mixed or zero.
  std::optional<int> degree() const;
  Exterior part(int k) const;
  Polynomial coefficient(IndexSet set) const;
  Polynomial zero_poly() const { return Polynomial(coords_); }

  void add_term(IndexSet set, const Polynomial& coefficient);

  Exterior& operator+=(const Exterior& other);
  Exterior& operator-=(const Exterior& other);
  Exterior& operator*=(const Polynomial& f);
  Exterior& operator*=(const Rational& q);

  friend Exterior operator+(Exterior a, const Exterior& b) { return a += b; }
  friend Exterior operator-(Exterior a, const Exterior& b) { return a -= b; }
  friend Exterior operator*(Exterior a, const Polynomial& f) { return a *= f; }
  friend Exterior operator*(const Polynomial& f, Exterior a) { return a *= f; }
  friend Exterior operator*(Exterior a, const Rational& q) { return a *= q; }
  friend Exterior operator*(const Rational& q, Exterior a) { return a *= q; }
  Exterior operator-() const;

  friend bool operator==(const Exterior& a, const Exterior& b) {
    return a.rank_ == b.rank_ && a.coords_ == b.coords_ && a.terms_ == b.terms_;
  }

  /// Human-readable form such as "x1*e1^e2 - 1/2*e3" (or "eps1^eps2").
  std::string to_string() const;

  void require_compatible(const Exterior& other) const;
  template <Side T>
  void require_compatible(const Exterior<T>& other) const {
    check_shape(other.rank(), other.coordinates());
  }

 private:
  void check_shape(std::size_t rank, const Coordinates& coords) const;

  std::size_t rank_ = 0;
  Coordinates coords_;
  Components terms_;
};

template <Side S>
std::ostream& operator<<(std::ostream& os, const Exterior<S>& x) {
  return os << x.to_string();
}

using Multivector = Exterior<Side::Primal>;
using Form = Exterior<Side::Dual>;

template <Side S>
Exterior<S> wedge(const Exterior<S>& a, const Exterior<S>& b);

/// i_by(target), with `by` taken from the opposite side.  Components of
/// `by` of degree larger than those of `target` contribute zero.
template <Side S>
Exterior<S> contract(const Exterior<opposite(S)>& by, const Exterior<S>& target);

/// <theta, u> with the determinant convention <eps^J, e_I> = delta_IJ.
/// Components of different degree pair to zero.  Symmetric in the sides.
template <Side S>
Polynomial pairing(const Exterior<opposite(S)>& a, const Exterior<S>& b);

/// x -> i_x(top of the opposite side): Omega# on multivectors, V# on forms.
template <Side S>
Exterior<opposite(S)> sharp(const Exterior<S>& x);

/// Inverse of sharp<opposite(S)>: returns y with sharp(y) = x.
template <Side S>
Exterior<opposite(S)> sharp_inverse(const Exterior<S>& x);

/// All x^gamma e_I with |gamma| <= max_coord_degree and every I, ordered by
/// (gamma, I).
template <Side S>
std::vector<Exterior<S>> probe_family(std::size_t rank, const Coordinates& coords,
                                      unsigned max_coord_degree);

/// x^alpha e_I with |alpha| <= max_coord_degree and |I| in [min_deg, max_deg].
template <Side S>
std::vector<Exterior<S>> section_probes(std::size_t rank, const Coordinates& coords,
                                        unsigned max_coord_degree, int min_deg, int max_deg);

/// Frame data: Omega = eps^{1..n}, V = e_{1..n}, and the volume density
/// s = g dx_1 ^ ... ^ dx_m with g a nonzero constant.
struct Frame {
  Rational s_density = 1;
};

}  // namespace manin
