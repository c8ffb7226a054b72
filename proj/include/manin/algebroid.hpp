#pragma once

// A Lie algebroid on a trivial bundle over affine space, given by an anchor
// matrix and structure functions [e_i, e_j] = sum_k c_ij^k e_k.
//
// Algebroid<Side::Primal> is a structure on A (sections are multivectors,
// cochains are forms); Algebroid<Side::Dual> is a structure on A*.

#include <string>
#include <utility>
#include <vector>

#include "manin/exterior.hpp"

namespace manin {

/// Ordered (key, value) record attached to a failed check.
using Witness = std::vector<std::pair<std::string, std::string>>;

/// Components along d/dx_1 .. d/dx_m.
using VectorField = std::vector<Polynomial>;

VectorField zero_field(const Coordinates& coords);
VectorField field_bracket(const VectorField& x, const VectorField& y);
Polynomial apply_field(const VectorField& x, const Polynomial& f);
/// Flat divergence sum_p d_p X^p.
Polynomial divergence(const VectorField& x);
bool is_zero(const VectorField& x);
std::string to_string(const VectorField& x);

struct ValidationReport {
  bool jacobi_ok = true;
  bool anchor_morphism_ok = true;
  std::vector<Witness> witnesses;

  bool ok() const { return jacobi_ok && anchor_morphism_ok; }
};

template <Side S>
class Algebroid {
 public:
  using Section = Exterior<S>;
  using Cochain = Exterior<opposite(S)>;

  Algebroid() = default;
  /// Abelian structure with zero anchor.
  Algebroid(std::size_t rank, Coordinates coords);

  /// Tangent algebroid of the base: rank m, identity anchor, zero brackets.
  static Algebroid tangent(const Coordinates& coords);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t base_dim() const noexcept { return coords_.size(); }
  const Coordinates& coordinates() const noexcept { return coords_; }

  void set_anchor(std::size_t i, VectorField field);
  /// Sets [e_i, e_j] and, by skew-symmetry, [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, const Section& value);

  const VectorField& anchor(std::size_t i) const { return anchor_.at(i); }
  const Section& bracket(std::size_t i, std::size_t j) const {
    return brackets_.at(i * rank_ + j);
  }
  bool has_zero_anchor() const;

  Polynomial anchor_action(std::size_t i, const Polynomial& f) const;
  /// rho(x) for the degree-1 part of x.
  VectorField anchor_of(const Section& x) const;
  Polynomial act(const Section& x, const Polynomial& f) const;

  Section zero_section() const { return Section(rank_, coords_); }
  Cochain zero_cochain() const { return Cochain(rank_, coords_); }
  Section generator(std::size_t i) const { return Section::generator(rank_, coords_, i); }
  Cochain cogenerator(std::size_t i) const { return Cochain::generator(rank_, coords_, i); }

  /// Chevalley-Eilenberg differential.
  Cochain differential(const Cochain& theta) const;
  /// df = sum_i rho(e_i)(f) eps^i.
  Cochain differential(const Polynomial& f) const;

  /// Schouten bracket extending [e_i, e_j] and [X, f] = rho(X) f, with
  /// [u, v] = -(-1)^{(|u|-1)(|v|-1)} [v, u].
  Section schouten(const Section& u, const Section& v) const;

  /// L_x on cochains via i_x d + d i_x; x must be of degree 1.
  Cochain lie_derivative(const Section& x, const Cochain& target) const;
  /// L_x on sections: the Schouten bracket [x, target].
  Section lie_derivative(const Section& x, const Section& target) const;

  /// Boundary operator (-1)^l (Omega#)^{-1} d Omega# on degree l.
  Section boundary(const Section& u) const;

  /// The modular cochain: <xi, e_i> = div rho(e_i) + [e_i, top]/top.
  Cochain modular_cocycle() const;

  ValidationReport validate() const;

  friend bool operator==(const Algebroid& a, const Algebroid& b) {
    return a.rank_ == b.rank_ && a.coords_ == b.coords_ && a.anchor_ == b.anchor_ &&
           a.brackets_ == b.brackets_;
  }

 private:
  Cochain differential_of_basis(IndexSet set) const;
  Section bracket_of_basis(IndexSet a, IndexSet b) const;
  Section bracket_with_function(IndexSet a, const Polynomial& g) const;

  std::size_t rank_ = 0;
  Coordinates coords_;
  std::vector<VectorField> anchor_;
  std::vector<Section> brackets_;  // row-major rank x rank
};

/// Square matrix of polynomials, row-major.
using Matrix = std::vector<std::vector<Polynomial>>;

Matrix identity_matrix(std::size_t n, const Coordinates& coords);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Inverse of a triangular matrix with unit diagonal (upper or lower);
/// throws std::invalid_argument otherwise.
Matrix inverse_unitriangular(const Matrix& m);

/// The same structure written in the frame e'_i = sum_j M_ij e_j, with M
/// unitriangular (so the top sections are unchanged).
template <Side S>
Algebroid<S> change_frame(const Algebroid<S>& a, const Matrix& m);

/// Components of a section in the frame e'_i = sum_j M_ij e_j, given the
/// inverse matrix.
template <Side S>
Exterior<S> to_frame(const Exterior<S>& x, const Matrix& inverse);

}  // namespace manin
