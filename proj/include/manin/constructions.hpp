#pragma once

// Builders for the standard families of pairs and the identity checks that
// come with each family.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "manin/bialgebroid.hpp"

namespace manin {

/// A builder's precondition failed; what() names the check and witness()
/// holds the data that violates it.
class ConstructionError : public std::invalid_argument {
 public:
  ConstructionError(const std::string& what, Witness witness)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

/// Lambda#(theta) = i_theta Lambda.
Multivector bivector_sharp(const Multivector& lambda, const Form& theta);

/// Lambda_{ij} basis components with i < j as a skew matrix.
Matrix bivector_matrix(const Multivector& lambda);
Multivector bivector_from_matrix(const Matrix& m, std::size_t rank);

/// [[Lambda, Lambda], e_i] = 0 for every i and [[Lambda, Lambda], x_p] = 0
/// for every coordinate, which together give [[Lambda, Lambda], X] = 0 for
/// all sections.
std::optional<Witness> exactness_witness(const Algebroid<Side::Primal>& a,
                                         const Multivector& lambda);

struct ExactPair {
  Pair pair;
  Multivector lambda;
  bool triangular = false;
};

/// A* with [xi, theta] = L_{Lambda# xi} theta - i_{Lambda# theta} d xi and
/// anchor rho o Lambda#.  Throws ConstructionError when Lambda is not exact.
ExactPair exact_from_bivector(const Algebroid<Side::Primal>& a, const Multivector& lambda);

/// The boundary-star formula, the modular cocycle formula, f_tilde = 0 and,
/// for triangular pairs, d* = [Lambda, .].
IdentityReport exact_identities(const ExactPair& e, const ProbeConfig& cfg = {});

/// Endomorphism N of A with N[i][j] = <eps^i, N e_j>.
Multivector apply_endomorphism(const Matrix& n, const Multivector& x);
/// The transpose N* acting on degree-1 forms.
Form apply_transpose(const Matrix& n, const Form& theta);
Matrix matrix_power(const Matrix& n, unsigned l);
Polynomial trace(const Matrix& n);

std::optional<Witness> torsion_witness(const Algebroid<Side::Primal>& a, const Matrix& n);

/// [X, Y]_N = [NX, Y] + [X, NY] - N[X, Y] with anchor rho o N.
Algebroid<Side::Primal> deformed_algebroid(const Algebroid<Side::Primal>& a, const Matrix& n);

struct PoissonNijenhuis {
  Algebroid<Side::Primal> algebroid;
  Matrix n;
  Multivector lambda;
};

/// Torsion, the Poisson condition, Lambda# N* = N Lambda# and the
/// concomitant [xi, theta]_{N Lambda} = [N* xi, theta] + [xi, N* theta] - N*[xi, theta].
std::optional<Witness> pn_compatibility_witness(const PoissonNijenhuis& pn);

/// Lambda_k with Lambda_k# = N^k Lambda#.
Multivector hierarchy_bivector(const PoissonNijenhuis& pn, unsigned k);

/// (A_l, A*_k): A deformed by N^l, A* the exact dual of Lambda_k.
Pair pn_hierarchy(const PoissonNijenhuis& pn, unsigned k, unsigned l);

/// Modular cocycles and boundaries along the hierarchy for l = 1..3, and
/// f_tilde = 0 for k in {0, 1}, l in {1, 2}.
IdentityReport pn_identities(const PoissonNijenhuis& pn, const ProbeConfig& cfg = {});

/// First diagonal N with entries in {1, 2, x_1, .., x_m} on the tangent
/// algebroid of R^m, with a basis bivector Lambda, such that N is not scalar,
/// trace N and N Lambda / Lambda are not constant, and every compatibility
/// check passes.
std::optional<PoissonNijenhuis> find_pn_instance(std::size_t m);

/// g = a + b: [e1, e2] = a e1 + b e2 and [eps1, eps2] = c eps1 + d eps2.
Pair a_plus_b(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// Skew matrix pi^{ij} of polynomials on R^m.
struct PoissonData {
  Coordinates coords;
  Matrix pi;
};

Multivector poisson_bivector(const PoissonData& data);

/// X_Omega(f) = div(pi#(df)) for f = x_1 .. x_m.
VectorField modular_field(const PoissonData& data);

/// (TP, T*P).  Throws ConstructionError if [pi, pi] != 0.
Pair poisson_double(const PoissonData& data);

IdentityReport poisson_homology_check(const PoissonData& data, const ProbeConfig& cfg = {});

/// The same pair in the frame e'_i = sum_j M_ij e_j (M unitriangular), with
/// the dual frame on A*.
Pair change_frame(const Pair& p, const Matrix& m);

/// Rank-3 Lie algebra pairs that are not bialgebras, from single +-1, +-2
/// perturbations of the triangular pair over the Heisenberg algebra.
std::vector<Pair> find_non_bialgebroids(std::size_t count = 2);

/// [e1, e2] = e3 with Lambda = e1 ^ e3.
ExactPair heisenberg_triangular();

/// [e1, e2] = e2, [e1, e3] = e3 with Lambda = e2 ^ e3; the dual bracket is
/// [eps2, eps3] = 2 eps1.
ExactPair book_triangular();

Algebroid<Side::Primal> book();

/// sl2 in the basis (h, e, f) with Lambda = e ^ f, exact but not triangular.
ExactPair sl2_exact();

/// sl2 structure: [h, e] = 2e, [h, f] = -2f, [e, f] = h.
Algebroid<Side::Primal> sl2();

Algebroid<Side::Primal> heisenberg();

}  // namespace manin
