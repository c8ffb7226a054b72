#pragma once

// A pair of Lie algebroid structures on A and A*, the operators built from
// them (d, d*, boundaries, Laplacians, modular cocycles, the Dirac operator),
// the double A + A* with its Dorfman bracket and Clifford action, and the
// identity suites.
//
// AlgebroidPair<Side::Primal> is the pair (A, A*) acting on multivectors;
// swapped() gives (A*, A) acting on forms, so every statement about the
// starred operators is obtained by running its unstarred twin on swapped().

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "manin/algebroid.hpp"

namespace manin {

class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& what, ValidationReport a, ValidationReport astar)
      : std::runtime_error(what), a_(std::move(a)), astar_(std::move(astar)) {}
  const ValidationReport& a_report() const noexcept { return a_; }
  const ValidationReport& astar_report() const noexcept { return astar_; }

 private:
  ValidationReport a_, astar_;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A section X + xi of A + A*.
template <Side S>
struct SectionE {
  Exterior<S> vec;
  Exterior<opposite(S)> cov;

  SectionE& operator+=(const SectionE& o) {
    vec += o.vec;
    cov += o.cov;
    return *this;
  }
  friend SectionE operator+(SectionE a, const SectionE& b) { return a += b; }
  friend SectionE operator-(SectionE a, const SectionE& b) {
    a.vec -= b.vec;
    a.cov -= b.cov;
    return a;
  }
  friend SectionE operator*(SectionE a, const Polynomial& f) {
    a.vec *= f;
    a.cov *= f;
    return a;
  }
  friend bool operator==(const SectionE& a, const SectionE& b) {
    return a.vec == b.vec && a.cov == b.cov;
  }
  bool is_zero() const { return vec.is_zero() && cov.is_zero(); }
  SectionE<opposite(S)> swapped() const { return {cov, vec}; }
  std::string to_string() const { return "(" + vec.to_string() + ") + (" + cov.to_string() + ")"; }
};

template <Side S>
class AlgebroidPair {
 public:
  using Section = Exterior<S>;
  using Cochain = Exterior<opposite(S)>;
  using E = SectionE<S>;

  /// Throws StructureError when either side fails validation and
  /// std::invalid_argument on a shape mismatch.
  AlgebroidPair(Algebroid<S> a, Algebroid<opposite(S)> astar, Frame frame = {});

  const Algebroid<S>& A() const noexcept { return a_; }
  const Algebroid<opposite(S)>& Astar() const noexcept { return astar_; }
  const Frame& frame() const noexcept { return frame_; }
  std::size_t rank() const noexcept { return a_.rank(); }
  const Coordinates& coordinates() const noexcept { return a_.coordinates(); }

  AlgebroidPair<opposite(S)> swapped() const;

  Section zero_section() const { return a_.zero_section(); }
  Cochain zero_cochain() const { return a_.zero_cochain(); }
  Section scalar(const Polynomial& f) const { return Section::scalar(rank(), f); }

  Cochain d(const Cochain& theta) const { return a_.differential(theta); }
  Section d_star(const Section& u) const { return astar_.differential(u); }
  Section boundary(const Section& u) const { return a_.boundary(u); }
  Cochain boundary_star(const Cochain& theta) const { return astar_.boundary(theta); }

  /// Modular cocycle of A* (a section of A) and of A (a section of A*).
  const Section& X0() const noexcept { return x0_; }
  const Cochain& xi0() const noexcept { return xi0_; }

  Section laplacian(const Section& u) const;
  /// L_{X0} u = [X0, u] in the Schouten algebra of A.
  Section lie_X0(const Section& u) const;
  /// L_{xi0} u through the Cartan formula of A*.
  Section lie_xi0(const Section& u) const;
  /// (L_{X0} + L_{xi0}) u / 2
  Section modular_average(const Section& u) const;

  /// (<xi0, X0>/2 - boundary X0) / 2
  const Polynomial& f_tilde() const noexcept { return f_tilde_; }

  /// d* - boundary + (X0 ^ . + i_{xi0}) / 2
  Section dirac(const Section& u) const;

  // The double A + A*.
  Polynomial metric(const E& x, const E& y) const;
  E D(const Polynomial& f) const;
  VectorField anchor(const E& x) const;
  E dorfman(const E& x, const E& y) const;
  Section clifford(const E& x, const Section& w) const;

  /// L_x on sections of A* for x a section of the double: the Cartan
  /// derivative of its A part plus the A* bracket with its A* part.
  Cochain lie_on_cochains(const E& x, const Cochain& eta) const;

  /// Lie derivative of the density s along rho(x), divided by s.
  Polynomial density_derivative(const VectorField& x) const { return divergence(x); }

 private:
  Algebroid<S> a_;
  Algebroid<opposite(S)> astar_;
  Frame frame_;
  Section x0_;
  Cochain xi0_;
  Polynomial f_tilde_;
};

using Pair = AlgebroidPair<Side::Primal>;

struct ProbeConfig {
  unsigned max_coord_degree = 2;
  unsigned max_section_degree = 2;
};

struct IdentityRecord {
  std::string id;
  bool pass = true;
  std::optional<Witness> witness;
};

struct IdentityReport {
  std::string suite;
  std::vector<IdentityRecord> records;
  std::optional<Polynomial> f_tilde;

  bool pass() const;
  const IdentityRecord* find(const std::string& id) const;
};

struct ScalarReport {
  bool is_scalar = false;
  Polynomial f_tilde;
  std::optional<Witness> witness;
  /// The unconditional expansion of the square in terms of the Laplacian
  /// and the modular Lie derivatives.
  bool expansion_holds = false;
  std::optional<Witness> expansion_witness;
};

/// Decides whether the square of the Dirac operator is multiplication by
/// f_tilde on the probe family of coordinate degree cfg.max_coord_degree.
template <Side S>
ScalarReport dirac_square(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

/// d*[u,v] = [d*u, v] + (-1)^{k-1} [u, d*v] on probe sections of degree <= 2.
template <Side S>
IdentityReport leibniz_check(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

template <Side S>
IdentityReport theorem_c_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

/// Throws PreconditionError unless the pair passes leibniz_check.
template <Side S>
IdentityReport corollary_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

template <Side S>
struct CourantSample {
  SectionE<S> x, y, z;
};

template <Side S>
IdentityReport courant_axioms(const AlgebroidPair<S>& p,
                              const std::vector<CourantSample<S>>& samples,
                              const std::vector<Polynomial>& fs);

/// Courant axioms on all triples of basis sections with coefficients of
/// degree <= 1 and on the probe monomials of degree <= cfg.max_coord_degree.
template <Side S>
IdentityReport courant_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

template <Side S>
IdentityReport generator_check(const AlgebroidPair<S>& p, const ProbeConfig& cfg = {});

/// x^alpha e_i and x^alpha eps^j with |alpha| <= max_coord_degree.
template <Side S>
std::vector<SectionE<S>> double_probes(const AlgebroidPair<S>& p, unsigned max_coord_degree);

/// Throws PreconditionError when the probe degree is below the
/// differential order (two) of the checked identities.
void require_exact_probes(const ProbeConfig& cfg);

}  // namespace manin
