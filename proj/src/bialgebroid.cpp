#include "manin/bialgebroid.hpp"

namespace manin {

template <Side S>
AlgebroidPair<S>::AlgebroidPair(Algebroid<S> a, Algebroid<opposite(S)> astar, Frame frame)
    : a_(std::move(a)), astar_(std::move(astar)), frame_(frame) {
  if (a_.rank() != astar_.rank()) throw std::invalid_argument("A and A* have different ranks");
  if (!(a_.coordinates() == astar_.coordinates())) {
    throw std::invalid_argument("A and A* have different base coordinates");
  }
  if (frame_.s_density == 0) throw std::invalid_argument("density must be nonzero");
  ValidationReport ra = a_.validate(), rs = astar_.validate();
  if (!ra.ok() || !rs.ok()) {
    throw StructureError(!ra.ok() ? "A is not a Lie algebroid" : "A* is not a Lie algebroid",
                         std::move(ra), std::move(rs));
  }
  x0_ = astar_.modular_cocycle();
  xi0_ = a_.modular_cocycle();
  f_tilde_ = (pairing<S>(xi0_, x0_) * Rational(1, 2) - boundary(x0_).coefficient(0)) *
             Rational(1, 2);
}

template <Side S>
AlgebroidPair<opposite(S)> AlgebroidPair<S>::swapped() const {
  return AlgebroidPair<opposite(S)>(astar_, a_, frame_);
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::laplacian(const Section& u) const {
  return d_star(boundary(u)) + boundary(d_star(u));
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::lie_X0(const Section& u) const {
  return a_.schouten(x0_, u);
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::lie_xi0(const Section& u) const {
  return astar_.lie_derivative(xi0_, u);
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::modular_average(const Section& u) const {
  return (lie_X0(u) + lie_xi0(u)) * Rational(1, 2);
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::dirac(const Section& u) const {
  Section out = d_star(u) - boundary(u);
  out += (wedge(x0_, u) + contract<S>(xi0_, u)) * Rational(1, 2);
  return out;
}

template <Side S>
Polynomial AlgebroidPair<S>::metric(const E& x, const E& y) const {
  return (pairing<S>(x.cov, y.vec) + pairing<S>(y.cov, x.vec)) * Rational(1, 2);
}

template <Side S>
typename AlgebroidPair<S>::E AlgebroidPair<S>::D(const Polynomial& f) const {
  return {astar_.differential(f), a_.differential(f)};
}

template <Side S>
VectorField AlgebroidPair<S>::anchor(const E& x) const {
  VectorField out = a_.anchor_of(x.vec);
  const VectorField other = astar_.anchor_of(x.cov);
  for (std::size_t p = 0; p < out.size(); ++p) out[p] += other[p];
  return out;
}

template <Side S>
typename AlgebroidPair<S>::E AlgebroidPair<S>::dorfman(const E& x, const E& y) const {
  E out;
  out.vec = a_.schouten(x.vec, y.vec) + astar_.lie_derivative(x.cov, y.vec) -
            contract<S>(y.cov, d_star(x.vec));
  out.cov = astar_.schouten(x.cov, y.cov) + a_.lie_derivative(x.vec, y.cov) -
            contract<opposite(S)>(y.vec, d(x.cov));
  return out;
}

template <Side S>
typename AlgebroidPair<S>::Section AlgebroidPair<S>::clifford(const E& x, const Section& w) const {
  return wedge(x.vec, w) + contract<S>(x.cov, w);
}

template <Side S>
typename AlgebroidPair<S>::Cochain AlgebroidPair<S>::lie_on_cochains(const E& x,
                                                                     const Cochain& eta) const {
  return a_.lie_derivative(x.vec, eta) + astar_.schouten(x.cov, eta);
}

bool IdentityReport::pass() const {
  for (const auto& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

const IdentityRecord* IdentityReport::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

void require_exact_probes(const ProbeConfig& cfg) {
  if (cfg.max_coord_degree < 2) {
    throw PreconditionError("probe degree must be at least 2 for an exact decision");
  }
  if (cfg.max_section_degree < 1) {
    throw PreconditionError("section probe degree must be at least 1");
  }
}

template class AlgebroidPair<Side::Primal>;
template class AlgebroidPair<Side::Dual>;

}  // namespace manin
