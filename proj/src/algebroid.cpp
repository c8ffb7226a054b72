#include "manin/algebroid.hpp"

#include <stdexcept>

namespace manin {

VectorField zero_field(const Coordinates& coords) {
  return VectorField(coords.size(), Polynomial(coords));
}

Polynomial apply_field(const VectorField& x, const Polynomial& f) {
  Polynomial out(f.coordinates());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!x[p].is_zero()) out += x[p] * f.derivative(p);
  }
  return out;
}

VectorField field_bracket(const VectorField& x, const VectorField& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector field dimension mismatch");
  VectorField out;
  out.reserve(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    out.push_back(apply_field(x, y[p]) - apply_field(y, x[p]));
  }
  return out;
}

Polynomial divergence(const VectorField& x) {
  if (x.empty()) return Polynomial();
  Polynomial out(x.front().coordinates());
  for (std::size_t p = 0; p < x.size(); ++p) out += x[p].derivative(p);
  return out;
}

bool is_zero(const VectorField& x) {
  for (const auto& c : x) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::string to_string(const VectorField& x) {
  std::string out = "[";
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (p) out += ", ";
    out += x[p].to_string();
  }
  return out + "]";
}

namespace {

std::string indices_text(std::initializer_list<std::size_t> ids) {
  std::string out;
  for (std::size_t i : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  }
  return out;
}

}  // namespace

template <Side S>
Algebroid<S>::Algebroid(std::size_t rank, Coordinates coords)
    : rank_(rank),
      coords_(std::move(coords)),
      anchor_(rank, zero_field(coords_)),
      brackets_(rank * rank, Section(rank, coords_)) {
  if (rank > kMaxRank) throw std::invalid_argument("rank exceeds the supported maximum");
}

template <Side S>
Algebroid<S> Algebroid<S>::tangent(const Coordinates& coords) {
  Algebroid out(coords.size(), coords);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out.anchor_[i][i] = Polynomial(coords, 1);
  }
  return out;
}

template <Side S>
void Algebroid<S>::set_anchor(std::size_t i, VectorField field) {
  if (i >= rank_) throw std::out_of_range("anchor row out of range");
  if (field.size() != coords_.size()) throw std::invalid_argument("anchor row has wrong length");
  for (const auto& c : field) {
    if (!(c.coordinates() == coords_)) throw std::invalid_argument("anchor coordinate mismatch");
  }
  anchor_[i] = std::move(field);
}

template <Side S>
void Algebroid<S>::set_bracket(std::size_t i, std::size_t j, const Section& value) {
  if (i >= rank_ || j >= rank_) throw std::out_of_range("bracket index out of range");
  if (i == j && !value.is_zero()) throw std::invalid_argument("[e_i, e_i] must vanish");
  value.require_compatible(brackets_[0]);
  if (!value.is_zero() && value.degree() != 1) {
    throw std::invalid_argument("structure functions must form a degree-1 section");
  }
  brackets_[i * rank_ + j] = value;
  brackets_[j * rank_ + i] = -value;
}

template <Side S>
bool Algebroid<S>::has_zero_anchor() const {
  for (const auto& row : anchor_) {
    if (!is_zero(row)) return false;
  }
  return true;
}

template <Side S>
Polynomial Algebroid<S>::anchor_action(std::size_t i, const Polynomial& f) const {
  return apply_field(anchor_.at(i), f);
}

template <Side S>
VectorField Algebroid<S>::anchor_of(const Section& x) const {
  VectorField out = zero_field(coords_);
  for (std::size_t i = 0; i < rank_; ++i) {
    const Polynomial c = x.coefficient(singleton(i));
    if (c.is_zero()) continue;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += c * anchor_[i][p];
  }
  return out;
}

template <Side S>
Polynomial Algebroid<S>::act(const Section& x, const Polynomial& f) const {
  return apply_field(anchor_of(x), f);
}

template <Side S>
typename Algebroid<S>::Cochain Algebroid<S>::differential_of_basis(IndexSet set) const {
  Cochain out = zero_cochain();
  if (set == 0) return out;
  const int k = std::countr_zero(set);
  if (degree_of(set) == 1) {
    // d eps^k = - sum_{i<j} c_ij^k eps^i ^ eps^j
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = i + 1; j < rank_; ++j) {
        const Polynomial c = bracket(i, j).coefficient(singleton(k));
        if (!c.is_zero()) out.add_term(singleton(i) | singleton(j), -c);
      }
    }
    return out;
  }
  const IndexSet head = singleton(k);
  const IndexSet rest = set & ~head;
  const Cochain h = Cochain::basis(rank_, coords_, head);
  const Cochain r = Cochain::basis(rank_, coords_, rest);
  out += wedge(differential_of_basis(head), r);
  out -= wedge(h, differential_of_basis(rest));
  return out;
}

template <Side S>
typename Algebroid<S>::Cochain Algebroid<S>::differential(const Polynomial& f) const {
  Cochain out = zero_cochain();
  for (std::size_t i = 0; i < rank_; ++i) out.add_term(singleton(i), anchor_action(i, f));
  return out;
}

template <Side S>
typename Algebroid<S>::Cochain Algebroid<S>::differential(const Cochain& theta) const {
  theta.require_compatible(zero_cochain());
  Cochain out = zero_cochain();
  for (const auto& [set, f] : theta.components()) {
    const Cochain basis = Cochain::basis(rank_, coords_, set);
    out += wedge(differential(f), basis);
    if (set != 0) out += differential_of_basis(set) * f;
  }
  return out;
}

template <Side S>
typename Algebroid<S>::Section Algebroid<S>::bracket_with_function(IndexSet a,
                                                                    const Polynomial& g) const {
  // [e_I, g] = sum_r (-1)^{p-r} rho(e_{i_r})(g) e_{I \ i_r}
  Section out = zero_section();
  const auto idx = members(a);
  const std::size_t p = idx.size();
  for (std::size_t r = 0; r < p; ++r) {
    Polynomial c = anchor_action(idx[r], g);
    if (c.is_zero()) continue;
    if ((p - 1 - r) % 2) c = -c;
    out.add_term(a & ~singleton(idx[r]), c);
  }
  return out;
}

template <Side S>
typename Algebroid<S>::Section Algebroid<S>::bracket_of_basis(IndexSet a, IndexSet b) const {
  // [e_I, e_J] = sum_{r,s} (-1)^{r+s} [e_{i_r}, e_{j_s}] ^ e_{I\i_r} ^ e_{J\j_s}
  Section out = zero_section();
  const auto ia = members(a);
  const auto ib = members(b);
  for (std::size_t r = 0; r < ia.size(); ++r) {
    for (std::size_t s = 0; s < ib.size(); ++s) {
      const Section& c = bracket(ia[r], ib[s]);
      if (c.is_zero()) continue;
      const Section rest_a = Section::basis(rank_, coords_, a & ~singleton(ia[r]));
      const Section rest_b = Section::basis(rank_, coords_, b & ~singleton(ib[s]));
      Section t = wedge(wedge(c, rest_a), rest_b);
      if ((r + s) % 2) t = -t;
      out += t;
    }
  }
  return out;
}

template <Side S>
typename Algebroid<S>::Section Algebroid<S>::schouten(const Section& u, const Section& v) const {
  u.require_compatible(zero_section());
  v.require_compatible(zero_section());
  Section out = zero_section();
  for (const auto& [a, f] : u.components()) {
    const int p = degree_of(a);
    for (const auto& [b, g] : v.components()) {
      const int q = degree_of(b);
      if (p >= 1) {
        Section t = bracket_with_function(a, g);
        if (!t.is_zero()) out += wedge(t, Section::basis(rank_, coords_, b)) * f;
      }
      if (q >= 1) {
        Section t = bracket_with_function(b, f);
        if (!t.is_zero()) {
          t = wedge(t, Section::basis(rank_, coords_, a)) * g;
          // minus (-1)^{(p-1)(q-1)}
          if (((p + 1) * (q + 1)) % 2 == 0) t = -t;
          out += t;
        }
      }
      if (p >= 1 && q >= 1) {
        Section t = bracket_of_basis(a, b);
        if (!t.is_zero()) out += t * (f * g);
      }
    }
  }
  return out;
}

template <Side S>
typename Algebroid<S>::Cochain Algebroid<S>::lie_derivative(const Section& x,
                                                             const Cochain& target) const {
  if (!x.is_zero() && x.degree() != 1) {
    throw std::invalid_argument("Lie derivative on cochains needs a degree-1 section");
  }
  return contract<opposite(S)>(x, differential(target)) +
         differential(contract<opposite(S)>(x, target));
}

template <Side S>
typename Algebroid<S>::Section Algebroid<S>::lie_derivative(const Section& x,
                                                             const Section& target) const {
  if (!x.is_zero() && x.degree() != 1) {
    throw std::invalid_argument("Lie derivative needs a degree-1 section");
  }
  return schouten(x, target);
}

template <Side S>
typename Algebroid<S>::Section Algebroid<S>::boundary(const Section& u) const {
  u.require_compatible(zero_section());
  Section out = zero_section();
  for (int l = 1; l <= static_cast<int>(rank_); ++l) {
    const Section part = u.part(l);
    if (part.is_zero()) continue;
    Section t = sharp_inverse<opposite(S)>(differential(sharp<S>(part)));
    if (l % 2) t = -t;
    out += t;
  }
  return out;
}

template <Side S>
typename Algebroid<S>::Cochain Algebroid<S>::modular_cocycle() const {
  Cochain out = zero_cochain();
  const Section top = Section::top(rank_, coords_);
  for (std::size_t i = 0; i < rank_; ++i) {
    Polynomial c = divergence(anchor_[i]);
    c += schouten(generator(i), top).coefficient(full_set(rank_));
    out.add_term(singleton(i), c);
  }
  return out;
}

template <Side S>
ValidationReport Algebroid<S>::validate() const {
  ValidationReport report;
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t j = i + 1; j < rank_; ++j) {
      for (std::size_t k = j + 1; k < rank_; ++k) {
        const Section ei = generator(i), ej = generator(j), ek = generator(k);
        const Section jac = schouten(bracket(i, j), ek) + schouten(bracket(j, k), ei) +
                            schouten(bracket(k, i), ej);
        if (!jac.is_zero()) {
          report.jacobi_ok = false;
          report.witnesses.push_back({{"check", "jacobi"},
                                      {"indices", indices_text({i, j, k})},
                                      {"residual", jac.to_string()}});
        }
      }
    }
  }
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t j = i + 1; j < rank_; ++j) {
      VectorField lhs = anchor_of(bracket(i, j));
      const VectorField rhs = field_bracket(anchor_[i], anchor_[j]);
      for (std::size_t p = 0; p < lhs.size(); ++p) lhs[p] -= rhs[p];
      if (!is_zero(lhs)) {
        report.anchor_morphism_ok = false;
        report.witnesses.push_back({{"check", "anchor-morphism"},
                                    {"indices", indices_text({i, j})},
                                    {"residual", to_string(lhs)}});
      }
    }
  }
  return report;
}

template class Algebroid<Side::Primal>;
template class Algebroid<Side::Dual>;

}  // namespace manin

namespace manin {

Matrix identity_matrix(std::size_t n, const Coordinates& coords) {
  Matrix out(n, std::vector<Polynomial>(n, Polynomial(coords)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = Polynomial(coords, 1);
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("matrix size mismatch");
  const Coordinates& c = a.at(0).at(0).coordinates();
  Matrix out(n, std::vector<Polynomial>(n, Polynomial(c)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a[j][i];
  return out;
}

Matrix inverse_unitriangular(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return m;
  bool lower = true, upper = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("matrix is not square");
    if (!(m[i][i] == Polynomial(m[i][i].coordinates(), 1))) {
      throw std::invalid_argument("matrix diagonal must be 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i && !m[i][j].is_zero()) lower = false;
      if (j < i && !m[i][j].is_zero()) upper = false;
    }
  }
  if (!lower && !upper) throw std::invalid_argument("matrix is not triangular");
  // M = I + N with N nilpotent, so M^{-1} = sum_k (-N)^k
  const Coordinates& c = m[0][0].coordinates();
  Matrix neg = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) neg[i][j] = (i == j) ? Polynomial(c) : -m[i][j];
  Matrix out = identity_matrix(n, c), power = identity_matrix(n, c);
  for (std::size_t k = 1; k < n; ++k) {
    power = multiply(power, neg);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += power[i][j];
  }
  return out;
}

template <Side S>
Exterior<S> to_frame(const Exterior<S>& x, const Matrix& inverse) {
  // only degree-1 components are needed by the callers
  Exterior<S> out(x.rank(), x.coordinates());
  for (const auto& [set, c] : x.components()) {
    if (degree_of(set) != 1) throw std::invalid_argument("to_frame expects a degree-1 section");
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(set));
    for (std::size_t l = 0; l < x.rank(); ++l) {
      if (!inverse[k][l].is_zero()) out.add_term(singleton(l), c * inverse[k][l]);
    }
  }
  return out;
}

template <Side S>
Algebroid<S> change_frame(const Algebroid<S>& a, const Matrix& m) {
  const std::size_t n = a.rank();
  if (m.size() != n) throw std::invalid_argument("frame matrix has wrong size");
  const Matrix inv = inverse_unitriangular(m);
  std::vector<Exterior<S>> frame;
  for (std::size_t i = 0; i < n; ++i) {
    Exterior<S> v = a.zero_section();
    for (std::size_t j = 0; j < n; ++j) v.add_term(singleton(j), m[i][j]);
    frame.push_back(v);
  }
  Algebroid<S> out(n, a.coordinates());
  for (std::size_t i = 0; i < n; ++i) out.set_anchor(i, a.anchor_of(frame[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set_bracket(i, j, to_frame(a.schouten(frame[i], frame[j]), inv));
  return out;
}

template Exterior<Side::Primal> to_frame(const Exterior<Side::Primal>&, const Matrix&);
template Exterior<Side::Dual> to_frame(const Exterior<Side::Dual>&, const Matrix&);
template Algebroid<Side::Primal> change_frame(const Algebroid<Side::Primal>&, const Matrix&);
template Algebroid<Side::Dual> change_frame(const Algebroid<Side::Dual>&, const Matrix&);

}  // namespace manin
