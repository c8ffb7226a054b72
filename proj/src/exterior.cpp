#include "manin/exterior.hpp"

#include <sstream>
#include <stdexcept>

namespace manin {

std::vector<std::size_t> members(IndexSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

int wedge_sign(IndexSet a, IndexSet b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inversions = 0;
  for (IndexSet rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

// i_{eps^by} e_target, leftmost factor of `by` first.  Returns 0 when `by`
// is not a subset of `target`.
int contraction_sign(IndexSet by, IndexSet target) {
  if ((by & target) != by) return 0;
  int parity = 0;
  IndexSet current = target;
  for (IndexSet rest = by; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    parity += std::popcount(current & ((1u << i) - 1u));
    current &= ~(1u << i);
  }
  return (parity & 1) ? -1 : 1;
}

template <Side S>
const char* symbol() {
  return S == Side::Primal ? "e" : "eps";
}

}  // namespace

template <Side S>
Exterior<S>::Exterior(std::size_t rank, Coordinates coords)
    : rank_(rank), coords_(std::move(coords)) {
  if (rank > kMaxRank) throw std::invalid_argument("rank exceeds the supported maximum");
}

template <Side S>
Exterior<S> Exterior<S>::scalar(std::size_t rank, const Polynomial& f) {
  Exterior out(rank, f.coordinates());
  out.add_term(0, f);
  return out;
}

template <Side S>
Exterior<S> Exterior<S>::basis(std::size_t rank, const Coordinates& coords, IndexSet set) {
  return term(rank, set, Polynomial(coords, 1));
}

template <Side S>
Exterior<S> Exterior<S>::term(std::size_t rank, IndexSet set, const Polynomial& coefficient) {
  Exterior out(rank, coefficient.coordinates());
  out.add_term(set, coefficient);
  return out;
}

template <Side S>
Exterior<S> Exterior<S>::generator(std::size_t rank, const Coordinates& coords, std::size_t i) {
  if (i >= rank) throw std::out_of_range("generator index out of range");
  return basis(rank, coords, singleton(i));
}

template <Side S>
Exterior<S> Exterior<S>::top(std::size_t rank, const Coordinates& coords) {
  return basis(rank, coords, full_set(rank));
}

template <Side S>
std::optional<int> Exterior<S>::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int k = degree_of(terms_.begin()->first);
  for (const auto& [set, c] : terms_) {
    if (degree_of(set) != k) return std::nullopt;
  }
  return k;
}

template <Side S>
Exterior<S> Exterior<S>::part(int k) const {
  Exterior out(rank_, coords_);
  for (const auto& [set, c] : terms_) {
    if (degree_of(set) == k) out.terms_.emplace(set, c);
  }
  return out;
}

template <Side S>
Polynomial Exterior<S>::coefficient(IndexSet set) const {
  auto it = terms_.find(set);
  return it == terms_.end() ? Polynomial(coords_) : it->second;
}

template <Side S>
void Exterior<S>::add_term(IndexSet set, const Polynomial& coefficient) {
  if (!(coefficient.coordinates() == coords_)) {
    throw std::invalid_argument("coefficient coordinate list differs from the section's");
  }
  if ((set & ~full_set(rank_)) != 0) throw std::out_of_range("index outside the rank");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(set, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <Side S>
void Exterior<S>::check_shape(std::size_t rank, const Coordinates& coords) const {
  if (rank != rank_) throw std::invalid_argument("rank mismatch");
  if (!(coords == coords_)) throw std::invalid_argument("coordinate list mismatch");
}

template <Side S>
void Exterior<S>::require_compatible(const Exterior& other) const {
  check_shape(other.rank_, other.coords_);
}

template <Side S>
Exterior<S>& Exterior<S>::operator+=(const Exterior& other) {
  require_compatible(other);
  for (const auto& [set, c] : other.terms_) add_term(set, c);
  return *this;
}

template <Side S>
Exterior<S>& Exterior<S>::operator-=(const Exterior& other) {
  require_compatible(other);
  for (const auto& [set, c] : other.terms_) add_term(set, -c);
  return *this;
}

template <Side S>
Exterior<S>& Exterior<S>::operator*=(const Polynomial& f) {
  if (!(f.coordinates() == coords_)) throw std::invalid_argument("coordinate list mismatch");
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

template <Side S>
Exterior<S>& Exterior<S>::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
  } else {
    for (auto& [set, c] : terms_) c *= q;
  }
  return *this;
}

template <Side S>
Exterior<S> Exterior<S>::operator-() const {
  Exterior out(*this);
  for (auto& [set, c] : out.terms_) c = -c;
  return out;
}

template <Side S>
std::string Exterior<S>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [set, c] : terms_) {
    std::string basis;
    for (std::size_t i : members(set)) {
      if (!basis.empty()) basis += '^';
      basis += symbol<S>() + std::to_string(i + 1);
    }
    std::string coef = c.to_string();
    const bool compound = c.terms().size() > 1;
    bool negative = false;
    if (!compound && coef[0] == '-') {
      negative = true;
      coef.erase(0, 1);
    }
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << '-';
    first = false;
    if (basis.empty()) {
      os << (compound ? "(" + coef + ")" : coef);
    } else if (coef == "1") {
      os << basis;
    } else {
      os << (compound ? "(" + coef + ")" : coef) << '*' << basis;
    }
  }
  return os.str();
}

template <Side S>
Exterior<S> wedge(const Exterior<S>& a, const Exterior<S>& b) {
  a.require_compatible(b);
  Exterior<S> out(a.rank(), a.coordinates());
  for (const auto& [sa, ca] : a.components()) {
    for (const auto& [sb, cb] : b.components()) {
      const int sign = wedge_sign(sa, sb);
      if (sign == 0) continue;
      Polynomial c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(sa | sb, c);
    }
  }
  return out;
}

template <Side S>
Exterior<S> contract(const Exterior<opposite(S)>& by, const Exterior<S>& target) {
  target.require_compatible(by);
  Exterior<S> out(target.rank(), target.coordinates());
  for (const auto& [sb, cb] : by.components()) {
    for (const auto& [st, ct] : target.components()) {
      const int sign = contraction_sign(sb, st);
      if (sign == 0) continue;
      Polynomial c = cb * ct;
      if (sign < 0) c = -c;
      out.add_term(st & ~sb, c);
    }
  }
  return out;
}

template <Side S>
Polynomial pairing(const Exterior<opposite(S)>& a, const Exterior<S>& b) {
  b.require_compatible(a);
  Polynomial out(b.coordinates());
  for (const auto& [sa, ca] : a.components()) {
    auto it = b.components().find(sa);
    if (it != b.components().end()) out += ca * it->second;
  }
  return out;
}

template <Side S>
Exterior<opposite(S)> sharp(const Exterior<S>& x) {
  return contract<opposite(S)>(x, Exterior<opposite(S)>::top(x.rank(), x.coordinates()));
}

template <Side S>
Exterior<opposite(S)> sharp_inverse(const Exterior<S>& x) {
  // sharp<S> o sharp<opposite S> = (-1)^{k(n-1)} on degree k, and the sign
  // only depends on k(n-1) mod 2, which equals (n-k)(n-1) mod 2.
  Exterior<opposite(S)> y = sharp<S>(x);
  const std::size_t n = x.rank();
  if (n % 2 == 0) {
    Exterior<opposite(S)> out(n, x.coordinates());
    for (const auto& [set, c] : y.components()) {
      out.add_term(set, (degree_of(set) % 2) ? -c : c);
    }
    return out;
  }
  return y;
}

template <Side S>
std::vector<Exterior<S>> probe_family(std::size_t rank, const Coordinates& coords,
                                      unsigned max_coord_degree) {
  return section_probes<S>(rank, coords, max_coord_degree, 0, static_cast<int>(rank));
}

template <Side S>
std::vector<Exterior<S>> section_probes(std::size_t rank, const Coordinates& coords,
                                        unsigned max_coord_degree, int min_deg, int max_deg) {
  std::vector<Exterior<S>> out;
  const auto monomials = monomials_up_to(coords, max_coord_degree);
  std::vector<IndexSet> sets;
  for (int k = min_deg; k <= max_deg && k <= static_cast<int>(rank); ++k) {
    for (IndexSet s = 0; s <= full_set(rank); ++s) {
      if (degree_of(s) == k) sets.push_back(s);
    }
  }
  for (const auto& mono : monomials) {
    for (IndexSet s : sets) out.push_back(Exterior<S>::term(rank, s, mono));
  }
  return out;
}

#define MANIN_INSTANTIATE(S, T)                                                              \
  template class Exterior<S>;                                                                \
  template Exterior<S> wedge<S>(const Exterior<S>&, const Exterior<S>&);                     \
  template Exterior<S> contract<S>(const Exterior<T>&, const Exterior<S>&);                  \
  template Polynomial pairing<S>(const Exterior<T>&, const Exterior<S>&);                    \
  template Exterior<T> sharp<S>(const Exterior<S>&);                                         \
  template Exterior<T> sharp_inverse<S>(const Exterior<S>&);                                 \
  template std::vector<Exterior<S>> probe_family<S>(std::size_t, const Coordinates&, unsigned); \
  template std::vector<Exterior<S>> section_probes<S>(std::size_t, const Coordinates&,       \
                                                      unsigned, int, int);

MANIN_INSTANTIATE(Side::Primal, Side::Dual)
MANIN_INSTANTIATE(Side::Dual, Side::Primal)

#undef MANIN_INSTANTIATE

}  // namespace manin
