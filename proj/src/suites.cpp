#include <algorithm>
#include <array>

#include "manin/bialgebroid.hpp"

namespace manin {

namespace {

// First failure wins; later probes are not recorded.
class Check {
 public:
  explicit Check(std::string id) : record_{std::move(id), true, std::nullopt} {}

  bool failed() const { return !record_.pass; }

  void fail(Witness w) {
    if (record_.pass) {
      record_.pass = false;
      record_.witness = std::move(w);
    }
  }

  template <class T>
  bool expect_zero(const T& residual, const Witness& context) {
    if (failed()) return false;
    if (residual.is_zero()) return true;
    Witness w = context;
    w.emplace_back("residual", residual.to_string());
    fail(std::move(w));
    return false;
  }

  IdentityRecord take() { return std::move(record_); }

 private:
  IdentityRecord record_;
};

template <class T>
std::pair<std::string, std::string> entry(const std::string& key, const T& value) {
  return {key, value.to_string()};
}

// Degree-wise sign (-1)^{k-1} applied to a homogeneous probe.
int leibniz_sign(int k) { return (k % 2 == 1) ? 1 : -1; }

template <Side S>
std::vector<Exterior<S>> low_probes(const AlgebroidPair<S>& p, unsigned coeff_degree,
                                    int min_deg, int max_deg) {
  return section_probes<S>(p.rank(), p.coordinates(), coeff_degree, min_deg, max_deg);
}

template <Side S>
IdentityRecord leibniz_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                              const std::string& id) {
  Check c(id);
  const auto& A = p.A();
  const auto probes = low_probes(p, cfg.max_coord_degree, 0, 2);
  std::vector<Exterior<S>> dprobes;
  dprobes.reserve(probes.size());
  for (const auto& u : probes) dprobes.push_back(p.d_star(u));
  for (std::size_t i = 0; i < probes.size() && !c.failed(); ++i) {
    const int k = *probes[i].degree();
    for (std::size_t j = 0; j < probes.size() && !c.failed(); ++j) {
      auto residual = p.d_star(A.schouten(probes[i], probes[j])) -
                      A.schouten(dprobes[i], probes[j]) -
                      A.schouten(probes[i], dprobes[j]) * Rational(leibniz_sign(k));
      c.expect_zero(residual, {entry("u", probes[i]), entry("v", probes[j])});
    }
  }
  return c.take();
}

template <Side S>
IdentityRecord derivation_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                                 const std::string& id) {
  Check c(id);
  const auto probes = low_probes(p, cfg.max_section_degree, 0, 2);
  std::vector<Exterior<S>> lap;
  for (const auto& u : probes) lap.push_back(p.laplacian(u));
  for (std::size_t i = 0; i < probes.size() && !c.failed(); ++i) {
    for (std::size_t j = 0; j < probes.size() && !c.failed(); ++j) {
      auto residual = p.laplacian(wedge(probes[i], probes[j])) - wedge(lap[i], probes[j]) -
                      wedge(probes[i], lap[j]);
      c.expect_zero(residual, {entry("u", probes[i]), entry("v", probes[j])});
    }
  }
  return c.take();
}

template <Side S>
IdentityRecord bracket_derivation_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                                         const std::string& id) {
  Check c(id);
  const auto& A = p.A();
  const auto probes = low_probes(p, cfg.max_section_degree, 0, 2);
  std::vector<Exterior<S>> lap;
  for (const auto& u : probes) lap.push_back(p.laplacian(u));
  for (std::size_t i = 0; i < probes.size() && !c.failed(); ++i) {
    for (std::size_t j = 0; j < probes.size() && !c.failed(); ++j) {
      auto residual = p.laplacian(A.schouten(probes[i], probes[j])) -
                      A.schouten(lap[i], probes[j]) - A.schouten(probes[i], lap[j]);
      c.expect_zero(residual, {entry("u", probes[i]), entry("v", probes[j])});
    }
  }
  return c.take();
}

template <Side S>
IdentityRecord modular_laplacian_record(const AlgebroidPair<S>& p,
                                        const std::vector<Exterior<S>>& probes,
                                        const std::string& id) {
  Check c(id);
  for (const auto& u : probes) {
    if (!c.expect_zero(p.laplacian(u) - p.modular_average(u), {entry("u", u)})) break;
  }
  return c.take();
}

// Laplacian of the opposite side on a function: d* then boundary* gives zero,
// so only boundary*(d f) survives.
template <Side S>
Polynomial opposite_laplacian(const AlgebroidPair<S>& p, const Polynomial& f) {
  return p.boundary_star(p.A().differential(f)).coefficient(0);
}

template <Side S>
IdentityRecord pairing_laplacian_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                                        const std::string& id) {
  Check c(id);
  const auto us = low_probes(p, cfg.max_section_degree, 1, 1);
  const auto thetas = section_probes<opposite(S)>(p.rank(), p.coordinates(),
                                                  cfg.max_section_degree, 1, 1);
  const auto swapped = p.swapped();
  std::vector<Exterior<S>> lap_u;
  for (const auto& u : us) lap_u.push_back(p.laplacian(u));
  std::vector<Exterior<opposite(S)>> lap_t;
  for (const auto& t : thetas) lap_t.push_back(swapped.laplacian(t));
  for (std::size_t j = 0; j < thetas.size() && !c.failed(); ++j) {
    for (std::size_t i = 0; i < us.size() && !c.failed(); ++i) {
      const Polynomial lhs = opposite_laplacian(p, pairing<S>(thetas[j], us[i]));
      const Polynomial residual =
          lhs - pairing<S>(lap_t[j], us[i]) - pairing<S>(thetas[j], lap_u[i]);
      c.expect_zero(residual, {entry("theta", thetas[j]), entry("u", us[i])});
    }
  }
  return c.take();
}

// The operator  eta -> L_{u o theta} eta - [L_u, L_theta] eta  on sections of
// the opposite side, with u o theta the Dorfman bracket of (u, 0) and (0, theta).
template <Side S>
class TraceOperator {
 public:
  TraceOperator(const AlgebroidPair<S>& p, const Exterior<S>& u, const Exterior<opposite(S)>& t)
      : p_(p), u_(u), t_(t) {
    SectionE<S> eu{u, p.zero_cochain()};
    SectionE<S> et{p.zero_section(), t};
    bracket_ = p.dorfman(eu, et);
  }

  Exterior<opposite(S)> operator()(const Exterior<opposite(S)>& eta) const {
    const auto& A = p_.A();
    const auto& As = p_.Astar();
    return p_.lie_on_cochains(bracket_, eta) - A.lie_derivative(u_, As.schouten(t_, eta)) +
           As.schouten(t_, A.lie_derivative(u_, eta));
  }

 private:
  const AlgebroidPair<S>& p_;
  Exterior<S> u_;
  Exterior<opposite(S)> t_;
  SectionE<S> bracket_;
};

template <Side S>
IdentityRecord trace_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                            const std::string& id) {
  Check c(id);
  const auto us = low_probes(p, cfg.max_section_degree, 1, 1);
  const auto thetas = section_probes<opposite(S)>(p.rank(), p.coordinates(),
                                                  cfg.max_section_degree, 1, 1);
  const auto fs = monomials_up_to(p.coordinates(), cfg.max_coord_degree);
  std::vector<Exterior<S>> dstar_u;
  for (const auto& u : us) dstar_u.push_back(p.d_star(u));
  for (std::size_t i = 0; i < us.size() && !c.failed(); ++i) {
    for (const auto& t : thetas) {
      if (c.failed()) break;
      const TraceOperator<S> op(p, us[i], t);
      Polynomial trace(p.coordinates());
      for (std::size_t k = 0; k < p.rank() && !c.failed(); ++k) {
        const auto eps = p.A().cogenerator(k);
        const auto image = op(eps);
        for (const auto& f : fs) {
          if (f.is_constant()) continue;
          auto residual = op(eps * f) - image * f;
          Witness w{entry("u", us[i]), entry("theta", t), entry("eta", eps * f),
                    {"check", "linearity"}};
          if (!c.expect_zero(residual, w)) break;
        }
        trace += pairing<S>(image, p.A().generator(k));
      }
      if (c.failed()) break;
      const Polynomial residual = trace - pairing<S>(p.d(t), dstar_u[i]) * Rational(2);
      c.expect_zero(residual, {entry("u", us[i]), entry("theta", t), {"check", "trace"}});
    }
  }
  return c.take();
}

template <Side S>
IdentityRecord low_degree_record(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                                 const std::string& id) {
  return modular_laplacian_record(p, low_probes(p, cfg.max_coord_degree, 0, 1), id);
}

// Records of one half of the equivalence suite, in the order (a, i, k, g, c, e).
template <Side S>
std::vector<IdentityRecord> theorem_half(const AlgebroidPair<S>& p, const ProbeConfig& cfg,
                                         const std::array<const char*, 6>& ids) {
  std::vector<IdentityRecord> out;
  out.push_back(leibniz_record(p, cfg, ids[0]));
  out.push_back(derivation_record(p, cfg, ids[1]));
  out.push_back(modular_laplacian_record(
      p, probe_family<S>(p.rank(), p.coordinates(), cfg.max_coord_degree), ids[2]));
  out.push_back(pairing_laplacian_record(p, cfg, ids[3]));
  out.push_back(trace_record(p, cfg, ids[4]));
  out.push_back(low_degree_record(p, cfg, ids[5]));
  return out;
}

template <Side S>
Polynomial top_coefficient(const Exterior<S>& x) {
  return x.coefficient(full_set(x.rank()));
}

template <Side S>
Exterior<S> dirac_commutator(const AlgebroidPair<S>& p, const SectionE<S>& e,
                             const Exterior<S>& w) {
  return p.dirac(p.clifford(e, w)) + p.clifford(e, p.dirac(w));
}

}  // namespace

template <Side S>
ScalarReport dirac_square(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  ScalarReport out;
  out.f_tilde = p.f_tilde();
  out.is_scalar = true;
  out.expansion_holds = true;
  for (const auto& u : probe_family<S>(p.rank(), p.coordinates(), cfg.max_coord_degree)) {
    const auto square = p.dirac(p.dirac(u));
    const auto scaled = u * p.f_tilde();
    if (out.is_scalar) {
      const auto residual = square - scaled;
      if (!residual.is_zero()) {
        out.is_scalar = false;
        out.witness = Witness{entry("probe", u), entry("residual", residual)};
      }
    }
    if (out.expansion_holds) {
      const auto residual = square - (p.modular_average(u) - p.laplacian(u)) - scaled;
      if (!residual.is_zero()) {
        out.expansion_holds = false;
        out.expansion_witness = Witness{entry("probe", u), entry("residual", residual)};
      }
    }
  }
  return out;
}

template <Side S>
IdentityReport leibniz_check(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  IdentityReport out;
  out.suite = "leibniz";
  out.records.push_back(leibniz_record(p, cfg, "thm-c/a"));
  return out;
}

template <Side S>
IdentityReport theorem_c_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  IdentityReport out;
  out.suite = "theorem-c";
  auto first = theorem_half(p, cfg, {"thm-c/a", "thm-c/i", "thm-c/k", "thm-c/g", "thm-c/c",
                                     "thm-c/e"});
  auto second = theorem_half(p.swapped(), cfg, {"thm-c/b", "thm-c/j", "thm-c/l", "thm-c/h",
                                                "thm-c/d", "thm-c/f"});
  out.records = std::move(first);
  for (auto& r : second) out.records.push_back(std::move(r));
  std::sort(out.records.begin(), out.records.end(),
            [](const IdentityRecord& a, const IdentityRecord& b) { return a.id < b.id; });
  out.f_tilde = p.f_tilde();
  return out;
}

template <Side S>
IdentityReport corollary_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  if (!leibniz_check(p, cfg).pass()) {
    throw PreconditionError("the pair is not a Lie bialgebroid");
  }
  IdentityReport out;
  out.suite = "corollaries";
  out.f_tilde = p.f_tilde();
  const auto swapped = p.swapped();
  const auto& A = p.A();
  const auto& As = p.Astar();
  const auto V = Exterior<S>::top(p.rank(), p.coordinates());
  const auto Omega = Exterior<opposite(S)>::top(p.rank(), p.coordinates());

  {
    Check c("cor-blistering/m");
    c.expect_zero(p.lie_X0(V) + p.lie_xi0(V), {{"check", "L_X0 V + L_xi0 V"}});
    out.records.push_back(c.take());
  }
  {
    Check c("cor-blistering/n");
    c.expect_zero(swapped.lie_X0(Omega) + swapped.lie_xi0(Omega),
                  {{"check", "L_X0 Omega + L_xi0 Omega"}});
    out.records.push_back(c.take());
  }
  {
    Check c("cor-blistering/o");
    const Polynomial lhs = p.boundary_star(p.xi0()).coefficient(0);
    const Polynomial rhs = p.boundary(p.X0()).coefficient(0);
    c.expect_zero(lhs - rhs, {{"boundary_star_xi0", lhs.to_string()},
                              {"boundary_X0", rhs.to_string()}});
    out.records.push_back(c.take());
  }
  const Polynomial div_x0 = p.density_derivative(A.anchor_of(p.X0()));
  const Polynomial div_xi0 = p.density_derivative(As.anchor_of(p.xi0()));
  {
    Check c("cor-blistering/p");
    c.expect_zero(div_x0 - div_xi0, {{"div_X0", div_x0.to_string()},
                                     {"div_xi0", div_xi0.to_string()}});
    out.records.push_back(c.take());
  }
  {
    auto r = derivation_record(p, cfg, "cor-brood/g14");
    out.records.push_back(std::move(r));
    out.records.push_back(bracket_derivation_record(p, cfg, "cor-brood/g15"));
  }
  const Polynomial four_f = p.f_tilde() * Rational(4);
  {
    Check c("prop-commissoner/q");
    const Polynomial value = top_coefficient(A.lie_derivative(p.X0(), Omega)) + div_x0;
    c.expect_zero(value - four_f, {{"value", value.to_string()}, {"4f", four_f.to_string()}});
    out.records.push_back(c.take());
  }
  {
    Check c("prop-commissoner/r");
    const Polynomial value = top_coefficient(As.lie_derivative(p.xi0(), V)) + div_xi0;
    c.expect_zero(value - four_f, {{"value", value.to_string()}, {"4f", four_f.to_string()}});
    out.records.push_back(c.take());
  }
  {
    // pi#(dx_q) = a((a*)^T dx_q), with components P[q][r].
    Check c("cor-extremal");
    const std::size_t m = p.coordinates().size();
    std::vector<std::vector<Polynomial>> P(m, std::vector<Polynomial>(m, Polynomial(p.coordinates())));
    for (std::size_t i = 0; i < p.rank(); ++i) {
      for (std::size_t q = 0; q < m; ++q) {
        for (std::size_t r = 0; r < m; ++r) P[q][r] += As.anchor(i)[q] * A.anchor(i)[r];
      }
    }
    for (std::size_t q = 0; q < m && !c.failed(); ++q) {
      for (std::size_t r = 0; r < m && !c.failed(); ++r) {
        c.expect_zero(P[q][r] + P[r][q],
                      {{"check", "skew"}, {"entry", std::to_string(q + 1) + "," +
                                                        std::to_string(r + 1)}});
      }
    }
    VectorField xs = zero_field(p.coordinates());
    for (std::size_t q = 0; q < m; ++q) {
      for (std::size_t r = 0; r < m; ++r) xs[q] += P[q][r].derivative(r);
    }
    VectorField rhs = As.anchor_of(p.xi0());
    const VectorField ax = A.anchor_of(p.X0());
    VectorField residual = zero_field(p.coordinates());
    for (std::size_t q = 0; q < m; ++q) {
      rhs[q] = (rhs[q] - ax[q]) * Rational(1, 2);
      residual[q] = xs[q] - rhs[q];
    }
    if (!c.failed() && !is_zero(residual)) {
      c.fail({{"X_s", to_string(xs)}, {"half_difference", to_string(rhs)}});
    }
    out.records.push_back(c.take());
  }
  return out;
}

template <Side S>
IdentityReport courant_axioms(const AlgebroidPair<S>& p,
                              const std::vector<CourantSample<S>>& samples,
                              const std::vector<Polynomial>& fs) {
  IdentityReport out;
  out.suite = "courant";
  Check g1("courant/g1"), g2("courant/g2"), g3("courant/g3"), g4("courant/g4"),
      g5("courant/g5"), g6("courant/g6"), dcheck("courant/D");
  for (const auto& s : samples) {
    const auto& [x, y, z] = s;
    const Witness xyz{entry("x", x), entry("y", y), entry("z", z)};
    const auto xy = p.dorfman(x, y);
    const auto xz = p.dorfman(x, z);
    if (!g1.failed()) {
      g1.expect_zero(p.dorfman(x, p.dorfman(y, z)) - p.dorfman(xy, z) - p.dorfman(y, xz), xyz);
    }
    if (!g2.failed()) {
      const VectorField lhs = p.anchor(xy);
      const VectorField rhs = field_bracket(p.anchor(x), p.anchor(y));
      VectorField residual = lhs;
      for (std::size_t q = 0; q < residual.size(); ++q) residual[q] -= rhs[q];
      if (!is_zero(residual)) {
        g2.fail({entry("x", x), entry("y", y), {"residual", to_string(residual)}});
      }
    }
    if (!g4.failed()) {
      g4.expect_zero(xy + p.dorfman(y, x) - p.D(p.metric(x, y)) * Polynomial(p.coordinates(), 2),
                     {entry("x", x), entry("y", y)});
    }
    if (!g6.failed()) {
      const Polynomial residual = apply_field(p.anchor(x), p.metric(y, z)) - p.metric(xy, z) -
                                  p.metric(y, xz);
      g6.expect_zero(residual, xyz);
    }
    for (const auto& f : fs) {
      if (!g3.failed()) {
        const Polynomial rf = apply_field(p.anchor(x), f);
        g3.expect_zero(p.dorfman(x, y * f) - xy * f - y * rf,
                       {entry("x", x), entry("y", y), entry("f", f)});
      }
      if (!g5.failed()) {
        g5.expect_zero(p.dorfman(p.D(f), x), {entry("f", f), entry("x", x)});
      }
      if (!dcheck.failed()) {
        const Polynomial residual =
            apply_field(p.anchor(x), f) - p.metric(p.D(f), x) * Rational(2);
        dcheck.expect_zero(residual, {entry("f", f), entry("x", x)});
      }
    }
  }
  for (Check* c : {&g1, &g2, &g3, &g4, &g5, &g6, &dcheck}) out.records.push_back(c->take());
  return out;
}

template <Side S>
std::vector<SectionE<S>> double_probes(const AlgebroidPair<S>& p, unsigned max_coord_degree) {
  std::vector<SectionE<S>> out;
  for (const auto& mono : monomials_up_to(p.coordinates(), max_coord_degree)) {
    for (std::size_t i = 0; i < p.rank(); ++i) {
      out.push_back({p.A().generator(i) * mono, p.zero_cochain()});
    }
    for (std::size_t j = 0; j < p.rank(); ++j) {
      out.push_back({p.zero_section(), p.A().cogenerator(j) * mono});
    }
  }
  return out;
}

template <Side S>
IdentityReport courant_suite(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  const auto basis = double_probes(p, 1);
  std::vector<CourantSample<S>> samples;
  samples.reserve(basis.size() * basis.size() * basis.size());
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      for (const auto& z : basis) samples.push_back({x, y, z});
    }
  }
  return courant_axioms(p, samples, monomials_up_to(p.coordinates(), cfg.max_coord_degree));
}

template <Side S>
IdentityReport generator_check(const AlgebroidPair<S>& p, const ProbeConfig& cfg) {
  require_exact_probes(cfg);
  IdentityReport out;
  out.suite = "generator";
  const auto ws = probe_family<S>(p.rank(), p.coordinates(), cfg.max_coord_degree);
  const auto fs = monomials_up_to(p.coordinates(), cfg.max_coord_degree);
  // The commutators below are operators of order at most one in w, so the
  // probes of coordinate degree <= 1 already decide them.
  const auto ws_low = probe_family<S>(p.rank(), p.coordinates(), 1);
  std::vector<Exterior<S>> dirac_w;
  for (const auto& w : ws) dirac_w.push_back(p.dirac(w));

  {
    Check c("generator/1");
    for (const auto& f : fs) {
      const auto Df = p.D(f);
      for (std::size_t i = 0; i < ws.size() && !c.failed(); ++i) {
        const auto lhs = p.dirac(ws[i] * f) - dirac_w[i] * f;
        c.expect_zero(lhs - p.clifford(Df, ws[i]), {entry("f", f), entry("w", ws[i])});
      }
    }
    out.records.push_back(c.take());
  }
  {
    Check c("generator/2");
    const auto es = double_probes(p, cfg.max_section_degree);
    for (const auto& e1 : es) {
      for (const auto& e2 : es) {
        if (c.failed()) break;
        const auto bracket = p.dorfman(e1, e2);
        for (const auto& w : ws_low) {
          const auto lhs = dirac_commutator(p, e1, p.clifford(e2, w)) -
                           p.clifford(e2, dirac_commutator(p, e1, w));
          if (!c.expect_zero(lhs - p.clifford(bracket, w),
                             {entry("e1", e1), entry("e2", e2), entry("w", w)})) {
            break;
          }
        }
      }
    }
    out.records.push_back(c.take());
  }
  {
    Check c("generator/3");
    const ScalarReport sq = dirac_square(p, cfg);
    if (!sq.is_scalar) c.fail(*sq.witness);
    out.records.push_back(c.take());
  }
  {
    // Read off the section s with [D, f] = s. on 1 and on each e_i, then
    // compare 2<s, e> with the anchor of e applied to f.
    Check c("generator/anchor");
    const auto one = p.scalar(Polynomial(p.coordinates(), 1));
    const auto es = double_probes(p, 0);
    for (const auto& f : fs) {
      if (c.failed()) break;
      SectionE<S> s{p.dirac(one * f) - p.dirac(one) * f, p.zero_cochain()};
      for (std::size_t i = 0; i < p.rank(); ++i) {
        const auto ei = p.A().generator(i);
        const auto image = p.dirac(ei * f) - p.dirac(ei) * f - wedge(s.vec, ei);
        s.cov += p.A().cogenerator(i) * image.coefficient(0);
      }
      for (const auto& e : es) {
        const Polynomial residual =
            p.metric(s, e) * Rational(2) - apply_field(p.anchor(e), f);
        if (!c.expect_zero(residual, {entry("f", f), entry("e", e)})) break;
      }
    }
    out.records.push_back(c.take());
  }
  out.f_tilde = p.f_tilde();
  return out;
}

#define MANIN_INSTANTIATE(S)                                                                 \
  template ScalarReport dirac_square<S>(const AlgebroidPair<S>&, const ProbeConfig&);      \
  template IdentityReport leibniz_check<S>(const AlgebroidPair<S>&, const ProbeConfig&);   \
  template IdentityReport theorem_c_suite<S>(const AlgebroidPair<S>&, const ProbeConfig&); \
  template IdentityReport corollary_suite<S>(const AlgebroidPair<S>&, const ProbeConfig&); \
  template IdentityReport courant_axioms<S>(const AlgebroidPair<S>&,                        \
                                            const std::vector<CourantSample<S>>&,           \
                                            const std::vector<Polynomial>&);                \
  template IdentityReport courant_suite<S>(const AlgebroidPair<S>&, const ProbeConfig&);   \
  template IdentityReport generator_check<S>(const AlgebroidPair<S>&, const ProbeConfig&); \
  template std::vector<SectionE<S>> double_probes<S>(const AlgebroidPair<S>&, unsigned);

MANIN_INSTANTIATE(Side::Primal)
MANIN_INSTANTIATE(Side::Dual)

#undef MANIN_INSTANTIATE

}  // namespace manin
