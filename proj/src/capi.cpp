#include "manin/manin.h"

#include <cstring>
#include <functional>

#include "json_io.hpp"

struct manin_pair {
  manin::Pair pair;
};

namespace {

using manin::json_io::Json;
using manin::json_io::to_json;

char* copy_out(const Json& j) {
  const std::string text = j.dump(2) + "\n";
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void emit(char** out_json, const Json& j) {
  if (out_json) *out_json = copy_out(j);
}

Json error_doc(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

// Runs body and maps library exceptions onto status codes.
manin_status guarded(char** out_json, const std::function<manin_status(Json&)>& body) {
  if (out_json) *out_json = nullptr;
  Json doc;
  manin_status status;
  try {
    status = body(doc);
  } catch (const manin::StructureError& e) {
    doc = error_doc("structure", e.what());
    doc["error"]["A"] = to_json(e.a_report());
    doc["error"]["Astar"] = to_json(e.astar_report());
    status = MANIN_INPUT_ERROR;
  } catch (const manin::ConstructionError& e) {
    doc = error_doc("construction", e.what());
    doc["error"]["witness"] = to_json(e.witness());
    status = MANIN_INPUT_ERROR;
  } catch (const manin::SchemaError& e) {
    doc = error_doc("schema", e.what());
    doc["error"]["path"] = e.path();
    status = MANIN_INPUT_ERROR;
  } catch (const manin::ParseError& e) {
    doc = error_doc("parse", e.what());
    doc["error"]["position"] = e.position();
    status = MANIN_INPUT_ERROR;
  } catch (const manin::PreconditionError& e) {
    doc = error_doc("precondition", e.what());
    status = MANIN_INPUT_ERROR;
  } catch (const std::invalid_argument& e) {
    doc = error_doc("input", e.what());
    status = MANIN_INPUT_ERROR;
  } catch (const std::exception& e) {
    doc = error_doc("internal", e.what());
    status = MANIN_INTERNAL_ERROR;
  }
  emit(out_json, doc);
  return status;
}

manin::ProbeConfig config(unsigned probe_degree) {
  manin::ProbeConfig cfg;
  cfg.max_coord_degree = probe_degree;
  manin::require_exact_probes(cfg);
  return cfg;
}

manin_status status_of(bool pass) { return pass ? MANIN_OK : MANIN_PROPERTY_FAILED; }

// Dirac square and Leibniz report; both must agree for a pass.
bool check_into(const manin::Pair& p, const manin::ProbeConfig& cfg, Json& doc) {
  const manin::ScalarReport sq = manin::dirac_square(p, cfg);
  const manin::IdentityReport leib = manin::leibniz_check(p, cfg);
  doc["probe_degree"] = cfg.max_coord_degree;
  doc["dirac_square"] = to_json(sq);
  doc["leibniz"] = to_json(leib);
  doc["agree"] = sq.is_scalar == leib.pass();
  if (sq.is_scalar) doc["f_tilde"] = sq.f_tilde.to_string();
  return sq.is_scalar && leib.pass() && sq.expansion_holds;
}

manin::Rational rational_arg(const char* text, const char* name) {
  if (!text) throw manin::SchemaError(name, "missing");
  try {
    return manin::parse_rational(text);
  } catch (const manin::ParseError& e) {
    throw manin::SchemaError(name, std::string("not a rational number: ") + text);
  }
}

std::string required(const char* text, const char* name) {
  if (!text) throw manin::SchemaError(name, "missing");
  return text;
}

}  // namespace

extern "C" {

const char* manin_version(void) { return "0.1.0"; }

void manin_string_free(char* s) { delete[] s; }

void manin_pair_free(manin_pair* p) { delete p; }

manin_status manin_validate(const char* spec_json, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    const manin::PairSpec spec = manin::parse_pair_spec(required(spec_json, "spec"));
    const auto ra = spec.a.validate();
    const auto rs = spec.astar->validate();
    doc["command"] = "validate";
    doc["pass"] = ra.ok() && rs.ok();
    doc["A"] = to_json(ra);
    doc["Astar"] = to_json(rs);
    return ra.ok() && rs.ok() ? MANIN_OK : MANIN_INPUT_ERROR;
  });
}

manin_status manin_pair_load(const char* spec_json, manin_pair** out, char** out_json) {
  if (out) *out = nullptr;
  return guarded(out_json, [&](Json& doc) {
    if (!out) throw std::invalid_argument("no output handle");
    const manin::PairSpec spec = manin::parse_pair_spec(required(spec_json, "spec"));
    *out = new manin_pair{manin::build_pair(spec)};
    doc = Json{{"loaded", true}, {"rank", spec.rank}, {"base_dim", spec.coords.size()}};
    return MANIN_OK;
  });
}

manin_status manin_pair_export(const manin_pair* p, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    if (!p) throw std::invalid_argument("null pair");
    doc = to_json(p->pair);
    return MANIN_OK;
  });
}

manin_status manin_check(const manin_pair* p, unsigned probe_degree, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    if (!p) throw std::invalid_argument("null pair");
    const auto cfg = config(probe_degree);
    doc["command"] = "check";
    return status_of(check_into(p->pair, cfg, doc));
  });
}

manin_status manin_identities(const manin_pair* p, const char* suite, unsigned probe_degree,
                              char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    if (!p) throw std::invalid_argument("null pair");
    const auto cfg = config(probe_degree);
    const std::string name = required(suite, "suite");
    manin::IdentityReport r;
    if (name == "theorem-c") {
      r = manin::theorem_c_suite(p->pair, cfg);
    } else if (name == "corollaries") {
      try {
        r = manin::corollary_suite(p->pair, cfg);
      } catch (const manin::PreconditionError& e) {
        doc = Json{{"suite", "corollaries"}, {"pass", false}, {"identities", Json::array()},
                   {"refused", e.what()}};
        return MANIN_PROPERTY_FAILED;
      }
    } else if (name == "courant") {
      r = manin::courant_suite(p->pair, cfg);
    } else if (name == "generator") {
      r = manin::generator_check(p->pair, cfg);
    } else {
      throw manin::SchemaError("suite", "unknown suite " + name);
    }
    doc = to_json(r);
    return status_of(r.pass());
  });
}

manin_status manin_modular(const manin_pair* p, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    if (!p) throw std::invalid_argument("null pair");
    const manin::Pair& pr = p->pair;
    const bool x0_closed = pr.d_star(pr.X0()).is_zero();
    const bool xi0_closed = pr.d(pr.xi0()).is_zero();
    doc["command"] = "modular";
    doc["X0"] = pr.X0().to_string();
    doc["xi0"] = pr.xi0().to_string();
    doc["f_tilde"] = pr.f_tilde().to_string();
    doc["d_star_X0_vanishes"] = x0_closed;
    doc["d_xi0_vanishes"] = xi0_closed;
    return status_of(x0_closed && xi0_closed);
  });
}

manin_status manin_example_a_plus_b(const char* a, const char* b, const char* c, const char* d,
                                    unsigned probe_degree, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    const auto cfg = config(probe_degree);
    const manin::Pair p = manin::a_plus_b(rational_arg(a, "a"), rational_arg(b, "b"),
                                          rational_arg(c, "c"), rational_arg(d, "d"));
    doc["command"] = "example a-plus-b";
    doc["pair"] = to_json(p);
    return status_of(check_into(p, cfg, doc));
  });
}

manin_status manin_example_poisson(unsigned dim, const char* pi_json, unsigned probe_degree,
                                   char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    const auto cfg = config(probe_degree);
    if (dim > manin::kMaxCoordinates) throw manin::SchemaError("dim", "too many coordinates");
    const manin::Coordinates coords = manin::Coordinates::standard(dim);
    const manin::Multivector pi = manin::json_io::bivector_from(
        manin::json_io::parse_document(required(pi_json, "pi"), "pi"), dim, coords, "pi");
    const manin::PoissonData data{coords, manin::bivector_matrix(pi)};
    const manin::Pair p = manin::poisson_double(data);
    const manin::IdentityReport h = manin::poisson_homology_check(data, cfg);
    doc["command"] = "example poisson";
    doc["pair"] = to_json(p);
    const bool ok = check_into(p, cfg, doc);
    doc["poisson"] = to_json(h);
    return status_of(ok && h.pass());
  });
}

manin_status manin_example_exact(const char* spec_json, const char* lambda_json,
                                 unsigned probe_degree, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    const auto cfg = config(probe_degree);
    const manin::PairSpec spec = manin::parse_pair_spec(required(spec_json, "spec"), false);
    const auto ra = spec.a.validate();
    if (!ra.ok()) throw manin::StructureError("A is not a Lie algebroid", ra, {});
    const manin::Multivector lambda = manin::json_io::bivector_from(
        manin::json_io::parse_document(required(lambda_json, "lambda"), "lambda"), spec.rank,
        spec.coords, "lambda");
    const manin::ExactPair e = manin::exact_from_bivector(spec.a, lambda);
    const manin::IdentityReport r = manin::exact_identities(e, cfg);
    doc["command"] = "example exact";
    doc["triangular"] = e.triangular;
    doc["pair"] = to_json(e.pair);
    const bool ok = check_into(e.pair, cfg, doc);
    doc["exact"] = to_json(r);
    return status_of(ok && r.pass());
  });
}

manin_status manin_example_pn(const char* spec_json, const char* n_json, const char* lambda_json,
                              unsigned k, unsigned l, unsigned probe_degree, char** out_json) {
  return guarded(out_json, [&](Json& doc) {
    const auto cfg = config(probe_degree);
    if (k > 3 || l > 3) throw manin::SchemaError("k,l", "hierarchy indices above 3 are not supported");
    const manin::PairSpec spec = manin::parse_pair_spec(required(spec_json, "spec"), false);
    const auto ra = spec.a.validate();
    if (!ra.ok()) throw manin::StructureError("A is not a Lie algebroid", ra, {});
    const manin::PoissonNijenhuis pn{
        spec.a,
        manin::json_io::matrix_from(manin::json_io::parse_document(required(n_json, "n"), "n"),
                                    spec.rank, spec.coords, "n"),
        manin::json_io::bivector_from(
            manin::json_io::parse_document(required(lambda_json, "lambda"), "lambda"), spec.rank,
            spec.coords, "lambda")};
    const manin::Pair p = manin::pn_hierarchy(pn, k, l);
    const manin::IdentityReport r = manin::pn_identities(pn, cfg);
    doc["command"] = "example pn";
    doc["k"] = k;
    doc["l"] = l;
    doc["pair"] = to_json(p);
    const bool ok = check_into(p, cfg, doc);
    doc["pn"] = to_json(r);
    return status_of(ok && r.pass());
  });
}

}  // extern "C"
