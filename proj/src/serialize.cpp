#include "json_io.hpp"

#include <charconv>

namespace manin {

namespace json_io {

namespace {

Polynomial poly_from(const Json& j, const Coordinates& coords, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_polynomial(j.get<std::string>(), coords);
    } catch (const ParseError& e) {
      std::string message = e.what();
      const std::string suffix = " at position " + std::to_string(e.position());
      if (message.size() >= suffix.size() &&
          message.compare(message.size() - suffix.size(), suffix.size(), suffix) == 0) {
        message.resize(message.size() - suffix.size());
      }
      throw ParseError(path + ": " + message, e.position());
    }
  }
  if (j.is_number_integer()) return Polynomial(coords, Rational(j.dump()));
  throw SchemaError(path, "expected a polynomial string");
}

std::size_t index_from(std::string_view text, std::size_t limit, const std::string& path) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1 || value > limit) {
    throw SchemaError(path, "index out of range 1.." + std::to_string(limit));
  }
  return value - 1;
}

std::pair<std::size_t, std::size_t> key_from(const std::string& key, std::size_t rank,
                                             const std::string& path) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw SchemaError(path, "bracket keys have the form \"i,j\"");
  const std::size_t i = index_from(std::string_view(key).substr(0, comma), rank, path);
  const std::size_t j = index_from(std::string_view(key).substr(comma + 1), rank, path);
  if (i >= j) throw SchemaError(path, "bracket keys must satisfy i < j");
  return {i, j};
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw SchemaError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::size_t natural_from(const Json& j, std::size_t limit, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  const auto v = j.get<unsigned long long>();
  if (v > limit) throw SchemaError(path, "at most " + std::to_string(limit) + " supported");
  return static_cast<std::size_t>(v);
}

template <Side S>
Algebroid<S> algebroid_from(const Json& j, std::size_t rank, const Coordinates& coords,
                            const std::string& path) {
  require_keys(j, {"anchor", "brackets"}, path);
  Algebroid<S> out(rank, coords);
  const std::size_t m = coords.size();
  if (j.contains("anchor")) {
    const Json& rows = j.at("anchor");
    const std::string rp = path + ".anchor";
    if (!rows.is_array() || rows.size() != rank) {
      throw SchemaError(rp, "expected " + std::to_string(rank) + " rows");
    }
    for (std::size_t i = 0; i < rank; ++i) {
      const std::string ip = rp + "[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || rows[i].size() != m) {
        throw SchemaError(ip, "expected " + std::to_string(m) + " entries");
      }
      VectorField field;
      for (std::size_t p = 0; p < m; ++p) {
        field.push_back(poly_from(rows[i][p], coords, ip + "[" + std::to_string(p) + "]"));
      }
      out.set_anchor(i, std::move(field));
    }
  }
  if (j.contains("brackets")) {
    const Json& br = j.at("brackets");
    const std::string bp = path + ".brackets";
    if (!br.is_object()) throw SchemaError(bp, "expected an object");
    for (const auto& [key, value] : br.items()) {
      const std::string kp = bp + "." + key;
      const auto [i, k] = key_from(key, rank, kp);
      if (!value.is_array() || value.size() != rank) {
        throw SchemaError(kp, "expected " + std::to_string(rank) + " components");
      }
      Exterior<S> section(rank, coords);
      for (std::size_t c = 0; c < rank; ++c) {
        section.add_term(singleton(c),
                         poly_from(value[c], coords, kp + "[" + std::to_string(c) + "]"));
      }
      out.set_bracket(i, k, section);
    }
  }
  return out;
}

template <Side S>
Json algebroid_json(const Algebroid<S>& a) {
  Json anchor = Json::array();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    Json row = Json::array();
    for (const auto& c : a.anchor(i)) row.push_back(c.to_string());
    anchor.push_back(std::move(row));
  }
  Json brackets = Json::object();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      const auto& b = a.bracket(i, j);
      if (b.is_zero()) continue;
      Json comps = Json::array();
      for (std::size_t k = 0; k < a.rank(); ++k) {
        comps.push_back(b.coefficient(singleton(k)).to_string());
      }
      brackets[std::to_string(i + 1) + "," + std::to_string(j + 1)] = std::move(comps);
    }
  }
  return Json{{"anchor", std::move(anchor)}, {"brackets", std::move(brackets)}};
}

}  // namespace

Json parse_document(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + " is not valid JSON: " + e.what(), e.byte ? e.byte - 1 : 0);
  }
}

Json to_json(const Witness& w) {
  Json out = Json::object();
  for (const auto& [k, v] : w) out[k] = v;
  return out;
}

Json to_json(const IdentityReport& r) {
  Json ids = Json::array();
  for (const auto& rec : r.records) {
    Json e{{"id", rec.id}, {"pass", rec.pass}};
    if (rec.witness) e["witness"] = to_json(*rec.witness);
    ids.push_back(std::move(e));
  }
  Json out{{"suite", r.suite}, {"pass", r.pass()}, {"identities", std::move(ids)}};
  if (r.f_tilde) out["f_tilde"] = r.f_tilde->to_string();
  return out;
}

Json to_json(const ScalarReport& r) {
  Json out{{"is_scalar", r.is_scalar}};
  if (r.is_scalar) out["f_tilde"] = r.f_tilde.to_string();
  if (r.witness) out["witness"] = to_json(*r.witness);
  out["expansion_holds"] = r.expansion_holds;
  if (r.expansion_witness) out["expansion_witness"] = to_json(*r.expansion_witness);
  return out;
}

Json to_json(const ValidationReport& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  return Json{{"pass", r.ok()},
              {"jacobi", r.jacobi_ok},
              {"anchor_morphism", r.anchor_morphism_ok},
              {"witnesses", std::move(ws)}};
}

Json to_json(const Pair& p) {
  Json out{{"base_dim", p.coordinates().size()},
           {"coordinates", p.coordinates().names()},
           {"rank", p.rank()},
           {"A", algebroid_json(p.A())},
           {"Astar", algebroid_json(p.Astar())}};
  out["frame"] = Json{{"s_density", to_string(p.frame().s_density)}};
  return out;
}

Multivector bivector_from(const Json& j, std::size_t rank, const Coordinates& coords,
                          const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object of \"i,j\" entries");
  Multivector out(rank, coords);
  for (const auto& [key, value] : j.items()) {
    const std::string kp = path + "." + key;
    const auto [i, k] = key_from(key, rank, kp);
    out.add_term(singleton(i) | singleton(k), poly_from(value, coords, kp));
  }
  return out;
}

Matrix matrix_from(const Json& j, std::size_t n, const Coordinates& coords,
                   const std::string& path) {
  if (!j.is_array() || j.size() != n) {
    throw SchemaError(path, "expected " + std::to_string(n) + " rows");
  }
  Matrix out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ip = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) {
      throw SchemaError(ip, "expected " + std::to_string(n) + " entries");
    }
    std::vector<Polynomial> row;
    for (std::size_t k = 0; k < n; ++k) {
      row.push_back(poly_from(j[i][k], coords, ip + "[" + std::to_string(k) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace json_io

using json_io::Json;

PairSpec parse_pair_spec(const std::string& text, bool require_astar) {
  const Json doc = json_io::parse_document(text, "pair document");
  json_io::require_keys(doc, {"base_dim", "coordinates", "rank", "A", "Astar", "frame"}, "");
  for (const char* key : {"base_dim", "rank", "A"}) {
    if (!doc.contains(key)) throw SchemaError(key, "missing");
  }
  if (require_astar && !doc.contains("Astar")) throw SchemaError("Astar", "missing");
  PairSpec spec;
  const std::size_t m = json_io::natural_from(doc.at("base_dim"), kMaxCoordinates, "base_dim");
  spec.rank = json_io::natural_from(doc.at("rank"), kMaxRank, "rank");
  if (doc.contains("coordinates")) {
    const Json& c = doc.at("coordinates");
    if (!c.is_array() || c.size() != m) {
      throw SchemaError("coordinates", "expected " + std::to_string(m) + " names");
    }
    std::vector<std::string> names;
    for (const auto& n : c) {
      if (!n.is_string()) throw SchemaError("coordinates", "names must be strings");
      names.push_back(n.get<std::string>());
    }
    try {
      spec.coords = Coordinates(std::move(names));
    } catch (const std::invalid_argument& e) {
      throw SchemaError("coordinates", e.what());
    }
  } else {
    spec.coords = Coordinates::standard(m);
  }
  spec.a = json_io::algebroid_from<Side::Primal>(doc.at("A"), spec.rank, spec.coords, "A");
  if (doc.contains("Astar")) {
    spec.astar =
        json_io::algebroid_from<Side::Dual>(doc.at("Astar"), spec.rank, spec.coords, "Astar");
  }
  if (doc.contains("frame")) {
    const Json& f = doc.at("frame");
    json_io::require_keys(f, {"s_density"}, "frame");
    if (f.contains("s_density")) {
      const Polynomial s = json_io::poly_from(f.at("s_density"), spec.coords, "frame.s_density");
      if (!s.is_constant() || s.is_zero()) {
        throw SchemaError("frame.s_density", "the density must be a nonzero constant");
      }
      spec.frame.s_density = s.constant_term();
    }
  }
  return spec;
}

Pair build_pair(const PairSpec& spec) {
  if (!spec.astar) throw SchemaError("Astar", "missing");
  return Pair(spec.a, *spec.astar, spec.frame);
}

std::string export_pair(const Pair& p) { return json_io::to_json(p).dump(2); }

Multivector parse_bivector(const std::string& text, std::size_t rank, const Coordinates& coords) {
  return json_io::bivector_from(json_io::parse_document(text, "bivector"), rank, coords, "lambda");
}

Matrix parse_matrix(const std::string& text, std::size_t n, const Coordinates& coords) {
  return json_io::matrix_from(json_io::parse_document(text, "matrix"), n, coords, "matrix");
}

std::string report_json(const IdentityReport& r) { return json_io::to_json(r).dump(2); }

}  // namespace manin
