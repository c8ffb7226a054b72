#pragma once

// JSON documents for pairs and reports.
//
// Pair document:
//   {"base_dim": m, "coordinates": ["x1", ...], "rank": n,
//    "A":     {"anchor": [[poly, ...], ...], "brackets": {"i,j": [poly, ...]}},
//    "Astar": {...},
//    "frame": {"s_density": "q"}}
// Indices are 1-based and bracket keys must have i < j.  Polynomials are
// strings (integers are accepted too).

#include <optional>
#include <stdexcept>
#include <string>

#include "manin/constructions.hpp"

namespace manin {

class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct PairSpec {
  Coordinates coords;
  std::size_t rank = 0;
  Algebroid<Side::Primal> a;
  std::optional<Algebroid<Side::Dual>> astar;
  Frame frame;
};

/// Throws SchemaError or ParseError.  With require_astar false the "Astar"
/// entry may be omitted.
PairSpec parse_pair_spec(const std::string& text, bool require_astar = true);

/// Throws StructureError when a side fails validation.
Pair build_pair(const PairSpec& spec);

std::string export_pair(const Pair& p);

/// {"i,j": poly} with i < j.
Multivector parse_bivector(const std::string& text, std::size_t rank, const Coordinates& coords);
/// [[poly, ...], ...], an n x n matrix.
Matrix parse_matrix(const std::string& text, std::size_t n, const Coordinates& coords);

std::string report_json(const IdentityReport& r);

}  // namespace manin
