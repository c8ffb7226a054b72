#pragma once

#include <json.hpp>

#include "manin/serialize.hpp"

namespace manin::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const Witness& w);
Json to_json(const IdentityReport& r);
Json to_json(const ScalarReport& r);
Json to_json(const ValidationReport& r);
Json to_json(const Pair& p);

Json parse_document(const std::string& text, const std::string& what);
Multivector bivector_from(const Json& j, std::size_t rank, const Coordinates& coords,
                          const std::string& path);
Matrix matrix_from(const Json& j, std::size_t n, const Coordinates& coords,
                   const std::string& path);

}  // namespace manin::json_io
