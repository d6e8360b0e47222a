#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "genecon/core.hpp"

namespace genecon {

using Json = nlohmann::json;

// {"dim": K, "entries": [row-major K*K reals]}
Json to_json(const SymMatrix& m);
SymMatrix matrix_from_json(const Json& j);
Matrix general_matrix_from_json(const Json& j);

// {"points": [t1..tK]}
Json to_json(const TraitGrid& grid);
TraitGrid grid_from_json(const Json& j);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace genecon
