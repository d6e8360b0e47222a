#include "genecon/json_io.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

#include "genecon/error.hpp"

namespace genecon {

namespace {

double finite_number(const Json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::Parse, std::string(what) + " must be numeric");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::Parse, std::string(what) + " must be finite");
  return x;
}

}  // namespace

Json to_json(const SymMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.dim(); ++i)
    for (Index c = 0; c < m.dim(); ++c) entries.push_back(m(i, c));
  return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

Matrix general_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw Error(ErrorCode::Parse, R"(matrix JSON needs "dim" and "entries")");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 0) {
    throw Error(ErrorCode::Parse, R"("dim" must be a non-negative integer)");
  }
  const auto k = static_cast<Index>(j["dim"].get<long long>());
  const Json& entries = j["entries"];
  if (!entries.is_array()) throw Error(ErrorCode::Parse, R"("entries" must be an array)");
  if (static_cast<Index>(entries.size()) != k * k) {
    throw Error(ErrorCode::InvalidMatrix, "\"entries\" has " + std::to_string(entries.size()) +
                                              " values, expected dim*dim = " + std::to_string(k * k));
  }
  Matrix m(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index c = 0; c < k; ++c)
      m(i, c) = finite_number(entries[static_cast<std::size_t>(i * k + c)], "matrix entry");
  return m;
}

SymMatrix matrix_from_json(const Json& j) { return SymMatrix(general_matrix_from_json(j)); }

Json to_json(const TraitGrid& grid) { return Json{{"points", grid.points()}}; }

TraitGrid grid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw Error(ErrorCode::Parse, R"(grid JSON needs a "points" array)");
  }
  std::vector<double> pts;
  for (const auto& v : j["points"]) pts.push_back(finite_number(v, "grid point"));
  return TraitGrid(std::move(pts));
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a numeric array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = finite_number(j[i], "vector entry");
  return v;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename into " + path.string());
  }
}

}  // namespace genecon
