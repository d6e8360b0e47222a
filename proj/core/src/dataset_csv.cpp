#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "genecon/error.hpp"
#include "genecon/estimate.hpp"

namespace genecon {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

FamilyDataset read_dataset_csv(std::istream& in, const TraitGrid& grid, Design design,
                               std::optional<double> relatedness) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "dataset CSV is empty");
  const auto header = split_fields(line);
  if (header.size() < 3 || header[0] != "family" || header[1] != "individual") {
    throw Error(ErrorCode::Parse, "dataset CSV header must start with family,individual");
  }
  const auto k = static_cast<Index>(header.size() - 2);
  if (k != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset has " + std::to_string(k) +
                                                  " trait columns, grid has " +
                                                  std::to_string(grid.size()) + " points");
  }

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<std::vector<double>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (static_cast<Index>(fields.size()) != k + 2) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(k + 2));
    }
    auto [it, inserted] = rows.try_emplace(fields[0]);
    if (inserted) order.push_back(fields[0]);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(k));
    for (Index t = 0; t < k; ++t) values.push_back(parse_number(fields[static_cast<std::size_t>(t + 2)], line_no));
    it->second.push_back(std::move(values));
  }

  std::vector<Family> families;
  families.reserve(order.size());
  for (const auto& id : order) {
    const auto& members = rows[id];
    Family f{id, Matrix(static_cast<Index>(members.size()), k)};
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Index t = 0; t < k; ++t) f.records(static_cast<Index>(i), t) = members[i][static_cast<std::size_t>(t)];
    families.push_back(std::move(f));
  }
  return FamilyDataset(std::move(families), grid, design, relatedness);
}

FamilyDataset read_dataset_csv(const std::filesystem::path& path, const TraitGrid& grid,
                               Design design, std::optional<double> relatedness) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return read_dataset_csv(in, grid, design, relatedness);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void write_dataset_csv(std::ostream& out, const FamilyDataset& data) {
  out << "family,individual";
  for (Index t = 1; t <= data.dim(); ++t) out << ",t" << t;
  out << '\n';
  char buf[32];
  for (const auto& f : data.families()) {
    for (Index i = 0; i < f.records.rows(); ++i) {
      out << f.id << ',' << (i + 1);
      for (Index t = 0; t < f.records.cols(); ++t) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, f.records(i, t));
        out << ',' << std::string_view(buf, static_cast<std::size_t>(end - buf));
      }
      out << '\n';
    }
  }
}

}  // namespace genecon
