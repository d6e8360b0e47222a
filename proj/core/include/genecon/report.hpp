#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "genecon/core.hpp"
#include "genecon/json_io.hpp"
#include "genecon/simplicity.hpp"
#include "genecon/simulate.hpp"
#include "genecon/spaces.hpp"

namespace genecon {

std::string_view software_version() noexcept;

/// Where a report came from. Embedded verbatim in every JSON and SVG output.
struct Provenance {
  Json inputs = Json::object();
  double clip_tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> measure_kind;
  std::optional<std::string> design;
  std::optional<double> relatedness;
  Json notes = Json::object();
};

Json to_json(const Provenance& p);

/// Full-precision partition report: every basis vector with its coordinates,
/// eigenvalue or simplicity score, response norm and variance proportion,
/// plus the model/null fractions and any warnings.
Json partition_report(const SubspacePartition& part, const GMatrix& g, const SimplicityMeasure& m,
                      const Provenance& provenance);

/// Aggregate statistics plus per-replicate arrays.
Json study_report(const StudySummary& summary, const Provenance& provenance);

/// Serialized form used for every JSON file: two-space indent, trailing newline.
std::string dump_report(const Json& report);

/// %.6g with negative zero printed as "0". Used for every number in SVG output.
std::string format_sig6(double x);

struct FigureSpec {
  SubspacePartition partition;
  TraitGrid grid;
  std::string title;
  std::string x_label = "trait coordinate";
  double score_upper_bound = 4.0;
  int panel_width = 240;
  int panel_height = 150;
  std::optional<Json> provenance{};
};

/// Basis-vector panels (model vectors solid, null vectors dashed, each
/// numbered), a (proportion, score) scatter and a model/null variance bar
/// chart. The first row holds PC1 and the simplest null vector.
std::string render_partition_figure(const FigureSpec& spec);

struct StudyFigureSpec {
  std::string title = "Simulation study";
  std::string x_label = "trait coordinate";
  int panel_width = 240;
  int panel_height = 150;
  std::optional<Json> provenance{};
};

/// Overlays of every replicate's simplest null vector and null-space PCs
/// (true vectors drawn heavier), plus the matching response vectors.
std::string render_study_figure(const StudySummary& summary, const StudyFigureSpec& spec = {});

}  // namespace genecon
