#include "genecon/report.hpp"

#include <cmath>
#include <cstdio>

#include "genecon/rng.hpp"

#ifndef GENECON_VERSION
#define GENECON_VERSION "0.0.0"
#endif

namespace genecon {

std::string_view software_version() noexcept { return GENECON_VERSION; }

Json to_json(const Provenance& p) {
  Json j;
  j["software"] = "genecon";
  j["version"] = std::string(software_version());
  j["inputs"] = p.inputs;
  j["tolerances"] = {
      {"clip", p.clip_tolerance},
      {"symmetry", kSymmetryTolerance},
      {"unit_vector", 1e-8},
      {"rank_deficiency", 1e-12},
      {"eigen_tie", 1e-9},
      {"max_condition", kMaxPhenotypicCondition},
  };
  j["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
  j["measure_kind"] = p.measure_kind ? Json(*p.measure_kind) : Json(nullptr);
  j["design"] = p.design ? Json(*p.design) : Json(nullptr);
  j["relatedness"] = p.relatedness ? Json(*p.relatedness) : Json(nullptr);
  if (!p.notes.empty()) j["notes"] = p.notes;
  return j;
}

namespace {

Json index_list(const std::vector<Index>& v) {
  Json out = Json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

Json columns(const Matrix& m) {
  Json out = Json::array();
  for (Index c = 0; c < m.cols(); ++c) out.push_back(to_json(Vector(m.col(c))));
  return out;
}

Json stat(const SummaryStat& s) { return Json{{"mean", s.mean}, {"sd", s.sd}}; }

}  // namespace

Json partition_report(const SubspacePartition& part, const GMatrix& g, const SimplicityMeasure& m,
                      const Provenance& provenance) {
  Json j;
  j["provenance"] = to_json(provenance);
  j["K"] = part.dim();
  j["J"] = part.J;
  if (g.grid()) j["grid"] = g.grid()->points();
  j["measure"] = {{"kind", std::string(to_string(m.kind()))},
                  {"score_upper_bound", m.score_upper_bound()}};
  j["g_matrix"] = to_json(g.matrix());
  j["eigenvalues"] = to_json(g.eigenvalues());
  j["raw_eigenvalues"] = to_json(g.raw_eigenvalues());
  j["clipped_indices"] = index_list(g.clipped_indices());
  j["rank"] = g.rank();

  Json vectors = Json::array();
  for (Index k = 0; k < part.J; ++k) {
    vectors.push_back({
        {"role", "model"},
        {"rank", k + 1},
        {"coordinates", to_json(Vector(part.model_vectors.col(k)))},
        {"eigenvalue", part.model_eigenvalues(k)},
        {"simplicity_score", part.model_scores(k)},
        {"response_norm", part.model_response_norms(k)},
        {"proportion", part.proportions(k)},
    });
  }
  for (Index k = 0; k < part.null_dim(); ++k) {
    vectors.push_back({
        {"role", "null"},
        {"rank", k + 1},
        {"coordinates", to_json(Vector(part.null_basis.vectors.col(k)))},
        {"simplicity_score", part.null_basis.scores(k)},
        {"response_norm", part.null_response_norms(k)},
        {"proportion", part.proportions(part.J + k)},
    });
  }
  j["vectors"] = std::move(vectors);
  j["model_variance_fraction"] = part.model_variance_fraction;
  j["null_variance_fraction"] = part.null_variance_fraction;
  j["warnings"] = {
      {"eigen_gap_tie", part.eigen_gap_warning},
      {"degenerate_eigenvalues", g.eig().degenerate},
      {"degenerate_simplicity_scores", part.null_basis.degenerate},
      {"zero_variance", part.zero_variance},
  };
  return j;
}

Json study_report(const StudySummary& s, const Provenance& provenance) {
  const SimulationParams& p = s.params;
  Json j;
  j["provenance"] = to_json(provenance);
  j["provenance"]["rng"] = kRngDescription;
  j["provenance"]["normal_draws"] = kNormalDescription;
  j["provenance"]["genetic_model"] =
      p.design == Design::HalfSib
          ? "family effect ~ N(0, G/4) shared within family, individual deviation ~ N(0, 3G/4)"
          : "family effect ~ N(0, G/2) shared within family, individual deviation ~ N(0, G/2)";
  j["params"] = {
      {"grid", p.grid.points()},
      {"mu", to_json(p.mu)},
      {"G", to_json(p.g.matrix())},
      {"E", to_json(p.e)},
      {"sigma2", p.sigma2},
      {"N_f", p.families},
      {"n", p.family_size},
      {"design", std::string(to_string(p.design))},
      {"relatedness", relatedness_coefficient(p.design)},
      {"seed", p.seed},
  };
  j["reps"] = s.reps;
  j["null_dim"] = s.null_dim;
  j["J"] = s.J;
  j["measure"] = std::string(to_string(s.measure));

  Json pcs = Json::array();
  for (const auto& st : s.null_pc_response) pcs.push_back(stat(st));
  j["aggregate"] = {
      {"simplest_response_norm", stat(s.simplest_response)},
      {"null_pc_response_norms", std::move(pcs)},
      {"negative_min_eigenvalue_fraction", s.negative_fraction},
      {"smallest_raw_eigenvalue", s.smallest_eigenvalue},
      {"canonical_distance", stat(s.canonical_distance)},
  };
  j["truth"] = {
      {"simplest", to_json(s.true_simplest)},
      {"simplest_response", to_json(s.true_simplest_response)},
      {"null_pcs", columns(s.true_null_pcs)},
      {"null_pc_responses", columns(s.true_null_pc_responses)},
      {"eigenvalues", to_json(p.g.eigenvalues())},
  };

  Json reps = Json::array();
  for (const auto& r : s.replicates) {
    reps.push_back({
        {"index", r.index},
        {"raw_eigenvalues", to_json(r.raw_eigenvalues)},
        {"negative_min_eigenvalue", r.negative_min_eigenvalue},
        {"clipped_indices", index_list(r.clipped_indices)},
        {"simplest", to_json(r.simplest)},
        {"null_scores", to_json(r.null_scores)},
        {"simplest_response", to_json(r.simplest_response)},
        {"simplest_response_norm", r.simplest_response_norm},
        {"null_pcs", columns(r.null_pcs)},
        {"null_pc_responses", columns(r.null_pc_responses)},
        {"null_pc_response_norms", to_json(r.null_pc_response_norms)},
        {"simplest_norm_under_estimate", r.simplest_norm_under_estimate},
        {"estimate_lambda_next", r.estimate_lambda_next},
        {"canonical_distance", r.canonical_distance},
    });
  }
  j["replicates"] = std::move(reps);
  return j;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

std::string format_sig6(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace genecon
