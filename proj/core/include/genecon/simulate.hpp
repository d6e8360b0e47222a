#pragma once

#include <cstdint>
#include <vector>

#include "genecon/core.hpp"
#include "genecon/estimate.hpp"
#include "genecon/simplicity.hpp"

namespace genecon {

/// Generative model y_ij = mu + g_ij + e_ij + eps_ij for individual i of
/// family j. The genetic value splits into a family effect shared by all
/// members and an individual deviation: Cov = G/4 and 3G/4 for half-sibs,
/// G/2 and G/2 for full-sibs, so Cov(g_ij) = G in both designs.
struct SimulationParams {
  TraitGrid grid;
  Vector mu;
  GMatrix g;
  SymMatrix e;
  double sigma2 = 0.0;
  Index families = 100;
  Index family_size = 20;
  Design design = Design::HalfSib;
  std::uint64_t seed = 0;

  /// Throws InvalidCovariance / DimensionMismatch / InvalidArgument.
  void validate() const;
};

/// Builds the GMatrix used for simulation; rejects covariances with an
/// eigenvalue below -1e-8 * max(1, lambda_max) instead of clipping them.
GMatrix simulation_covariance(const SymMatrix& g);

/// Draws one dataset with family f on substream (key, f) and individual i of
/// family f on substream (key, f, i).
FamilyDataset generate_dataset(const SimulationParams& p, std::uint64_t key);
/// generate_dataset(p, p.seed)
FamilyDataset generate_dataset(const SimulationParams& p);

struct ReplicateResult {
  Index index = 0;
  Vector raw_eigenvalues;  // of G_raw, descending
  bool negative_min_eigenvalue = false;
  std::vector<Index> clipped_indices;

  Matrix null_basis;         // simplicity basis of the estimated nearly null space
  Vector null_scores;
  Vector simplest;           // null_basis.col(0)
  Matrix null_pcs;           // trailing eigenvectors of G_hat, in eigenvalue order
  Vector simplest_response;  // G_true * simplest
  Matrix null_pc_responses;  // G_true * null_pcs
  double simplest_response_norm = 0.0;
  Vector null_pc_response_norms;

  double simplest_norm_under_estimate = 0.0;  // |G_hat * simplest|
  double estimate_lambda_next = 0.0;          // lambda_{J+1} of G_hat
  double canonical_distance = 0.0;            // to the true nearly null space
};

struct SummaryStat {
  double mean = 0.0;
  double sd = 0.0;  // sample SD, 0 for a single replicate
};

SummaryStat summarize(const std::vector<double>& values);

struct StudySummary {
  SimulationParams params;
  Index reps = 0;
  Index null_dim = 0;
  Index J = 0;
  MeasureKind measure = MeasureKind::FirstDifference;

  // Replicate vectors are sign-aligned to replicate 0, and so are the true
  // vectors below.
  std::vector<ReplicateResult> replicates{};

  Vector true_simplest{};
  Matrix true_null_pcs{};
  Vector true_simplest_response{};
  Matrix true_null_pc_responses{};

  SummaryStat simplest_response{};
  std::vector<SummaryStat> null_pc_response{};  // one per null PC
  double negative_fraction = 0.0;
  double smallest_eigenvalue = 0.0;
  SummaryStat canonical_distance{};
};

/// Replicate r estimates G from generate_dataset(p, derive(p.seed, {r})),
/// partitions it with J = K - null_dim, and evaluates the simplest null
/// vector and the null-space PCs as selection gradients under the true G.
StudySummary run_study(const SimulationParams& p, Index reps, Index null_dim,
                       const SimplicityMeasure& m, unsigned threads = 1);

}  // namespace genecon
