#pragma once

#include <optional>
#include <vector>

#include "genecon/core.hpp"
#include "genecon/simplicity.hpp"

namespace genecon {

/// Split of trait space into the span of the top-J eigenvectors (model
/// space) and its orthogonal complement (nearly null space), the latter
/// expressed in its simplicity basis.
struct SubspacePartition {
  Index J = 0;
  Matrix model_vectors;        // K x J, principal components in order
  Vector model_eigenvalues;    // J
  Vector model_scores;         // simplicity score of each PC
  SimplicityBasis null_basis;  // K x (K - J), simplest first

  Vector model_response_norms;  // |G v| per model vector
  Vector null_response_norms;   // |G w| per null vector
  Vector proportions;           // K; b'Gb / trace(G), model vectors first

  // Share of trace(G) carried by each subspace.
  double model_variance_fraction = 0.0;
  double null_variance_fraction = 0.0;

  bool eigen_gap_warning = false;  // lambda_J and lambda_{J+1} tie
  bool zero_variance = false;

  Index dim() const noexcept { return model_vectors.rows(); }
  Index null_dim() const noexcept { return null_basis.size(); }
  /// K x K orthonormal basis: model vectors then null vectors.
  Matrix basis() const;
  /// Simplicity scores aligned with basis() columns.
  Vector scores() const;
};

struct SelectionVectors {
  Vector gradient;                    // beta
  std::optional<Vector> differential; // s = (G + E) beta, when E is known
  Vector response;                    // mu_o - mu_p
  double response_norm = 0.0;
};

struct VarianceProportions {
  Vector norms;
  Vector proportions;
  bool zero_total = false;
};

SubspacePartition partition(const GMatrix& g, Index J, const SimplicityMeasure& m);

/// partition() for J = 0..K, assembled in J order.
std::vector<SubspacePartition> sweep_partitions(const GMatrix& g, const SimplicityMeasure& m,
                                                unsigned threads = 1);

/// Response G beta.
SelectionVectors response_to_selection(const GMatrix& g, const Vector& beta);

/// Breeder's equation G (G + E)^{-1} s; also recovers beta = (G + E)^{-1} s.
SelectionVectors breeders_response(const GMatrix& g, const SymMatrix& e, const Vector& s);

/// G (G + E)^{-1}; not symmetric in general.
Matrix heritability_matrix(const GMatrix& g, const SymMatrix& e);

/// |G b| for each column b of `basis`, with each norm's share of their sum.
VarianceProportions variance_proportions(const GMatrix& g, const Matrix& basis);

/// Squared canonical-angle distance L - sum cos^2(theta_i) between the
/// column spans of two K x L orthonormal bases.
double canonical_angle_distance(const Matrix& u, const Matrix& w);

// Condition-number ceiling for G + E.
inline constexpr double kMaxPhenotypicCondition = 1e12;

}  // namespace genecon
