#pragma once

#include <string_view>

#include "genecon/core.hpp"
#include "genecon/json_io.hpp"

namespace genecon {

enum class MeasureKind { FirstDifference, SecondDifference, Sparseness, Custom };

std::string_view to_string(MeasureKind kind) noexcept;

/// Accepts "d1", "d2", "sparse" and the long names returned by to_string.
MeasureKind parse_measure_kind(std::string_view name);

/// Quadratic simplicity measure v -> v' L v with L nonnegative definite.
/// Larger scores mean simpler vectors; no unit vector scores above
/// score_upper_bound().
class SimplicityMeasure {
 public:
  SimplicityMeasure(SymMatrix lambda, double score_upper_bound, MeasureKind kind);

  const SymMatrix& lambda() const noexcept { return lambda_; }
  double score_upper_bound() const noexcept { return bound_; }
  MeasureKind kind() const noexcept { return kind_; }
  Index dim() const noexcept { return lambda_.dim(); }

 private:
  SymMatrix lambda_;
  double bound_;
  MeasureKind kind_;
};

/// Orthonormal basis of a subspace ordered from simplest to least simple.
/// `vectors` holds one basis vector per column.
struct SimplicityBasis {
  Matrix vectors;
  Vector scores;
  bool degenerate = false;

  Index size() const noexcept { return scores.size(); }
};

/// Tridiagonal L0 with v' L0 v = sum_j (v_j - v_{j-1})^2 / (t_j - t_{j-1}).
SymMatrix first_difference_penalty(const TraitGrid& grid);

/// 4 I - min_gap * L0. Scores lie in [0, 4]; constants score exactly 4.
SimplicityMeasure first_difference_measure(const TraitGrid& grid);

/// Riemann-sum approximation of the integral of (f'')^2. Each interior
/// second divided difference
///   D_j = 2 / (t_{j+1} - t_{j-1}) * [(v_{j+1} - v_j) / h_{j+1} - (v_j - v_{j-1}) / h_j]
/// is squared and weighted by (t_{j+1} - t_{j-1}) / 2. Needs K >= 3.
SymMatrix second_difference_penalty(const TraitGrid& grid);

/// lambda_max I - L0 for the second-difference penalty, so linear vectors
/// are the simplest.
SimplicityMeasure second_difference_measure(const TraitGrid& grid);

/// I - (1/K) 11'; the quadratic sparseness sum (v_i - mean v)^2.
SimplicityMeasure sparseness_measure(Index k);

/// Wraps a caller-supplied form. With `small_is_simple`, L is replaced by
/// lambda_max(L) I - L so that larger scores mean simpler.
SimplicityMeasure custom_measure(const SymMatrix& lambda, bool small_is_simple);

/// Builds the measure of the given kind on `grid` (Custom is rejected).
SimplicityMeasure make_measure(MeasureKind kind, const TraitGrid& grid);

/// v' L v for a unit vector v (|‖v‖ - 1| <= 1e-8, otherwise NotUnitVector).
double simplicity_score(const Vector& v, const SimplicityMeasure& m);

/// Two-pass modified Gram-Schmidt on the columns. Throws
/// RankDeficientSubspace when a column keeps less than 1e-12 of its norm.
Matrix orthonormalize(const Matrix& columns);

/// Simplicity basis of span(columns of `subspace_basis`): eigenvectors a_k of
/// P' L P in descending eigenvalue order, mapped back as P a_k.
SimplicityBasis simplicity_basis(const Matrix& subspace_basis, const SimplicityMeasure& m);

Json to_json(const SimplicityMeasure& m);
SimplicityMeasure measure_from_json(const Json& j);

}  // namespace genecon
