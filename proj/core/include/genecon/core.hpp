#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace genecon {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Relative tolerance used when accepting a matrix as symmetric.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Ordered measurement points (ages, temperatures) that define the trait
/// coordinates. At least two points, strictly increasing.
class TraitGrid {
 public:
  explicit TraitGrid(std::vector<double> points);

  Index size() const noexcept { return static_cast<Index>(points_.size()); }
  const std::vector<double>& points() const noexcept { return points_; }
  double operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }

  /// Consecutive differences t_j - t_{j-1}; size() - 1 entries.
  std::vector<double> gaps() const;
  double min_gap() const;

  friend bool operator==(const TraitGrid&, const TraitGrid&) = default;

 private:
  std::vector<double> points_;
};

/// Square symmetric matrix. Construction rejects non-finite entries and
/// asymmetry beyond kSymmetryTolerance * max(1, max|m_ij|), then stores the
/// exact average (M + M^T) / 2.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);

  static SymMatrix zero(Index dim);
  static SymMatrix identity(Index dim);
  static SymMatrix diagonal(const Vector& d);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Eigenvalues in descending order with orthonormal eigenvectors stored as
/// columns. The first component of each eigenvector with magnitude above
/// 1e-8 is positive.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
  // Some adjacent pair of eigenvalues is closer than 1e-9 * max|lambda|;
  // the individual eigenvectors of such a pair are not unique.
  bool degenerate = false;
  int sweeps = 0;

  Index dim() const noexcept { return values.size(); }
  Matrix reconstruct() const;
};

/// Cyclic Jacobi eigendecomposition. Deterministic: fixed sweep order,
/// stable descending sort, then the sign convention above.
EigenDecomposition symmetric_eigen(const SymMatrix& m);

/// Flips each column so its first component above `threshold` in magnitude
/// is positive.
void apply_sign_convention(Matrix& columns, double threshold = 1e-8);

class GMatrix;

/// Replaces eigenvalues below `tol` by exactly zero and rebuilds V diag(l+) V^T.
/// Eigenvectors are left untouched. When nothing is clipped the input
/// matrix is kept verbatim.
GMatrix clip_negative_eigenvalues(const SymMatrix& m, double tol = 0.0);

/// Same, reusing the cached decomposition; clip(clip(g)) == clip(g) exactly.
GMatrix clip_negative_eigenvalues(const GMatrix& g, double tol = 0.0);

/// Genetic covariance matrix with its cached eigendecomposition. Always
/// produced through clip_negative_eigenvalues, so it is PSD.
class GMatrix {
 public:
  const SymMatrix& matrix() const noexcept { return matrix_; }
  const EigenDecomposition& eig() const noexcept { return eig_; }
  const Vector& eigenvalues() const noexcept { return eig_.values; }
  const Matrix& eigenvectors() const noexcept { return eig_.vectors; }
  Index dim() const noexcept { return matrix_.dim(); }

  const std::optional<TraitGrid>& grid() const noexcept { return grid_; }
  GMatrix with_grid(TraitGrid grid) const;

  /// Indices (into the descending eigenvalue order) that were reset to 0.
  const std::vector<Index>& clipped_indices() const noexcept { return clipped_; }
  /// Eigenvalues as they were before clipping.
  const Vector& raw_eigenvalues() const noexcept { return raw_values_; }
  double clip_tolerance() const noexcept { return clip_tol_; }
  /// Number of strictly positive eigenvalues.
  Index rank() const;

 private:
  friend GMatrix clip_negative_eigenvalues(const GMatrix& g, double tol);
  friend GMatrix clip_negative_eigenvalues(const SymMatrix& m, double tol);

  SymMatrix matrix_;
  EigenDecomposition eig_;
  Vector raw_values_;
  std::optional<TraitGrid> grid_;
  std::vector<Index> clipped_;
  double clip_tol_ = 0.0;
};

}  // namespace genecon
