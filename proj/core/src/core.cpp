#include "genecon/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "genecon/error.hpp"

namespace genecon {

TraitGrid::TraitGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::InvalidGrid, "a trait grid needs at least two points");
  }
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!std::isfinite(points_[j])) {
      throw Error(ErrorCode::InvalidGrid, "grid point " + std::to_string(j) + " is not finite");
    }
    if (j > 0 && !(points_[j] - points_[j - 1] > 0.0)) {
      throw Error(ErrorCode::InvalidGrid,
                  "grid points must be strictly increasing (index " + std::to_string(j) + ")");
    }
  }
}

std::vector<double> TraitGrid::gaps() const {
  std::vector<double> out(points_.size() - 1);
  for (std::size_t j = 1; j < points_.size(); ++j) out[j - 1] = points_[j] - points_[j - 1];
  return out;
}

double TraitGrid::min_gap() const {
  const auto g = gaps();
  return *std::min_element(g.begin(), g.end());
}

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw Error(ErrorCode::InvalidMatrix, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
  const double scale = std::max(1.0, m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0);
  const double asym = m.size() > 0 ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream os;
    os << "matrix is not symmetric (max |m_ij - m_ji| = " << asym << ")";
    throw Error(ErrorCode::InvalidMatrix, os.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(Index dim) { return SymMatrix(Matrix::Zero(dim, dim)); }

SymMatrix SymMatrix::identity(Index dim) { return SymMatrix(Matrix::Identity(dim, dim)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

Matrix EigenDecomposition::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.transpose();
}

void apply_sign_convention(Matrix& columns, double threshold) {
  for (Index k = 0; k < columns.cols(); ++k) {
    for (Index i = 0; i < columns.rows(); ++i) {
      const double x = columns(i, k);
      if (std::abs(x) > threshold) {
        if (x < 0.0) columns.col(k) = -columns.col(k);
        break;
      }
    }
  }
}

namespace {

constexpr int kMaxSweeps = 100;

bool has_close_eigenvalues(const Vector& values) {
  if (values.size() < 2) return false;
  const double scale = values.cwiseAbs().maxCoeff();
  for (Index k = 0; k + 1 < values.size(); ++k) {
    if (values(k) - values(k + 1) <= 1e-9 * scale) return true;
  }
  return false;
}

inline void rotate(Matrix& a, Index i, Index j, Index k, Index l, double s, double tau) {
  const double g = a(i, j);
  const double h = a(k, l);
  a(i, j) = g - s * (h + g * tau);
  a(k, l) = h + s * (g - h * tau);
}

}  // namespace

EigenDecomposition symmetric_eigen(const SymMatrix& m) {
  const Index n = m.dim();
  EigenDecomposition out;
  if (n == 0) {
    out.values = Vector(0);
    out.vectors = Matrix(0, 0);
    return out;
  }

  // Only the strict upper triangle of `a` is updated; the diagonal lives in d.
  Matrix a = m.matrix();
  Matrix v = Matrix::Identity(n, n);
  Vector d = a.diagonal();
  Vector b = d;
  Vector z = Vector::Zero(n);

  int sweep = 1;
  for (;; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n - 1; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) break;
    if (sweep > kMaxSweeps) {
      throw Error(ErrorCode::InvalidMatrix, "Jacobi iteration did not converge");
    }

    const double threshold = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        if (sweep > 4 && std::abs(d(p)) + g == std::abs(d(p)) &&
            std::abs(d(q)) + g == std::abs(d(q))) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::abs(a(p, q)) <= threshold) continue;

        double h = d(q) - d(p);
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = a(p, q) / h;
        } else {
          const double theta = 0.5 * h / a(p, q);
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        h = t * a(p, q);
        z(p) -= h;
        z(q) += h;
        d(p) -= h;
        d(q) += h;
        a(p, q) = 0.0;
        for (Index j = 0; j < p; ++j) rotate(a, j, p, j, q, s, tau);
        for (Index j = p + 1; j < q; ++j) rotate(a, p, j, j, q, s, tau);
        for (Index j = q + 1; j < n; ++j) rotate(a, p, j, q, j, s, tau);
        for (Index j = 0; j < n; ++j) rotate(v, j, p, j, q, s, tau);
      }
    }
    b += z;
    d = b;
    z.setZero();
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return d(i) > d(j); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = d(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  apply_sign_convention(out.vectors);
  out.sweeps = sweep - 1;

  out.degenerate = has_close_eigenvalues(out.values);
  return out;
}

GMatrix GMatrix::with_grid(TraitGrid grid) const {
  if (grid.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "grid has " + std::to_string(grid.size()) + " points but matrix is " +
                    std::to_string(dim()) + "x" + std::to_string(dim()));
  }
  GMatrix out = *this;
  out.grid_ = std::move(grid);
  return out;
}

Index GMatrix::rank() const { return (eig_.values.array() > 0.0).count(); }

namespace {

// Shared by both overloads: `values` are already in descending order.
bool clip_values(Vector& values, double tol, std::vector<Index>& clipped) {
  bool changed = false;
  for (Index k = 0; k < values.size(); ++k) {
    if (values(k) < tol && values(k) != 0.0) {
      values(k) = 0.0;
      clipped.push_back(k);
      changed = true;
    }
  }
  return changed;
}

void check_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidArgument, "clip tolerance must be finite and >= 0");
  }
}

}  // namespace

GMatrix clip_negative_eigenvalues(const SymMatrix& m, double tol) {
  check_tolerance(tol);
  GMatrix g;
  g.eig_ = symmetric_eigen(m);
  g.raw_values_ = g.eig_.values;
  g.clip_tol_ = tol;
  if (clip_values(g.eig_.values, tol, g.clipped_)) {
    g.matrix_ = SymMatrix(g.eig_.reconstruct());
    g.eig_.degenerate = has_close_eigenvalues(g.eig_.values);
  } else {
    g.matrix_ = m;
  }
  return g;
}

GMatrix clip_negative_eigenvalues(const GMatrix& g, double tol) {
  check_tolerance(tol);
  GMatrix out = g;
  out.clip_tol_ = std::max(g.clip_tol_, tol);
  std::vector<Index> fresh;
  if (clip_values(out.eig_.values, tol, fresh)) {
    out.clipped_.insert(out.clipped_.end(), fresh.begin(), fresh.end());
    std::sort(out.clipped_.begin(), out.clipped_.end());
    out.matrix_ = SymMatrix(out.eig_.reconstruct());
    out.eig_.degenerate = has_close_eigenvalues(out.eig_.values);
  }
  return out;
}

}  // namespace genecon
