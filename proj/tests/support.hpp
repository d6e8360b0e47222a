#pragma once

#include <cstdint>
#include <random>

#include "genecon/core.hpp"

namespace genecon::testing {

// Hand-rolled generators for property tests. Each test seeds its own engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Index index(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(engine_);
  }

  Vector normal_vector(Index k) {
    Vector v(k);
    for (Index i = 0; i < k; ++i) v(i) = normal();
    return v;
  }

  Vector unit_vector(Index k) {
    Vector v;
    do {
      v = normal_vector(k);
    } while (v.norm() < 1e-6);
    return v.normalized();
  }

  Matrix normal_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) m.col(j) = normal_vector(rows);
    return m;
  }

  // Orthonormal K x L basis of a uniformly random subspace.
  Matrix orthonormal(Index k, Index l) {
    Eigen::HouseholderQR<Matrix> qr(normal_matrix(k, l));
    return qr.householderQ() * Matrix::Identity(k, l);
  }

  // PSD matrix with the given rank and eigenvalues up to `scale`.
  Matrix psd(Index k, Index rank, double scale = 1.0) {
    const Matrix q = orthonormal(k, k);
    Vector d = Vector::Zero(k);
    for (Index i = 0; i < rank; ++i) d(i) = uniform(0.0, scale);
    return q * d.asDiagonal() * q.transpose();
  }

  Matrix symmetric(Index k) {
    const Matrix a = normal_matrix(k, k);
    return 0.5 * (a + a.transpose());
  }

  // Strictly increasing grid with gaps in [lo, hi].
  std::vector<double> grid(Index k, double lo = 0.5, double hi = 3.0) {
    std::vector<double> t(static_cast<std::size_t>(k));
    t[0] = uniform(-5.0, 5.0);
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + uniform(lo, hi);
    return t;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace genecon::testing
