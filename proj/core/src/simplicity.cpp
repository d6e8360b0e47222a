#include "genecon/simplicity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "genecon/error.hpp"

namespace genecon {

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::FirstDifference: return "first-difference";
    case MeasureKind::SecondDifference: return "second-difference";
    case MeasureKind::Sparseness: return "sparseness";
    case MeasureKind::Custom: return "custom";
  }
  return "custom";
}

MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "d1" || name == "first-difference") return MeasureKind::FirstDifference;
  if (name == "d2" || name == "second-difference") return MeasureKind::SecondDifference;
  if (name == "sparse" || name == "sparseness") return MeasureKind::Sparseness;
  if (name == "custom") return MeasureKind::Custom;
  throw Error(ErrorCode::InvalidArgument,
              "unknown measure '" + std::string(name) + "' (expected d1, d2 or sparse)");
}

SimplicityMeasure::SimplicityMeasure(SymMatrix lambda, double score_upper_bound, MeasureKind kind)
    : lambda_(std::move(lambda)), bound_(score_upper_bound), kind_(kind) {
  if (!std::isfinite(bound_)) throw Error(ErrorCode::InvalidArgument, "score bound must be finite");
  if (lambda_.dim() == 0) return;
  const Vector ev = symmetric_eigen(lambda_).values;
  const double floor = -1e-9 * std::max(1.0, lambda_.frobenius_norm());
  if (ev(ev.size() - 1) < floor) {
    std::ostringstream os;
    os << "simplicity form must be nonnegative definite (min eigenvalue " << ev(ev.size() - 1)
       << ")";
    throw Error(ErrorCode::InvalidMatrix, os.str());
  }
  if (kind_ == MeasureKind::FirstDifference && (ev(0) > 4.0 + 1e-9 || ev(ev.size() - 1) < -1e-9)) {
    throw Error(ErrorCode::InvalidMatrix, "first-difference form has eigenvalues outside [0, 4]");
  }
}

SymMatrix first_difference_penalty(const TraitGrid& grid) {
  const Index k = grid.size();
  const auto gaps = grid.gaps();
  Matrix l0 = Matrix::Zero(k, k);
  for (Index j = 1; j < k; ++j) {
    const double w = 1.0 / gaps[static_cast<std::size_t>(j - 1)];
    l0(j - 1, j - 1) += w;
    l0(j, j) += w;
    l0(j - 1, j) -= w;
    l0(j, j - 1) -= w;
  }
  return SymMatrix(l0);
}

SimplicityMeasure first_difference_measure(const TraitGrid& grid) {
  const Index k = grid.size();
  Matrix lambda = 4.0 * Matrix::Identity(k, k) - grid.min_gap() * first_difference_penalty(grid).matrix();
  return SimplicityMeasure(SymMatrix(lambda), 4.0, MeasureKind::FirstDifference);
}

SymMatrix second_difference_penalty(const TraitGrid& grid) {
  const Index k = grid.size();
  if (k < 3) {
    throw Error(ErrorCode::GridTooSmall, "second differences need at least three grid points");
  }
  Matrix l0 = Matrix::Zero(k, k);
  for (Index j = 1; j + 1 < k; ++j) {
    const double left = grid[j] - grid[j - 1];
    const double right = grid[j + 1] - grid[j];
    const double span = grid[j + 1] - grid[j - 1];
    Eigen::Vector3d d;
    d << 2.0 / (span * left), -2.0 / span * (1.0 / left + 1.0 / right), 2.0 / (span * right);
    l0.block<3, 3>(j - 1, j - 1) += 0.5 * span * d * d.transpose();
  }
  return SymMatrix(l0);
}

SimplicityMeasure second_difference_measure(const TraitGrid& grid) {
  const SymMatrix l0 = second_difference_penalty(grid);
  const double top = symmetric_eigen(l0).values(0);
  const Index k = grid.size();
  return SimplicityMeasure(SymMatrix(top * Matrix::Identity(k, k) - l0.matrix()), top,
                           MeasureKind::SecondDifference);
}

SimplicityMeasure sparseness_measure(Index k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "sparseness measure needs K >= 2");
  Matrix lambda = Matrix::Identity(k, k) - Matrix::Constant(k, k, 1.0 / static_cast<double>(k));
  return SimplicityMeasure(SymMatrix(lambda), 1.0, MeasureKind::Sparseness);
}

SimplicityMeasure custom_measure(const SymMatrix& lambda, bool small_is_simple) {
  if (lambda.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty simplicity form");
  // Validates nonnegativity of the form as given.
  const SimplicityMeasure given(lambda, 0.0, MeasureKind::Custom);
  const Vector ev = symmetric_eigen(lambda).values;
  if (!small_is_simple) return SimplicityMeasure(lambda, ev(0), MeasureKind::Custom);
  const Index k = lambda.dim();
  SymMatrix flipped(ev(0) * Matrix::Identity(k, k) - lambda.matrix());
  return SimplicityMeasure(flipped, ev(0) - ev(k - 1), MeasureKind::Custom);
}

SimplicityMeasure make_measure(MeasureKind kind, const TraitGrid& grid) {
  switch (kind) {
    case MeasureKind::FirstDifference: return first_difference_measure(grid);
    case MeasureKind::SecondDifference: return second_difference_measure(grid);
    case MeasureKind::Sparseness: return sparseness_measure(grid.size());
    case MeasureKind::Custom: break;
  }
  throw Error(ErrorCode::InvalidArgument, "custom measures must be supplied as a matrix");
}

double simplicity_score(const Vector& v, const SimplicityMeasure& m) {
  if (v.size() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                  " does not match measure dimension " +
                                                  std::to_string(m.dim()));
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "simplicity scores are defined for unit vectors (norm " << norm << ")";
    throw Error(ErrorCode::NotUnitVector, os.str());
  }
  return v.dot(m.lambda().matrix() * v);
}

Matrix orthonormalize(const Matrix& columns) {
  Matrix q = columns;
  for (Index j = 0; j < q.cols(); ++j) {
    const double original = q.col(j).norm();
    if (original == 0.0 || !std::isfinite(original)) {
      throw Error(ErrorCode::RankDeficientSubspace, "column " + std::to_string(j) + " is zero");
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    const double remaining = q.col(j).norm();
    if (remaining < 1e-12 * original) {
      throw Error(ErrorCode::RankDeficientSubspace,
                  "column " + std::to_string(j) + " lies in the span of the previous columns");
    }
    q.col(j) /= remaining;
  }
  return q;
}

SimplicityBasis simplicity_basis(const Matrix& subspace_basis, const SimplicityMeasure& m) {
  if (subspace_basis.rows() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace vectors have length " +
                                                  std::to_string(subspace_basis.rows()) +
                                                  ", measure dimension is " + std::to_string(m.dim()));
  }
  SimplicityBasis out;
  if (subspace_basis.cols() == 0) {
    out.vectors = Matrix(m.dim(), 0);
    out.scores = Vector(0);
    return out;
  }

  const Matrix p = orthonormalize(subspace_basis);
  const Matrix reduced = p.transpose() * m.lambda().matrix() * p;
  const EigenDecomposition eig = symmetric_eigen(SymMatrix(0.5 * (reduced + reduced.transpose())));

  out.vectors = p * eig.vectors;
  apply_sign_convention(out.vectors);
  out.scores = eig.values;
  const double tie = 1e-9 * std::max(1.0, std::abs(out.scores(0)));
  for (Index k = 0; k + 1 < out.size(); ++k) {
    if (out.scores(k) - out.scores(k + 1) < tie) {
      out.degenerate = true;
      break;
    }
  }
  return out;
}

Json to_json(const SimplicityMeasure& m) {
  Json j = to_json(m.lambda());
  j["kind"] = std::string(to_string(m.kind()));
  j["score_upper_bound"] = m.score_upper_bound();
  return j;
}

SimplicityMeasure measure_from_json(const Json& j) {
  SymMatrix lambda = matrix_from_json(j);
  const MeasureKind kind =
      j.contains("kind") ? parse_measure_kind(j["kind"].get<std::string>()) : MeasureKind::Custom;
  double bound;
  if (j.contains("score_upper_bound")) {
    bound = j["score_upper_bound"].get<double>();
  } else if (kind == MeasureKind::FirstDifference) {
    bound = 4.0;
  } else {
    bound = lambda.dim() > 0 ? symmetric_eigen(lambda).values(0) : 0.0;
  }
  return SimplicityMeasure(std::move(lambda), bound, kind);
}

}  // namespace genecon
