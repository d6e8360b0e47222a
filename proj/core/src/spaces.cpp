#include "genecon/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "genecon/error.hpp"
#include "genecon/parallel.hpp"

namespace genecon {

namespace {

void require_length(const Vector& v, Index k, const char* what) {
  if (v.size() != k) {
    std::ostringstream os;
    os << what << " has length " << v.size() << ", expected " << k;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

// Inverse of G + E through its eigendecomposition, guarded by the condition
// number.
Matrix phenotypic_inverse(const GMatrix& g, const SymMatrix& e) {
  if (e.dim() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "E is " + std::to_string(e.dim()) + "x" +
                                                  std::to_string(e.dim()) + ", G is " +
                                                  std::to_string(g.dim()) + "x" + std::to_string(g.dim()));
  }
  const EigenDecomposition eig = symmetric_eigen(SymMatrix(g.matrix().matrix() + e.matrix()));
  const Index k = eig.dim();
  if (k == 0) return Matrix(0, 0);
  const double top = eig.values(0);
  const double bottom = eig.values(k - 1);
  if (!(bottom > 0.0) || top / bottom > kMaxPhenotypicCondition) {
    std::ostringstream os;
    os << "G + E is singular or ill-conditioned (eigenvalues in [" << bottom << ", " << top
       << "])";
    throw Error(ErrorCode::SingularPhenotypicCovariance, os.str());
  }
  return eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
}

}  // namespace

Matrix SubspacePartition::basis() const {
  Matrix out(dim(), dim());
  out << model_vectors, null_basis.vectors;
  return out;
}

Vector SubspacePartition::scores() const {
  Vector out(model_scores.size() + null_basis.scores.size());
  out << model_scores, null_basis.scores;
  return out;
}

SubspacePartition partition(const GMatrix& g, Index J, const SimplicityMeasure& m) {
  const Index k = g.dim();
  if (m.dim() != k) {
    throw Error(ErrorCode::DimensionMismatch, "measure dimension " + std::to_string(m.dim()) +
                                                  " does not match G dimension " + std::to_string(k));
  }
  if (J < 0 || J > k) {
    throw Error(ErrorCode::InvalidArgument,
                "model dimension J=" + std::to_string(J) + " outside [0, " + std::to_string(k) + "]");
  }
  const Vector& lambda = g.eigenvalues();
  const Matrix& vectors = g.eigenvectors();

  SubspacePartition p;
  p.J = J;
  p.model_vectors = vectors.leftCols(J);
  p.model_eigenvalues = lambda.head(J);
  p.model_scores.resize(J);
  for (Index j = 0; j < J; ++j) p.model_scores(j) = simplicity_score(p.model_vectors.col(j), m);
  p.null_basis = simplicity_basis(vectors.rightCols(k - J), m);

  const Matrix& gm = g.matrix().matrix();
  p.model_response_norms = (gm * p.model_vectors).colwise().norm().transpose();
  p.null_response_norms = (gm * p.null_basis.vectors).colwise().norm().transpose();

  const double total = lambda.sum();
  if (total > 0.0) {
    const Matrix b = p.basis();
    p.proportions = (b.transpose() * gm * b).diagonal() / total;
    p.model_variance_fraction = lambda.head(J).sum() / total;
    p.null_variance_fraction = lambda.tail(k - J).sum() / total;
  } else {
    p.proportions = Vector::Zero(k);
    p.zero_variance = true;
  }

  if (J > 0 && J < k) {
    const double scale = std::max(1.0, std::abs(lambda(0)));
    p.eigen_gap_warning = lambda(J - 1) - lambda(J) <= 1e-9 * scale;
  }
  return p;
}

std::vector<SubspacePartition> sweep_partitions(const GMatrix& g, const SimplicityMeasure& m,
                                                unsigned threads) {
  const auto count = static_cast<std::size_t>(g.dim() + 1);
  std::vector<SubspacePartition> out(count);
  parallel_for(count, threads,
               [&](std::size_t j) { out[j] = partition(g, static_cast<Index>(j), m); });
  return out;
}

SelectionVectors response_to_selection(const GMatrix& g, const Vector& beta) {
  require_length(beta, g.dim(), "selection gradient");
  SelectionVectors out;
  out.gradient = beta;
  out.response = g.matrix().matrix() * beta;
  out.response_norm = out.response.norm();
  return out;
}

SelectionVectors breeders_response(const GMatrix& g, const SymMatrix& e, const Vector& s) {
  require_length(s, g.dim(), "selection differential");
  const Matrix inverse = phenotypic_inverse(g, e);
  SelectionVectors out;
  out.differential = s;
  out.gradient = inverse * s;
  out.response = g.matrix().matrix() * out.gradient;
  out.response_norm = out.response.norm();
  return out;
}

Matrix heritability_matrix(const GMatrix& g, const SymMatrix& e) {
  return g.matrix().matrix() * phenotypic_inverse(g, e);
}

VarianceProportions variance_proportions(const GMatrix& g, const Matrix& basis) {
  if (basis.rows() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "basis vectors have length " +
                                                  std::to_string(basis.rows()) + ", expected " +
                                                  std::to_string(g.dim()));
  }
  VarianceProportions out;
  out.norms = (g.matrix().matrix() * basis).colwise().norm().transpose();
  const double total = out.norms.sum();
  if (total > 0.0) {
    out.proportions = out.norms / total;
  } else {
    out.proportions = Vector::Zero(out.norms.size());
    out.zero_total = true;
  }
  return out;
}

double canonical_angle_distance(const Matrix& u, const Matrix& w) {
  if (u.rows() != w.rows() || u.cols() != w.cols()) {
    std::ostringstream os;
    os << "subspace bases are " << u.rows() << "x" << u.cols() << " and " << w.rows() << "x"
       << w.cols() << "; equal shapes are required";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  // sum of squared singular values of U'W equals its squared Frobenius norm
  const double cos2 = (u.transpose() * w).squaredNorm();
  return std::clamp(static_cast<double>(u.cols()) - cos2, 0.0, static_cast<double>(u.cols()));
}

}  // namespace genecon
