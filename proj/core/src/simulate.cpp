#include "genecon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "genecon/error.hpp"
#include "genecon/parallel.hpp"
#include "genecon/rng.hpp"
#include "genecon/spaces.hpp"

namespace genecon {

namespace {

double psd_floor(const Vector& values) {
  const double top = values.size() > 0 ? std::abs(values(0)) : 0.0;
  return -1e-8 * std::max(1.0, top);
}

void require_psd(const Vector& values, const char* name) {
  if (values.size() > 0 && values(values.size() - 1) < psd_floor(values)) {
    std::ostringstream os;
    os << name << " is not positive semidefinite (min eigenvalue " << values(values.size() - 1)
       << ")";
    throw Error(ErrorCode::InvalidCovariance, os.str());
  }
}

// Columns scale eigenvectors by sqrt(max(lambda, 0)), so L L' reproduces the
// (clipped) covariance even when it is rank deficient.
Matrix psd_factor(const Vector& values, const Matrix& vectors) {
  return vectors * values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

double shared_fraction(Design design) { return design == Design::HalfSib ? 0.25 : 0.5; }

}  // namespace

GMatrix simulation_covariance(const SymMatrix& g) {
  const EigenDecomposition eig = symmetric_eigen(g);
  require_psd(eig.values, "G");
  return clip_negative_eigenvalues(g, 0.0);
}

void SimulationParams::validate() const {
  const Index k = grid.size();
  auto dims = [k](Index got, const char* what) {
    if (got != k) {
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " +
                                                    std::to_string(got) + ", grid has " +
                                                    std::to_string(k) + " points");
    }
  };
  dims(mu.size(), "mu");
  dims(g.dim(), "G");
  dims(e.dim(), "E");
  if (!mu.allFinite()) throw Error(ErrorCode::InvalidArgument, "mu has non-finite entries");
  require_psd(g.raw_eigenvalues(), "G");
  require_psd(symmetric_eigen(e).values, "E");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw Error(ErrorCode::InvalidCovariance, "sigma2 must be finite and >= 0");
  }
  if (families < 2) throw Error(ErrorCode::InvalidArgument, "N_f must be at least 2");
  if (family_size < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
}

FamilyDataset generate_dataset(const SimulationParams& p, std::uint64_t key) {
  p.validate();
  const Index k = p.grid.size();
  const double shared = shared_fraction(p.design);
  const Matrix g_factor = psd_factor(p.g.eigenvalues(), p.g.eigenvectors());
  const Matrix family_factor = std::sqrt(shared) * g_factor;
  const Matrix individual_factor = std::sqrt(1.0 - shared) * g_factor;
  const EigenDecomposition e_eig = symmetric_eigen(p.e);
  const Matrix e_factor = psd_factor(e_eig.values, e_eig.vectors);
  const double sigma = std::sqrt(p.sigma2);

  auto draw = [k](CounterRng& rng) {
    Vector z(k);
    for (Index t = 0; t < k; ++t) z(t) = rng.normal();
    return z;
  };

  const int width = static_cast<int>(std::to_string(p.families).size());
  std::vector<Family> families;
  families.reserve(static_cast<std::size_t>(p.families));
  for (Index f = 0; f < p.families; ++f) {
    const auto fu = static_cast<std::uint64_t>(f);
    CounterRng family_rng(CounterRng::derive(key, {fu}));
    const Vector family_effect = family_factor * draw(family_rng);

    std::string id = std::to_string(f + 1);
    id.insert(0, static_cast<std::size_t>(width) - id.size(), '0');
    Family fam{"f" + id, Matrix(p.family_size, k)};
    for (Index i = 0; i < p.family_size; ++i) {
      CounterRng rng(CounterRng::derive(key, {fu, static_cast<std::uint64_t>(i)}));
      const Vector w = individual_factor * draw(rng);
      const Vector env = e_factor * draw(rng);
      const Vector eps = sigma * draw(rng);
      fam.records.row(i) = (p.mu + family_effect + w + env + eps).transpose();
    }
    families.push_back(std::move(fam));
  }
  return FamilyDataset(std::move(families), p.grid, p.design);
}

FamilyDataset generate_dataset(const SimulationParams& p) { return generate_dataset(p, p.seed); }

SummaryStat summarize(const std::vector<double>& values) {
  SummaryStat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

ReplicateResult run_replicate(const SimulationParams& p, Index r, Index J,
                              const SimplicityMeasure& m, const Matrix& true_null) {
  const Index k = p.grid.size();
  const FamilyDataset data =
      generate_dataset(p, CounterRng::derive(p.seed, {static_cast<std::uint64_t>(r)}));
  const VarianceComponents vc = anova_estimate(data);
  const SubspacePartition part = partition(vc.g_hat, J, m);
  const Matrix& truth = p.g.matrix().matrix();

  ReplicateResult out;
  out.index = r;
  out.raw_eigenvalues = vc.raw_eigenvalues();
  out.negative_min_eigenvalue = out.raw_eigenvalues(k - 1) < 0.0;
  out.clipped_indices = vc.clipped_indices();
  out.null_basis = part.null_basis.vectors;
  out.null_scores = part.null_basis.scores;
  out.simplest = out.null_basis.col(0);
  out.null_pcs = vc.g_hat.eigenvectors().rightCols(k - J);
  out.simplest_response = truth * out.simplest;
  out.null_pc_responses = truth * out.null_pcs;
  out.simplest_response_norm = out.simplest_response.norm();
  out.null_pc_response_norms = out.null_pc_responses.colwise().norm().transpose();
  out.simplest_norm_under_estimate = (vc.g_hat.matrix().matrix() * out.simplest).norm();
  out.estimate_lambda_next = vc.g_hat.eigenvalues()(J);
  out.canonical_distance = canonical_angle_distance(out.null_pcs, true_null);
  return out;
}

void align_to(Vector& v, const Vector& reference, Vector* companion) {
  if (v.dot(reference) < 0.0) {
    v = -v;
    if (companion) *companion = -*companion;
  }
}

}  // namespace

StudySummary run_study(const SimulationParams& p, Index reps, Index null_dim,
                       const SimplicityMeasure& m, unsigned threads) {
  p.validate();
  const Index k = p.grid.size();
  if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be at least 1");
  if (null_dim < 1 || null_dim > k - 1) {
    throw Error(ErrorCode::InvalidArgument, "null_dim must lie in [1, " + std::to_string(k - 1) +
                                                "], got " + std::to_string(null_dim));
  }
  if (m.dim() != k) {
    throw Error(ErrorCode::DimensionMismatch, "measure dimension does not match the grid");
  }

  const Index J = k - null_dim;
  const SubspacePartition true_part = partition(p.g, J, m);

  StudySummary s{.params = p};
  s.reps = reps;
  s.null_dim = null_dim;
  s.J = J;
  s.measure = m.kind();
  s.true_simplest = true_part.null_basis.vectors.col(0);
  s.true_null_pcs = p.g.eigenvectors().rightCols(null_dim);

  s.replicates.resize(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    try {
      s.replicates[r] = run_replicate(p, static_cast<Index>(r), J, m, s.true_null_pcs);
    } catch (const Error& e) {
      throw Error(e.code(), "replicate " + std::to_string(r) + ": " + e.detail());
    }
  });

  // Sign alignment against replicate 0.
  const ReplicateResult& ref = s.replicates.front();
  for (std::size_t r = 1; r < s.replicates.size(); ++r) {
    auto& rep = s.replicates[r];
    align_to(rep.simplest, ref.simplest, &rep.simplest_response);
    rep.null_basis.col(0) = rep.simplest;
    for (Index c = 0; c < null_dim; ++c) {
      Vector v = rep.null_pcs.col(c);
      Vector resp = rep.null_pc_responses.col(c);
      align_to(v, ref.null_pcs.col(c), &resp);
      rep.null_pcs.col(c) = v;
      rep.null_pc_responses.col(c) = resp;
    }
  }
  align_to(s.true_simplest, ref.simplest, nullptr);
  for (Index c = 0; c < null_dim; ++c) {
    Vector v = s.true_null_pcs.col(c);
    align_to(v, ref.null_pcs.col(c), nullptr);
    s.true_null_pcs.col(c) = v;
  }
  s.true_simplest_response = p.g.matrix().matrix() * s.true_simplest;
  s.true_null_pc_responses = p.g.matrix().matrix() * s.true_null_pcs;

  std::vector<double> simplest, distance;
  std::vector<std::vector<double>> pcs(static_cast<std::size_t>(null_dim));
  Index negative = 0;
  s.smallest_eigenvalue = ref.raw_eigenvalues(k - 1);
  for (const auto& rep : s.replicates) {
    simplest.push_back(rep.simplest_response_norm);
    distance.push_back(rep.canonical_distance);
    for (Index c = 0; c < null_dim; ++c)
      pcs[static_cast<std::size_t>(c)].push_back(rep.null_pc_response_norms(c));
    if (rep.negative_min_eigenvalue) ++negative;
    s.smallest_eigenvalue = std::min(s.smallest_eigenvalue, rep.raw_eigenvalues(k - 1));
  }
  s.simplest_response = summarize(simplest);
  s.canonical_distance = summarize(distance);
  for (const auto& v : pcs) s.null_pc_response.push_back(summarize(v));
  s.negative_fraction = static_cast<double>(negative) / static_cast<double>(reps);
  return s;
}

}  // namespace genecon
