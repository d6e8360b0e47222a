#include "genecon/estimate.hpp"

#include <cmath>
#include <sstream>

#include "genecon/error.hpp"

namespace genecon {

std::string_view to_string(Design design) noexcept {
  return design == Design::HalfSib ? "halfsib" : "fullsib";
}

Design parse_design(std::string_view name) {
  if (name == "halfsib" || name == "half-sib") return Design::HalfSib;
  if (name == "fullsib" || name == "full-sib") return Design::FullSib;
  throw Error(ErrorCode::InvalidArgument,
              "unknown design '" + std::string(name) + "' (expected halfsib or fullsib)");
}

double relatedness_coefficient(Design design) noexcept {
  return design == Design::HalfSib ? 4.0 : 2.0;
}

namespace {

void validate_families(const std::vector<Family>& families, Index k, double relatedness) {
  if (!(relatedness > 0.0) || !std::isfinite(relatedness)) {
    throw Error(ErrorCode::InvalidArgument, "relatedness coefficient must be positive");
  }
  if (families.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 2 families, got " + std::to_string(families.size()));
  }
  const Index n = families.front().records.rows();
  for (const auto& f : families) {
    if (f.records.rows() != n) {
      std::ostringstream os;
      os << "family '" << f.id << "' has " << f.records.rows() << " members, family '"
         << families.front().id << "' has " << n;
      throw Error(ErrorCode::UnbalancedDesign, os.str());
    }
    if (f.records.cols() != k) {
      std::ostringstream os;
      os << "family '" << f.id << "' records have " << f.records.cols() << " traits, expected "
         << k;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    if (!f.records.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "family '" + f.id + "' has non-finite values");
    }
  }
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 2 individuals per family, got " + std::to_string(n));
  }
}

}  // namespace

FamilyDataset::FamilyDataset(std::vector<Family> families, TraitGrid grid, Design design,
                             std::optional<double> relatedness)
    : families_(std::move(families)),
      grid_(std::move(grid)),
      design_(design),
      relatedness_(relatedness.value_or(relatedness_coefficient(design))) {
  validate_families(families_, grid_.size(), relatedness_);
}

VarianceComponents anova_estimate(const FamilyDataset& data, double clip_tol) {
  VarianceComponents out = anova_estimate(data.families(), data.relatedness(), clip_tol);
  out.g_hat = out.g_hat.with_grid(data.grid());
  return out;
}

VarianceComponents anova_estimate(const std::vector<Family>& families, double relatedness,
                                  double clip_tol) {
  if (families.empty()) throw Error(ErrorCode::InsufficientData, "need at least 2 families, got 0");
  const Index k = families.front().records.cols();
  if (k < 1) throw Error(ErrorCode::DimensionMismatch, "records have no traits");
  validate_families(families, k, relatedness);
  const Index nf = static_cast<Index>(families.size());
  const Index n = families.front().records.rows();

  Matrix family_means(nf, k);
  Matrix within = Matrix::Zero(k, k);
  for (Index j = 0; j < nf; ++j) {
    const Matrix& y = families[static_cast<std::size_t>(j)].records;
    const Eigen::RowVectorXd mean = y.colwise().mean();
    family_means.row(j) = mean;
    const Matrix dev = y.rowwise() - mean;
    within.noalias() += dev.transpose() * dev;
  }
  const Eigen::RowVectorXd grand = family_means.colwise().mean();
  const Matrix between_dev = family_means.rowwise() - grand;

  const auto nd = static_cast<double>(n);
  const auto nfd = static_cast<double>(nf);
  const Matrix msb = nd * (between_dev.transpose() * between_dev) / (nfd - 1.0);
  const Matrix msw = within / (nfd * (nd - 1.0));
  const Matrix family = (msb - msw) / nd;

  VarianceComponents out{
      .between_ms = SymMatrix(msb),
      .within_ms = SymMatrix(msw),
      .family_component = SymMatrix(family),
      .g_hat_raw = SymMatrix(relatedness * family),
      .g_hat = {},
      .relatedness = relatedness,
  };
  out.g_hat = clip_negative_eigenvalues(out.g_hat_raw, clip_tol);
  return out;
}

GMatrix ingest_gmatrix(const Json& payload, const std::optional<TraitGrid>& grid, double clip_tol) {
  const SymMatrix m = matrix_from_json(payload);
  if (m.dim() == 0) throw Error(ErrorCode::InvalidMatrix, "G matrix is empty");
  GMatrix g = clip_negative_eigenvalues(m, clip_tol);
  if (grid) g = g.with_grid(*grid);
  return g;
}

GMatrix ingest_gmatrix_file(const std::filesystem::path& path, const std::optional<TraitGrid>& grid,
                            double clip_tol) {
  try {
    return ingest_gmatrix(read_json_file(path), grid, clip_tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace genecon
