#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genecon/core.hpp"
#include "genecon/json_io.hpp"

namespace genecon {

enum class Design { HalfSib, FullSib };

std::string_view to_string(Design design) noexcept;
/// Accepts "halfsib"/"half-sib" and "fullsib"/"full-sib".
Design parse_design(std::string_view name);

/// Multiplier turning the between-family component into G: 4 for half-sibs
/// (they share a quarter of their additive variance), 2 for full-sibs.
double relatedness_coefficient(Design design) noexcept;

struct Family {
  std::string id;
  Matrix records;  // n x K, one row per individual
};

/// Balanced one-level family data: N_f >= 2 families of exactly n >= 2
/// individuals each, K traits per record.
class FamilyDataset {
 public:
  /// `relatedness` overrides the coefficient implied by `design`.
  FamilyDataset(std::vector<Family> families, TraitGrid grid, Design design,
                std::optional<double> relatedness = std::nullopt);

  const std::vector<Family>& families() const noexcept { return families_; }
  const TraitGrid& grid() const noexcept { return grid_; }
  Design design() const noexcept { return design_; }
  double relatedness() const noexcept { return relatedness_; }

  Index family_count() const noexcept { return static_cast<Index>(families_.size()); }
  Index family_size() const noexcept { return families_.front().records.rows(); }
  Index dim() const noexcept { return grid_.size(); }

 private:
  std::vector<Family> families_;
  TraitGrid grid_;
  Design design_;
  double relatedness_;
};

struct VarianceComponents {
  SymMatrix between_ms;        // MSB
  SymMatrix within_ms;         // MSW
  SymMatrix family_component;  // (MSB - MSW) / n
  SymMatrix g_hat_raw;         // c * family_component, possibly indefinite
  GMatrix g_hat;               // g_hat_raw with negative eigenvalues clipped
  double relatedness = 0.0;

  const std::vector<Index>& clipped_indices() const noexcept { return g_hat.clipped_indices(); }
  const Vector& raw_eigenvalues() const noexcept { return g_hat.raw_eigenvalues(); }
};

/// One-way MANOVA method-of-moments estimate of G:
///   MSB = n sum_j (ybar_j - ybar)(ybar_j - ybar)' / (N_f - 1)
///   MSW = sum_j sum_i (y_ij - ybar_j)(y_ij - ybar_j)' / (N_f (n - 1))
///   G_raw = c (MSB - MSW) / n
/// Sums run over families in index order.
VarianceComponents anova_estimate(const FamilyDataset& data, double clip_tol = 0.0);
/// Same estimator on bare records (any K >= 1, no grid attached to g_hat).
/// Families are validated as in FamilyDataset.
VarianceComponents anova_estimate(const std::vector<Family>& families, double relatedness,
                                  double clip_tol = 0.0);

/// Parses a matrix payload, checks it against `grid` when given, clips
/// eigenvalues below `clip_tol` and decomposes.
GMatrix ingest_gmatrix(const Json& payload, const std::optional<TraitGrid>& grid,
                       double clip_tol = 0.0);
GMatrix ingest_gmatrix_file(const std::filesystem::path& path,
                            const std::optional<TraitGrid>& grid, double clip_tol = 0.0);

/// CSV with header `family,individual,t1,...,tK`, one row per individual.
/// Families keep their order of first appearance; balance is validated.
FamilyDataset read_dataset_csv(std::istream& in, const TraitGrid& grid, Design design,
                               std::optional<double> relatedness = std::nullopt);
FamilyDataset read_dataset_csv(const std::filesystem::path& path, const TraitGrid& grid,
                               Design design, std::optional<double> relatedness = std::nullopt);
void write_dataset_csv(std::ostream& out, const FamilyDataset& data);

}  // namespace genecon
