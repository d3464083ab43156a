#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "diachrona/cooc.hpp"
#include "diachrona/corpus.hpp"
#include "diachrona/linalg.hpp"

namespace diachrona {

/// Symmetric windowed cooccurrence counts among `terms` over `docs`, using
/// the same pair rule as cooc_counts. The diagonal is 0.
std::vector<std::vector<std::uint64_t>> cooccurrence_matrix(
    const CorpusIndex& index, const DocSet& docs, std::span<const LemmaId> terms,
    std::uint32_t window);

struct SubmatrixOptions {
  /// Keep the pivot as term 0. When false the pivot's row and column are
  /// left out, which usually leaves some terms isolated (and pruned).
  bool include_pivot = true;
};

/// Pivot-centered slice of the term-term cooccurrence model.
struct DsmSubmatrix {
  LemmaId pivot = 0;
  std::vector<LemmaId> terms;
  std::vector<std::vector<std::uint64_t>> counts;
  /// Terms dropped because their row was all zero.
  std::vector<LemmaId> pruned;
};

/// The pivot plus its top-`m` cooccurrents by Dice (as top_cooccurrents
/// ranks them). Throws Error naming the shortfall when fewer than `m`
/// cooccurrents qualify or the pivot is absent, and std::invalid_argument
/// for m < 3.
DsmSubmatrix build_submatrix(const CorpusIndex& index, const DocSet& docs,
                             std::string_view pivot, std::uint32_t window,
                             std::size_t m, const PosFilter& filter,
                             std::uint64_t min_count,
                             const SubmatrixOptions& options = {});

/// Correspondence analysis of a nonnegative table.
struct CaResult {
  /// Principal coordinates on the first two axes (rows x 2, cols x 2).
  Matrix row_coords;
  Matrix col_coords;
  /// Squared singular values of the standardized residual matrix, all axes.
  std::vector<double> inertias;
  double total_inertia = 0.0;
  std::array<double, 2> inertia_fractions{0.0, 0.0};
  /// D_r^-1/2 (P - r c^T) D_c^-1/2 and its SVD.
  Matrix residuals;
  Svd svd;
};

/// Throws Error for a negative cell, an empty or zero-sum table, or a zero
/// row or column (prune first). An axis whose singular value is below
/// 1e-12 of the leading one is reported as zeros with zero inertia.
CaResult correspondence_analysis(const Matrix& table);

enum class CellWeight { Counts, Dice };

struct MapOptions {
  CellWeight weight = CellWeight::Counts;
};

struct MapPoint {
  LemmaId lemma = 0;
  double x = 0.0;
  double y = 0.0;
};

struct SemanticMap {
  LemmaId pivot = 0;
  std::vector<MapPoint> points;
  std::array<double, 2> inertia_fractions{0.0, 0.0};
  double total_inertia = 0.0;
  std::vector<LemmaId> pruned;
};

/// Correspondence analysis of an already built submatrix. Each axis is
/// flipped so the pivot's coordinate is >= 0; without a pivot row (or when
/// it sits at 0) the first term with a nonzero coordinate decides.
SemanticMap map_submatrix(const CorpusIndex& index, const DocSet& docs,
                          const DsmSubmatrix& sub, const MapOptions& options = {});

SemanticMap semantic_map(const CorpusIndex& index, const DocSet& docs,
                         std::string_view pivot, std::uint32_t window,
                         std::size_t m, const PosFilter& filter,
                         std::uint64_t min_count,
                         const SubmatrixOptions& sub_options = {},
                         const MapOptions& options = {});

}  // namespace diachrona
