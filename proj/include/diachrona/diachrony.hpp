#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diachrona/cooc.hpp"
#include "diachrona/corpus.hpp"

namespace diachrona {

/// Ordered partition of the dated documents into contiguous chronological
/// slices of near-equal token mass.
struct TrancheSet {
  /// Dated documents sorted by date midpoint, ties by doc_id.
  std::vector<DocIndex> order;
  /// k + 1 positions into `order`; tranche t is [boundaries[t], boundaries[t+1]).
  std::vector<std::size_t> boundaries;
  std::vector<std::uint64_t> token_masses;

  std::size_t k() const noexcept { return token_masses.size(); }
  DocSet tranche(std::size_t t) const;
  /// Union of all tranches.
  DocSet all() const;
};

/// Throws Error when fewer than k dated documents exist, and
/// std::invalid_argument for k < 2.
///
/// Boundary i sits after the first document at which the cumulative mass
/// reaches i*T/k, unless stopping one document earlier is strictly closer
/// to i*T/k.
TrancheSet make_tranches(const CorpusIndex& index, std::size_t k);
TrancheSet make_tranches(const CorpusIndex& index, const DocSet& docs, std::size_t k);

/// The whole dated corpus as a single slice.
TrancheSet single_tranche(const CorpusIndex& index);

struct TrancheCooc {
  std::vector<CoocTable> tables;  // one per tranche
  /// Candidate lemma -> per-tranche Dice (0 where the lemma is absent).
  std::map<LemmaId, std::vector<double>> dice;
  /// Candidate lemma -> pair count summed over tranches.
  std::map<LemmaId, std::uint64_t> totals;
};

/// Candidates are lemmas whose summed pair count reaches `min_count` and
/// that pass `filter` over the union of the tranches.
TrancheCooc cooc_by_tranche(const CorpusIndex& index, const TrancheSet& tranches,
                            LemmaId pivot, std::uint32_t window,
                            const PosFilter& filter, std::uint64_t min_count);

/// Least-squares slope of y against 1..k. Mirror-paired summation makes a
/// constant input give exactly 0 and index reversal exactly negate it.
double ols_slope(std::span<const double> y);

inline constexpr double kTrendEpsilon = 1e-12;

/// slope / max(mean, 1e-12).
double trend_score(std::span<const double> y);

enum class TrendDirection { Rising, Falling, Flat };
const char* to_string(TrendDirection d) noexcept;

struct TrendEntry {
  LemmaId lemma = 0;
  std::vector<double> dice;
  std::uint64_t total = 0;
  double slope = 0.0;
  double score = 0.0;
  TrendDirection direction = TrendDirection::Flat;
};

struct TrendReport {
  LemmaId pivot = 0;
  std::vector<TrendEntry> entries;  // by |score| desc, total desc, lemma asc
};

/// Top `top_n` candidates by |trend score|. An absent pivot yields an empty
/// report. Throws std::invalid_argument for min_count < 1.
TrendReport evolving_cooccurrents(const CorpusIndex& index,
                                  const TrancheSet& tranches,
                                  std::string_view pivot, std::uint32_t window,
                                  const PosFilter& filter,
                                  std::uint64_t min_count, std::size_t top_n);

}  // namespace diachrona
