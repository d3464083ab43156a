#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "diachrona/corpus.hpp"
#include "diachrona/error.hpp"

namespace diachrona {

/// Token count of every lemma id over `docs` (dense, indexed by lemma id).
std::vector<std::uint64_t> lemma_histogram(const CorpusIndex& index,
                                           const DocSet& docs);

/// 0 when the lemma is not in the vocabulary.
std::uint64_t lemma_count(const CorpusIndex& index, const DocSet& docs,
                          std::string_view lemma);

/// Lemma-by-subcorpus counts with exact margins.
struct CountTable {
  std::vector<std::vector<std::uint64_t>> cells;  // [row][column]
  std::vector<std::uint64_t> row_sums;
  std::vector<std::uint64_t> column_sums;
  std::uint64_t grand_total = 0;

  /// Computes the margins of externally supplied cells; rows must have equal
  /// length.
  static CountTable from_cells(std::vector<std::vector<std::uint64_t>> cells);
};

CountTable count_table(const CorpusIndex& index,
                       const std::vector<std::string>& lemmas,
                       const std::vector<DocSet>& docsets);

struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  double value = 0.0;
};

/// Throws Error when `b` is zero.
Ratio ratio(std::uint64_t a, std::uint64_t b);

struct RankedLemma {
  LemmaId lemma;
  std::uint64_t count;
};

/// Lemmas with count >= 1 by descending count, ties by ascending lemma
/// string (bytewise).
std::vector<RankedLemma> rank_lemmas(const CorpusIndex& index, const DocSet& docs);

/// 1-based position in rank_lemmas; empty when the lemma does not occur.
std::optional<std::size_t> lemma_rank(const CorpusIndex& index,
                                      const DocSet& docs, std::string_view lemma);

/// Share of the lemma's tokens whose case-folded surface form is in `forms`
/// (compared case-folded). Throws Error when the lemma does not occur.
double form_share(const CorpusIndex& index, const DocSet& docs,
                  std::string_view lemma, const std::set<std::string>& forms);

/// Which year of a dated document decides its bin.
enum class DatePolicy { Midpoint, Start, End };

std::optional<std::int32_t> binning_year(const DateSpec& date, DatePolicy policy);

/// Start of the width-`width` bin holding `year`; edges are multiples of
/// the width.
std::int32_t bin_start(std::int32_t year, std::int32_t width) noexcept;

struct TimeBin {
  std::int32_t start_year = 0;
  std::uint64_t count = 0;
  std::uint64_t token_mass = 0;
  /// Empty when the bin holds no tokens.
  std::optional<double> per_million;
};

struct TimeSeries {
  std::int32_t bin_width = 0;
  std::vector<TimeBin> bins;  // contiguous, from earliest to latest bin
};

/// Counts of `lemma` per date bin over the dated members of `docs`; undated
/// documents are excluded. Throws std::invalid_argument for width < 1.
TimeSeries time_series(const CorpusIndex& index, const DocSet& docs,
                       std::string_view lemma, std::int32_t bin_width,
                       DatePolicy policy = DatePolicy::Midpoint);
TimeSeries time_series(const CorpusIndex& index, std::string_view lemma,
                       std::int32_t bin_width,
                       DatePolicy policy = DatePolicy::Midpoint);

/// Centered moving average of per-million rates over `span` bins (odd).
/// Bins without tokens are skipped inside each window; a window with no
/// defined rate yields an empty value.
std::vector<std::optional<double>> moving_average(const TimeSeries& series,
                                                  std::size_t span);

}  // namespace diachrona
