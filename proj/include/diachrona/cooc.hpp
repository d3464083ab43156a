#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "diachrona/corpus.hpp"
#include "diachrona/error.hpp"
#include "diachrona/frequency.hpp"

namespace diachrona {

/// Pair counts around one pivot lemma.
///
/// A pair is an unordered token pair (i < j) in the same document with
/// j - i <= window where exactly one of the two tokens is the pivot. Each
/// such pair adds 1 to the count of the non-pivot lemma.
struct CoocTable {
  LemmaId pivot = 0;
  std::uint32_t window = 0;
  std::uint64_t pivot_freq = 0;
  std::map<LemmaId, std::uint64_t> pair_counts;
  /// Frequency over the counted documents of every lemma in pair_counts.
  std::map<LemmaId, std::uint64_t> neighbor_freqs;

  friend bool operator==(const CoocTable&, const CoocTable&) = default;
};

/// Throws std::invalid_argument for window < 1.
CoocTable cooc_counts(const CorpusIndex& index, const DocSet& docs,
                      LemmaId pivot, std::uint32_t window);

/// Sørensen-Dice 2c / (fa + fb). Throws Error when both frequencies are 0.
double dice(std::uint64_t pair_count, std::uint64_t freq_a, std::uint64_t freq_b);

/// Word-class restriction on candidate lemmas. A lemma passes when at least
/// half of its tokens in the counted documents carry an allowed tag. An
/// empty allow-list passes everything.
struct PosFilter {
  std::set<std::string, std::less<>> allowed;

  bool empty() const noexcept { return allowed.empty(); }
};

/// Per-lemma frequency and allowed-tag frequency over a document set.
struct LemmaStats {
  std::vector<std::uint64_t> freq;
  std::vector<std::uint64_t> allowed;

  bool passes(LemmaId l, const PosFilter& filter) const noexcept {
    return filter.empty() || 2 * allowed[l] >= freq[l];
  }
};

LemmaStats lemma_stats(const CorpusIndex& index, const DocSet& docs,
                       const PosFilter& filter);

struct Cooccurrent {
  LemmaId lemma = 0;
  std::uint64_t pair_count = 0;
  std::uint64_t freq = 0;
  double dice = 0.0;

  friend bool operator==(const Cooccurrent&, const Cooccurrent&) = default;
};

/// Strict ranking order: dice descending, then pair count descending, then
/// lemma string ascending.
bool ranks_before(const CorpusIndex& index, const Cooccurrent& a,
                  const Cooccurrent& b);

/// Up to `k` cooccurrents with pair_count >= min_count that pass `filter`.
/// An absent pivot yields an empty list. Throws std::invalid_argument for
/// k < 1 or window < 1.
std::vector<Cooccurrent> top_cooccurrents(const CorpusIndex& index,
                                          const DocSet& docs,
                                          std::string_view pivot,
                                          std::uint32_t window, std::size_t k,
                                          const PosFilter& filter,
                                          std::uint64_t min_count);

/// Unordered pairs within `window` made of one `a` token and one `b` token.
/// Zero when a == b or either lemma is absent.
std::uint64_t pair_count(const CorpusIndex& index, const DocSet& docs,
                         std::string_view a, std::string_view b,
                         std::uint32_t window);

/// Directly adjacent a/b pairs in either order.
std::uint64_t adjacency_count(const CorpusIndex& index, const DocSet& docs,
                              std::string_view a, std::string_view b);

struct PairBin {
  std::int32_t start_year = 0;
  std::uint64_t pair_count = 0;
  std::uint64_t freq_a = 0;
  std::uint64_t freq_b = 0;
  /// Empty when neither lemma occurs in the bin.
  std::optional<double> dice;
};

/// Per-date-bin pair counts and bin-local Dice over the dated members of
/// `docs`; bins are contiguous from the earliest to the latest dated bin.
std::vector<PairBin> pair_evolution(const CorpusIndex& index, const DocSet& docs,
                                    std::string_view a, std::string_view b,
                                    std::uint32_t window, std::int32_t bin_width,
                                    DatePolicy policy = DatePolicy::Midpoint);
std::vector<PairBin> pair_evolution(const CorpusIndex& index, std::string_view a,
                                    std::string_view b, std::uint32_t window,
                                    std::int32_t bin_width);

}  // namespace diachrona
