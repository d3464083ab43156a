#include "diachrona/cooc.hpp"

#include <algorithm>
#include <stdexcept>

#include "diachrona/parallel.hpp"

namespace diachrona {

namespace {

void check_window(std::uint32_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
}

// Pivot-side enumeration: every qualifying pair has exactly one pivot end,
// so visiting the window of each pivot token counts each pair once.
void count_document(std::span<const LemmaId> lemmas, LemmaId pivot,
                    std::uint32_t window, std::vector<std::uint64_t>& pairs,
                    std::uint64_t& pivot_freq) {
  const std::size_t n = lemmas.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lemmas[i] != pivot) continue;
    ++pivot_freq;
    std::size_t lo = i >= window ? i - window : 0;
    std::size_t hi = std::min(n - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j)
      if (lemmas[j] != pivot) ++pairs[lemmas[j]];
  }
}

}  // namespace

CoocTable cooc_counts(const CorpusIndex& index, const DocSet& docs,
                      LemmaId pivot, std::uint32_t window) {
  check_window(window);
  struct Partial {
    std::vector<std::uint64_t> pairs;
    std::vector<std::uint64_t> freq;
    std::uint64_t pivot_freq = 0;
  };
  const auto vocab = index.lemmas().size();
  auto members = docs.docs();
  auto total = sharded_reduce<Partial>(
      members.size(),
      [&] { return Partial{std::vector<std::uint64_t>(vocab, 0),
                           std::vector<std::uint64_t>(vocab, 0), 0}; },
      [&](Partial& p, std::size_t b, std::size_t e) {
        for (auto i = b; i < e; ++i) {
          auto lemmas = index.document_lemmas(members[i]);
          for (auto l : lemmas) ++p.freq[l];
          count_document(lemmas, pivot, window, p.pairs, p.pivot_freq);
        }
      },
      [](Partial& acc, Partial&& part) {
        for (std::size_t l = 0; l < acc.pairs.size(); ++l) {
          acc.pairs[l] += part.pairs[l];
          acc.freq[l] += part.freq[l];
        }
        acc.pivot_freq += part.pivot_freq;
      });

  CoocTable t;
  t.pivot = pivot;
  t.window = window;
  t.pivot_freq = total.pivot_freq;
  for (LemmaId l = 0; l < total.pairs.size(); ++l)
    if (total.pairs[l] > 0) {
      t.pair_counts.emplace_hint(t.pair_counts.end(), l, total.pairs[l]);
      t.neighbor_freqs.emplace_hint(t.neighbor_freqs.end(), l, total.freq[l]);
    }
  return t;
}

double dice(std::uint64_t pair_count, std::uint64_t freq_a, std::uint64_t freq_b) {
  if (freq_a == 0 && freq_b == 0)
    throw Error("dice: both frequencies are zero");
  return 2.0 * static_cast<double>(pair_count) /
         (static_cast<double>(freq_a) + static_cast<double>(freq_b));
}

LemmaStats lemma_stats(const CorpusIndex& index, const DocSet& docs,
                       const PosFilter& filter) {
  const auto vocab = index.lemmas().size();
  std::vector<char> allowed_pos(index.pos_tags().size(), 0);
  for (std::size_t p = 0; p < allowed_pos.size(); ++p)
    allowed_pos[p] = filter.allowed.contains(index.pos_tags()[static_cast<std::uint32_t>(p)]);
  auto members = docs.docs();
  auto lemma_ids = index.lemma_ids();
  auto pos_ids = index.pos_ids();
  return sharded_reduce<LemmaStats>(
      members.size(),
      [&] { return LemmaStats{std::vector<std::uint64_t>(vocab, 0),
                              std::vector<std::uint64_t>(vocab, 0)}; },
      [&](LemmaStats& s, std::size_t b, std::size_t e) {
        for (auto i = b; i < e; ++i) {
          const auto& doc = index.documents()[members[i]];
          for (auto t = doc.token_start; t < doc.token_end(); ++t) {
            ++s.freq[lemma_ids[t]];
            s.allowed[lemma_ids[t]] += allowed_pos[pos_ids[t]];
          }
        }
      },
      [](LemmaStats& acc, LemmaStats&& part) {
        for (std::size_t l = 0; l < acc.freq.size(); ++l) {
          acc.freq[l] += part.freq[l];
          acc.allowed[l] += part.allowed[l];
        }
      });
}

bool ranks_before(const CorpusIndex& index, const Cooccurrent& a,
                  const Cooccurrent& b) {
  if (a.dice != b.dice) return a.dice > b.dice;
  if (a.pair_count != b.pair_count) return a.pair_count > b.pair_count;
  return index.lemmas()[a.lemma] < index.lemmas()[b.lemma];
}

std::vector<Cooccurrent> top_cooccurrents(const CorpusIndex& index,
                                          const DocSet& docs,
                                          std::string_view pivot,
                                          std::uint32_t window, std::size_t k,
                                          const PosFilter& filter,
                                          std::uint64_t min_count) {
  check_window(window);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  auto pivot_id = index.lemmas().find(pivot);
  if (!pivot_id) return {};
  auto table = cooc_counts(index, docs, *pivot_id, window);
  std::optional<LemmaStats> stats;
  if (!filter.empty()) stats = lemma_stats(index, docs, filter);

  std::vector<Cooccurrent> out;
  for (const auto& [lemma, count] : table.pair_counts) {
    if (count < min_count) continue;
    if (stats && !stats->passes(lemma, filter)) continue;
    auto freq = table.neighbor_freqs.at(lemma);
    out.push_back({lemma, count, freq, dice(count, table.pivot_freq, freq)});
  }
  auto cmp = [&](const Cooccurrent& a, const Cooccurrent& b) {
    return ranks_before(index, a, b);
  };
  if (out.size() > k) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k),
                      out.end(), cmp);
    out.resize(k);
  } else {
    std::sort(out.begin(), out.end(), cmp);
  }
  return out;
}

namespace {

std::uint64_t pairs_in_document(std::span<const LemmaId> lemmas, LemmaId a,
                                LemmaId b, std::uint32_t window) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (lemmas[i] != a) continue;
    std::size_t lo = i >= window ? i - window : 0;
    std::size_t hi = std::min(lemmas.size() - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j) n += (lemmas[j] == b);
  }
  return n;
}

}  // namespace

std::uint64_t pair_count(const CorpusIndex& index, const DocSet& docs,
                         std::string_view a, std::string_view b,
                         std::uint32_t window) {
  check_window(window);
  auto ia = index.lemmas().find(a);
  auto ib = index.lemmas().find(b);
  if (!ia || !ib || *ia == *ib) return 0;
  std::uint64_t n = 0;
  for (auto d : docs) n += pairs_in_document(index.document_lemmas(d), *ia, *ib, window);
  return n;
}

std::uint64_t adjacency_count(const CorpusIndex& index, const DocSet& docs,
                              std::string_view a, std::string_view b) {
  auto ia = index.lemmas().find(a);
  auto ib = index.lemmas().find(b);
  if (!ia || !ib) return 0;
  std::uint64_t n = 0;
  for (auto d : docs) {
    auto lemmas = index.document_lemmas(d);
    for (std::size_t i = 0; i + 1 < lemmas.size(); ++i) {
      auto x = lemmas[i];
      auto y = lemmas[i + 1];
      n += (x == *ia && y == *ib) || (x == *ib && y == *ia);
    }
  }
  return n;
}

std::vector<PairBin> pair_evolution(const CorpusIndex& index, const DocSet& docs,
                                    std::string_view a, std::string_view b,
                                    std::uint32_t window, std::int32_t bin_width,
                                    DatePolicy policy) {
  check_window(window);
  if (bin_width < 1) throw std::invalid_argument("bin width must be >= 1");
  auto ia = index.lemmas().find(a);
  auto ib = index.lemmas().find(b);
  std::map<std::int32_t, PairBin> bins;
  for (auto d : docs) {
    auto year = binning_year(index.documents()[d].date, policy);
    if (!year) continue;
    auto& bin = bins[bin_start(*year, bin_width)];
    auto lemmas = index.document_lemmas(d);
    for (auto l : lemmas) {
      bin.freq_a += (ia && l == *ia);
      bin.freq_b += (ib && l == *ib);
    }
    if (ia && ib && *ia != *ib)
      bin.pair_count += pairs_in_document(lemmas, *ia, *ib, window);
  }
  std::vector<PairBin> out;
  if (bins.empty()) return out;
  for (std::int64_t s = bins.begin()->first; s <= bins.rbegin()->first; s += bin_width) {
    PairBin p;
    if (auto it = bins.find(static_cast<std::int32_t>(s)); it != bins.end()) p = it->second;
    p.start_year = static_cast<std::int32_t>(s);
    if (p.freq_a + p.freq_b > 0) p.dice = dice(p.pair_count, p.freq_a, p.freq_b);
    out.push_back(p);
  }
  return out;
}

std::vector<PairBin> pair_evolution(const CorpusIndex& index, std::string_view a,
                                    std::string_view b, std::uint32_t window,
                                    std::int32_t bin_width) {
  return pair_evolution(index, DocSet::all(index), a, b, window, bin_width);
}

}  // namespace diachrona
