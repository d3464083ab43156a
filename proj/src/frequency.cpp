#include "diachrona/frequency.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "diachrona/parallel.hpp"
#include "diachrona/text.hpp"

namespace diachrona {

std::vector<std::uint64_t> lemma_histogram(const CorpusIndex& index,
                                           const DocSet& docs) {
  using Hist = std::vector<std::uint64_t>;
  auto members = docs.docs();
  return sharded_reduce<Hist>(
      members.size(), [&] { return Hist(index.lemmas().size(), 0); },
      [&](Hist& h, std::size_t b, std::size_t e) {
        for (auto i = b; i < e; ++i)
          for (auto l : index.document_lemmas(members[i])) ++h[l];
      },
      [](Hist& acc, Hist&& part) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
      });
}

std::uint64_t lemma_count(const CorpusIndex& index, const DocSet& docs,
                          std::string_view lemma) {
  auto id = index.lemmas().find(lemma);
  if (!id) return 0;
  std::uint64_t n = 0;
  for (auto d : docs)
    for (auto l : index.document_lemmas(d)) n += (l == *id);
  return n;
}

CountTable CountTable::from_cells(std::vector<std::vector<std::uint64_t>> cells) {
  CountTable t;
  std::size_t cols = cells.empty() ? 0 : cells.front().size();
  t.row_sums.assign(cells.size(), 0);
  t.column_sums.assign(cols, 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != cols)
      throw std::invalid_argument("count table rows differ in length");
    for (std::size_t j = 0; j < cols; ++j) {
      t.row_sums[i] += cells[i][j];
      t.column_sums[j] += cells[i][j];
      t.grand_total += cells[i][j];
    }
  }
  t.cells = std::move(cells);
  return t;
}

CountTable count_table(const CorpusIndex& index,
                       const std::vector<std::string>& lemmas,
                       const std::vector<DocSet>& docsets) {
  std::vector<std::vector<std::uint64_t>> cells(
      lemmas.size(), std::vector<std::uint64_t>(docsets.size(), 0));
  for (std::size_t j = 0; j < docsets.size(); ++j) {
    auto hist = lemma_histogram(index, docsets[j]);
    for (std::size_t i = 0; i < lemmas.size(); ++i)
      if (auto id = index.lemmas().find(lemmas[i])) cells[i][j] = hist[*id];
  }
  return CountTable::from_cells(std::move(cells));
}

Ratio ratio(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw Error("ratio: division by zero (denominator count is 0)");
  return {a, b, static_cast<double>(a) / static_cast<double>(b)};
}

std::vector<RankedLemma> rank_lemmas(const CorpusIndex& index, const DocSet& docs) {
  auto hist = lemma_histogram(index, docs);
  std::vector<RankedLemma> out;
  for (LemmaId l = 0; l < hist.size(); ++l)
    if (hist[l] > 0) out.push_back({l, hist[l]});
  const auto& vocab = index.lemmas();
  std::sort(out.begin(), out.end(), [&](const RankedLemma& a, const RankedLemma& b) {
    if (a.count != b.count) return a.count > b.count;
    return vocab[a.lemma] < vocab[b.lemma];
  });
  return out;
}

std::optional<std::size_t> lemma_rank(const CorpusIndex& index,
                                      const DocSet& docs, std::string_view lemma) {
  auto id = index.lemmas().find(lemma);
  if (!id) return std::nullopt;
  auto ranked = rank_lemmas(index, docs);
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (ranked[i].lemma == *id) return i + 1;
  return std::nullopt;
}

double form_share(const CorpusIndex& index, const DocSet& docs,
                  std::string_view lemma, const std::set<std::string>& forms) {
  auto id = index.lemmas().find(lemma);
  if (!id) throw Error("form share: lemma '" + std::string(lemma) + "' does not occur");
  std::set<std::string, std::less<>> folded;
  for (const auto& f : forms) folded.insert(text::fold_case(f));
  // fold each distinct form id once
  std::map<FormId, bool> in_set;
  std::uint64_t total = 0;
  std::uint64_t hits = 0;
  auto lemma_ids = index.lemma_ids();
  auto form_ids = index.form_ids();
  for (auto d : docs) {
    const auto& doc = index.documents()[d];
    for (auto t = doc.token_start; t < doc.token_end(); ++t) {
      if (lemma_ids[t] != *id) continue;
      ++total;
      auto [it, fresh] = in_set.try_emplace(form_ids[t], false);
      if (fresh) it->second = folded.contains(text::fold_case(index.forms()[form_ids[t]]));
      hits += it->second;
    }
  }
  if (total == 0)
    throw Error("form share: lemma '" + std::string(lemma) + "' does not occur");
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::optional<std::int32_t> binning_year(const DateSpec& date, DatePolicy policy) {
  if (!date.is_dated()) return std::nullopt;
  switch (policy) {
    case DatePolicy::Start: return date.lo();
    case DatePolicy::End: return date.hi();
    case DatePolicy::Midpoint: break;
  }
  return date.midpoint();
}

std::int32_t bin_start(std::int32_t year, std::int32_t width) noexcept {
  std::int64_t q = year / width;
  if (year % width != 0 && year < 0) --q;
  return static_cast<std::int32_t>(q * width);
}

TimeSeries time_series(const CorpusIndex& index, const DocSet& docs,
                       std::string_view lemma, std::int32_t bin_width,
                       DatePolicy policy) {
  if (bin_width < 1) throw std::invalid_argument("bin width must be >= 1");
  TimeSeries series;
  series.bin_width = bin_width;
  auto id = index.lemmas().find(lemma);
  std::map<std::int32_t, TimeBin> bins;
  for (auto d : docs) {
    const auto& doc = index.documents()[d];
    auto year = binning_year(doc.date, policy);
    if (!year) continue;
    auto& bin = bins[bin_start(*year, bin_width)];
    bin.token_mass += doc.token_len;
    if (id)
      for (auto l : index.document_lemmas(d)) bin.count += (l == *id);
  }
  if (bins.empty()) return series;
  auto first = bins.begin()->first;
  auto last = bins.rbegin()->first;
  for (std::int64_t s = first; s <= last; s += bin_width) {
    TimeBin b;
    if (auto it = bins.find(static_cast<std::int32_t>(s)); it != bins.end()) b = it->second;
    b.start_year = static_cast<std::int32_t>(s);
    if (b.token_mass > 0)
      b.per_million = 1e6 * static_cast<double>(b.count) / static_cast<double>(b.token_mass);
    series.bins.push_back(b);
  }
  return series;
}

TimeSeries time_series(const CorpusIndex& index, std::string_view lemma,
                       std::int32_t bin_width, DatePolicy policy) {
  return time_series(index, DocSet::all(index), lemma, bin_width, policy);
}

std::vector<std::optional<double>> moving_average(const TimeSeries& series,
                                                  std::size_t span) {
  if (span == 0 || span % 2 == 0)
    throw std::invalid_argument("moving average span must be odd and >= 1");
  const auto n = series.bins.size();
  const auto half = span / 2;
  std::vector<std::optional<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0;
    std::size_t used = 0;
    auto lo = i >= half ? i - half : 0;
    auto hi = std::min(n - 1, i + half);
    for (auto j = lo; j <= hi; ++j)
      if (series.bins[j].per_million) {
        sum += *series.bins[j].per_million;
        ++used;
      }
    if (used) out[i] = sum / static_cast<double>(used);
  }
  return out;
}

}  // namespace diachrona
