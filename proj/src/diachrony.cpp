#include "diachrona/diachrony.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diachrona {

DocSet TrancheSet::tranche(std::size_t t) const {
  return DocSet(std::vector<DocIndex>(
      order.begin() + static_cast<std::ptrdiff_t>(boundaries[t]),
      order.begin() + static_cast<std::ptrdiff_t>(boundaries[t + 1])));
}

DocSet TrancheSet::all() const { return DocSet(order); }

namespace {

std::vector<DocIndex> sorted_dated(const CorpusIndex& index, const DocSet& docs) {
  auto all = index.dated_documents_by_date();
  std::vector<DocIndex> out;
  out.reserve(all.size());
  for (auto d : all)
    if (docs.contains(d)) out.push_back(d);
  return out;
}

TrancheSet finish(const CorpusIndex& index, std::vector<DocIndex> order,
                  std::vector<std::size_t> boundaries) {
  TrancheSet ts;
  ts.order = std::move(order);
  ts.boundaries = std::move(boundaries);
  for (std::size_t t = 0; t + 1 < ts.boundaries.size(); ++t) {
    std::uint64_t mass = 0;
    for (auto i = ts.boundaries[t]; i < ts.boundaries[t + 1]; ++i)
      mass += index.documents()[ts.order[i]].token_len;
    ts.token_masses.push_back(mass);
  }
  return ts;
}

}  // namespace

TrancheSet make_tranches(const CorpusIndex& index, const DocSet& docs,
                         std::size_t k) {
  if (k < 2) throw std::invalid_argument("tranche count must be >= 2");
  auto order = sorted_dated(index, docs);
  const auto n = order.size();
  if (n < k)
    throw Error("cannot cut " + std::to_string(n) + " dated documents into " +
                std::to_string(k) + " tranches");

  // cumulative[j] = mass of the first j documents
  std::vector<std::uint64_t> cumulative(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j)
    cumulative[j + 1] = cumulative[j] + index.documents()[order[j]].token_len;
  const auto total = cumulative[n];

  // Targets i*T/k are compared as i*T against cumulative*k in integers.
  std::vector<std::size_t> boundaries{0};
  std::size_t j = 1;
  for (std::size_t i = 1; i < k; ++i) {
    const unsigned __int128 target = static_cast<unsigned __int128>(total) * i;
    auto scaled = [&](std::size_t m) {
      return static_cast<unsigned __int128>(cumulative[m]) * k;
    };
    while (j < n && scaled(j) < target) ++j;
    std::size_t b = j;
    auto dist = [&](std::size_t m) {
      auto c = scaled(m);
      return c >= target ? c - target : target - c;
    };
    if (b >= 1 && dist(b - 1) < dist(b)) b = b - 1;
    // every tranche keeps at least one document
    b = std::clamp(b, boundaries.back() + 1, n - (k - i));
    boundaries.push_back(b);
  }
  boundaries.push_back(n);
  return finish(index, std::move(order), std::move(boundaries));
}

TrancheSet make_tranches(const CorpusIndex& index, std::size_t k) {
  return make_tranches(index, DocSet::all(index), k);
}

TrancheSet single_tranche(const CorpusIndex& index) {
  auto order = index.dated_documents_by_date();
  auto n = order.size();
  return finish(index, std::move(order), {0, n});
}

TrancheCooc cooc_by_tranche(const CorpusIndex& index, const TrancheSet& tranches,
                            LemmaId pivot, std::uint32_t window,
                            const PosFilter& filter, std::uint64_t min_count) {
  TrancheCooc out;
  const auto k = tranches.k();
  for (std::size_t t = 0; t < k; ++t) {
    auto docs = tranches.tranche(t);
    out.tables.push_back(cooc_counts(index, docs, pivot, window));
  }
  std::map<LemmaId, std::uint64_t> totals;
  for (const auto& table : out.tables)
    for (const auto& [lemma, count] : table.pair_counts) totals[lemma] += count;

  std::optional<LemmaStats> union_stats;
  if (!filter.empty()) union_stats = lemma_stats(index, tranches.all(), filter);

  for (const auto& [lemma, total] : totals) {
    if (total < min_count) continue;
    if (union_stats && !union_stats->passes(lemma, filter)) continue;
    std::vector<double> d(k, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
      const auto& table = out.tables[t];
      auto it = table.pair_counts.find(lemma);
      if (it == table.pair_counts.end()) continue;
      d[t] = dice(it->second, table.pivot_freq, table.neighbor_freqs.at(lemma));
    }
    out.dice.emplace(lemma, std::move(d));
    out.totals.emplace(lemma, total);
  }
  return out;
}

double ols_slope(std::span<const double> y) {
  const auto k = y.size();
  if (k < 2) return 0.0;
  // x_i - mean(x) for x = 1..k is i - (k-1)/2 with i 0-based; its mirror
  // partner has the opposite sign.
  const double center = static_cast<double>(k - 1) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < k / 2; ++i) {
    double dx = static_cast<double>(i) - center;
    sxy += dx * (y[i] - y[k - 1 - i]);
    sxx += 2.0 * dx * dx;
  }
  return sxy / sxx;
}

double trend_score(std::span<const double> y) {
  if (y.empty()) return 0.0;
  const auto k = y.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < k / 2; ++i) sum += y[i] + y[k - 1 - i];
  if (k % 2 == 1) sum += y[k / 2];
  double mean = sum / static_cast<double>(k);
  return ols_slope(y) / std::max(mean, kTrendEpsilon);
}

const char* to_string(TrendDirection d) noexcept {
  switch (d) {
    case TrendDirection::Rising: return "rising";
    case TrendDirection::Falling: return "falling";
    case TrendDirection::Flat: return "flat";
  }
  return "flat";
}

TrendReport evolving_cooccurrents(const CorpusIndex& index,
                                  const TrancheSet& tranches,
                                  std::string_view pivot, std::uint32_t window,
                                  const PosFilter& filter,
                                  std::uint64_t min_count, std::size_t top_n) {
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  TrendReport report;
  auto pivot_id = index.lemmas().find(pivot);
  if (!pivot_id) return report;
  report.pivot = *pivot_id;
  auto by_tranche = cooc_by_tranche(index, tranches, *pivot_id, window, filter, min_count);
  for (auto& [lemma, d] : by_tranche.dice) {
    TrendEntry e;
    e.lemma = lemma;
    e.total = by_tranche.totals.at(lemma);
    e.slope = ols_slope(d);
    e.score = trend_score(d);
    e.direction = e.slope > 0   ? TrendDirection::Rising
                  : e.slope < 0 ? TrendDirection::Falling
                                : TrendDirection::Flat;
    e.dice = std::move(d);
    report.entries.push_back(std::move(e));
  }
  const auto& vocab = index.lemmas();
  std::sort(report.entries.begin(), report.entries.end(),
            [&](const TrendEntry& a, const TrendEntry& b) {
              auto sa = std::abs(a.score);
              auto sb = std::abs(b.score);
              if (sa != sb) return sa > sb;
              if (a.total != b.total) return a.total > b.total;
              return vocab[a.lemma] < vocab[b.lemma];
            });
  if (report.entries.size() > top_n) report.entries.resize(top_n);
  return report;
}

}  // namespace diachrona
