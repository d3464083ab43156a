#include "diachrona/semfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "diachrona/parallel.hpp"

namespace diachrona {

std::vector<std::vector<std::uint64_t>> cooccurrence_matrix(
    const CorpusIndex& index, const DocSet& docs, std::span<const LemmaId> terms,
    std::uint32_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const auto m = terms.size();
  constexpr std::uint32_t kNone = ~0u;
  std::vector<std::uint32_t> slot(index.lemmas().size(), kNone);
  for (std::uint32_t i = 0; i < m; ++i) slot[terms[i]] = i;

  using Counts = std::vector<std::uint64_t>;  // m*m, upper triangle filled
  auto members = docs.docs();
  auto flat = sharded_reduce<Counts>(
      members.size(), [&] { return Counts(m * m, 0); },
      [&](Counts& c, std::size_t b, std::size_t e) {
        for (auto d = b; d < e; ++d) {
          auto lemmas = index.document_lemmas(members[d]);
          for (std::size_t i = 0; i < lemmas.size(); ++i) {
            auto si = slot[lemmas[i]];
            if (si == kNone) continue;
            auto hi = std::min(lemmas.size() - 1, i + window);
            for (auto j = i + 1; j <= hi; ++j) {
              auto sj = slot[lemmas[j]];
              if (sj == kNone || sj == si) continue;
              ++c[std::min(si, sj) * m + std::max(si, sj)];
            }
          }
        }
      },
      [](Counts& acc, Counts&& part) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
      });
  std::vector<std::vector<std::uint64_t>> out(m, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out[i][j] = out[j][i] = flat[i * m + j];
  return out;
}

DsmSubmatrix build_submatrix(const CorpusIndex& index, const DocSet& docs,
                             std::string_view pivot, std::uint32_t window,
                             std::size_t m, const PosFilter& filter,
                             std::uint64_t min_count,
                             const SubmatrixOptions& options) {
  if (m < 3) throw std::invalid_argument("a semantic field needs m >= 3 terms");
  auto pivot_id = index.lemmas().find(pivot);
  if (!pivot_id) throw Error("pivot '" + std::string(pivot) + "' does not occur");
  auto top = top_cooccurrents(index, docs, pivot, window, m, filter, min_count);
  if (top.size() < m)
    throw Error("insufficient cooccurrents for '" + std::string(pivot) + "': need " +
                std::to_string(m) + ", found " + std::to_string(top.size()) +
                " (short by " + std::to_string(m - top.size()) + ")");

  std::vector<LemmaId> terms;
  if (options.include_pivot) terms.push_back(*pivot_id);
  for (const auto& c : top) terms.push_back(c.lemma);
  auto counts = cooccurrence_matrix(index, docs, terms, window);

  DsmSubmatrix sub;
  sub.pivot = *pivot_id;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool any = std::any_of(counts[i].begin(), counts[i].end(),
                           [](std::uint64_t v) { return v != 0; });
    if (any) keep.push_back(i);
    else sub.pruned.push_back(terms[i]);
  }
  for (auto i : keep) {
    sub.terms.push_back(terms[i]);
    std::vector<std::uint64_t> row;
    for (auto j : keep) row.push_back(counts[i][j]);
    sub.counts.push_back(std::move(row));
  }
  return sub;
}

CaResult correspondence_analysis(const Matrix& table) {
  const auto rows = table.rows();
  const auto cols = table.cols();
  if (rows == 0 || cols == 0) throw Error("correspondence analysis of an empty table");
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (table(i, j) < 0 || !std::isfinite(table(i, j)))
        throw Error("correspondence analysis needs finite nonnegative cells");
      total += table(i, j);
    }
  if (!(total > 0)) throw Error("correspondence analysis of a zero table");

  std::vector<double> r(rows, 0.0), c(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      r[i] += table(i, j) / total;
      c[j] += table(i, j) / total;
    }
  for (std::size_t i = 0; i < rows; ++i)
    if (r[i] == 0.0)
      throw Error("row " + std::to_string(i) + " is all zero; prune it before the analysis");
  for (std::size_t j = 0; j < cols; ++j)
    if (c[j] == 0.0)
      throw Error("column " + std::to_string(j) + " is all zero; prune it before the analysis");

  CaResult res;
  res.residuals = Matrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double expected = r[i] * c[j];
      res.residuals(i, j) = (table(i, j) / total - expected) / std::sqrt(expected);
    }
  res.svd = jacobi_svd(res.residuals);
  const auto& sv = res.svd.singular_values;
  for (double s : sv) {
    res.inertias.push_back(s * s);
    res.total_inertia += s * s;
  }

  res.row_coords = Matrix(rows, 2);
  res.col_coords = Matrix(cols, 2);
  const double lead = sv.empty() ? 0.0 : sv[0];
  for (std::size_t k = 0; k < 2 && k < sv.size(); ++k) {
    if (sv[k] <= lead * 1e-12 || sv[k] == 0.0) continue;
    for (std::size_t i = 0; i < rows; ++i)
      res.row_coords(i, k) = res.svd.u(i, k) * sv[k] / std::sqrt(r[i]);
    for (std::size_t j = 0; j < cols; ++j)
      res.col_coords(j, k) = res.svd.v(j, k) * sv[k] / std::sqrt(c[j]);
    // Below this the table is independence up to rounding.
    if (res.total_inertia > 1e-24) res.inertia_fractions[k] = sv[k] * sv[k] / res.total_inertia;
  }
  if (res.total_inertia <= 1e-24) {
    res.row_coords = Matrix(rows, 2);
    res.col_coords = Matrix(cols, 2);
  }
  return res;
}

SemanticMap map_submatrix(const CorpusIndex& index, const DocSet& docs,
                          const DsmSubmatrix& sub, const MapOptions& options) {
  const auto m = sub.terms.size();
  if (m < 2) throw Error("semantic map needs at least 2 connected terms, have " +
                         std::to_string(m));
  Matrix table(m, m);
  if (options.weight == CellWeight::Dice) {
    auto hist = lemma_histogram(index, docs);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (sub.counts[i][j] > 0)
          table(i, j) = dice(sub.counts[i][j], hist[sub.terms[i]], hist[sub.terms[j]]);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        table(i, j) = static_cast<double>(sub.counts[i][j]);
  }
  auto ca = correspondence_analysis(table);

  auto anchor = std::find(sub.terms.begin(), sub.terms.end(), sub.pivot);
  for (std::size_t k = 0; k < 2; ++k) {
    double ref = 0.0;
    if (anchor != sub.terms.end())
      ref = ca.row_coords(static_cast<std::size_t>(anchor - sub.terms.begin()), k);
    if (std::abs(ref) <= 1e-12) {
      ref = 0.0;
      for (std::size_t i = 0; i < m && ref == 0.0; ++i)
        if (std::abs(ca.row_coords(i, k)) > 1e-12) ref = ca.row_coords(i, k);
    }
    if (ref < 0)
      for (std::size_t i = 0; i < m; ++i) ca.row_coords(i, k) = -ca.row_coords(i, k);
  }

  SemanticMap map;
  map.pivot = sub.pivot;
  map.pruned = sub.pruned;
  map.total_inertia = ca.total_inertia;
  map.inertia_fractions = ca.inertia_fractions;
  for (std::size_t i = 0; i < m; ++i)
    map.points.push_back({sub.terms[i], ca.row_coords(i, 0), ca.row_coords(i, 1)});
  return map;
}

SemanticMap semantic_map(const CorpusIndex& index, const DocSet& docs,
                         std::string_view pivot, std::uint32_t window,
                         std::size_t m, const PosFilter& filter,
                         std::uint64_t min_count,
                         const SubmatrixOptions& sub_options,
                         const MapOptions& options) {
  auto sub = build_submatrix(index, docs, pivot, window, m, filter, min_count, sub_options);
  return map_submatrix(index, docs, sub, options);
}

}  // namespace diachrona
