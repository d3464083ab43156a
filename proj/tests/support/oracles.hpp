#pragma once
// Independent reference implementations used by the tests. Nothing here calls
// into the library's counting code; corpora are built through CorpusBuilder
// only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "diachrona/corpus.hpp"

namespace oracle {

using diachrona::CorpusIndex;
using diachrona::DocIndex;
using diachrona::LemmaId;

struct RandomCorpusOptions {
  std::size_t max_tokens = 1000;
  std::size_t max_vocab = 30;
  std::size_t max_docs = 12;
  double undated_share = 0.2;
  double range_share = 0.3;
  bool allow_empty_docs = true;
};

/// One document per text; whitespace-separated words are used as form and
/// lemma, POS "NOM". Dates are exact years, 0 meaning undated.
inline CorpusIndex from_texts(const std::vector<std::string>& texts,
                              const std::vector<int>& years = {}) {
  diachrona::CorpusBuilder b;
  for (std::size_t d = 0; d < texts.size(); ++d) {
    auto date = d < years.size() && years[d] ? diachrona::DateSpec::exact(years[d])
                                             : diachrona::DateSpec::undated();
    b.begin_document("d" + std::to_string(d), date);
    std::size_t pos = 0;
    const auto& t = texts[d];
    while (pos < t.size()) {
      auto end = t.find(' ', pos);
      if (end == std::string::npos) end = t.size();
      if (end > pos) {
        auto w = t.substr(pos, end - pos);
        b.add_token(w, "NOM", w);
      }
      pos = end + 1;
    }
  }
  return std::move(b).build();
}

inline std::string lemma_name(std::size_t i) { return "l" + std::to_string(i); }

/// Random corpus: vocab drawn uniformly in [2, max_vocab], tokens in [0, max_tokens].
inline CorpusIndex random_corpus(std::mt19937_64& rng, const RandomCorpusOptions& o = {}) {
  std::uniform_int_distribution<std::size_t> vocab_d(2, o.max_vocab);
  std::uniform_int_distribution<std::size_t> tokens_d(0, o.max_tokens);
  std::uniform_int_distribution<std::size_t> docs_d(1, o.max_docs);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<int> year_d(600, 1400);
  const char* pos[] = {"NOM", "ADJ", "VER"};

  auto vocab = vocab_d(rng);
  auto n = tokens_d(rng);
  auto ndocs = docs_d(rng);
  // random cut points
  std::vector<std::size_t> cuts{0, n};
  for (std::size_t i = 1; i < ndocs; ++i) cuts.push_back(std::uniform_int_distribution<std::size_t>(0, n)(rng));
  std::sort(cuts.begin(), cuts.end());
  if (!o.allow_empty_docs) cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  diachrona::CorpusBuilder b;
  std::uniform_int_distribution<std::size_t> lemma_d(0, vocab - 1);
  for (std::size_t d = 0; d + 1 < cuts.size(); ++d) {
    diachrona::DateSpec date;
    if (unit(rng) >= o.undated_share) {
      int y = year_d(rng);
      date = unit(rng) < o.range_share ? diachrona::DateSpec::range(y, y + year_d(rng) % 40)
                                       : diachrona::DateSpec::exact(y);
    }
    std::optional<std::string> typ;
    if (unit(rng) < 0.5) typ = unit(rng) < 0.5 ? "charter" : "letter";
    b.begin_document("doc" + std::to_string(d), date, typ);
    for (auto t = cuts[d]; t < cuts[d + 1]; ++t) {
      auto l = lemma_d(rng);
      auto name = lemma_name(l);
      b.add_token(name + (unit(rng) < 0.5 ? "" : "s"), pos[(l + (unit(rng) < 0.2)) % 3], name);
    }
  }
  if (!b.has_document()) b.begin_document("empty");
  return std::move(b).build();
}

/// Unordered pairs (i<j) within one document at distance <= w where exactly
/// one token is the pivot: neighbor -> count.
inline std::map<LemmaId, std::uint64_t> brute_pairs(const CorpusIndex& idx,
                                                    const std::vector<DocIndex>& docs,
                                                    LemmaId pivot, std::uint32_t w) {
  std::map<LemmaId, std::uint64_t> out;
  auto lemmas = idx.lemma_ids();
  for (auto d : docs) {
    const auto& doc = idx.documents()[d];
    for (std::uint64_t i = doc.token_start; i < doc.token_end(); ++i)
      for (std::uint64_t j = i + 1; j < doc.token_end(); ++j) {
        if (j - i > w) continue;
        bool pi = lemmas[i] == pivot, pj = lemmas[j] == pivot;
        if (pi == pj) continue;
        ++out[pi ? lemmas[j] : lemmas[i]];
      }
  }
  return out;
}

/// Pairs between two distinct lemmas a and b, any order.
inline std::uint64_t brute_pair(const CorpusIndex& idx, const std::vector<DocIndex>& docs,
                                LemmaId a, LemmaId b, std::uint32_t w) {
  std::uint64_t c = 0;
  auto lemmas = idx.lemma_ids();
  for (auto d : docs) {
    const auto& doc = idx.documents()[d];
    for (std::uint64_t i = doc.token_start; i < doc.token_end(); ++i)
      for (std::uint64_t j = i + 1; j < doc.token_end() && j - i <= w; ++j)
        if ((lemmas[i] == a && lemmas[j] == b) || (lemmas[i] == b && lemmas[j] == a)) ++c;
  }
  return c;
}

inline std::map<LemmaId, std::uint64_t> brute_freqs(const CorpusIndex& idx,
                                                    const std::vector<DocIndex>& docs) {
  std::map<LemmaId, std::uint64_t> f;
  for (auto d : docs) {
    const auto& doc = idx.documents()[d];
    for (auto i = doc.token_start; i < doc.token_end(); ++i) ++f[idx.lemma_ids()[i]];
  }
  return f;
}

inline std::vector<DocIndex> all_docs(const CorpusIndex& idx) {
  std::vector<DocIndex> v(idx.document_count());
  for (DocIndex i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

struct Ranked {
  LemmaId lemma;
  std::uint64_t pair_count;
  std::uint64_t freq;
  double dice;
};

/// Full recomputation of the ranked cooccurrent list.
inline std::vector<Ranked> brute_top(const CorpusIndex& idx, const std::vector<DocIndex>& docs,
                                     LemmaId pivot, std::uint32_t w, std::size_t k,
                                     const std::vector<std::string>& allowed_pos,
                                     std::uint64_t min_count) {
  auto pairs = brute_pairs(idx, docs, pivot, w);
  auto freqs = brute_freqs(idx, docs);
  std::map<LemmaId, std::uint64_t> allowed;
  for (auto d : docs) {
    const auto& doc = idx.documents()[d];
    for (auto i = doc.token_start; i < doc.token_end(); ++i) {
      const auto& tag = idx.pos_tags()[idx.pos_ids()[i]];
      if (std::find(allowed_pos.begin(), allowed_pos.end(), tag) != allowed_pos.end())
        ++allowed[idx.lemma_ids()[i]];
    }
  }
  std::vector<Ranked> out;
  for (auto [l, c] : pairs) {
    if (c < min_count) continue;
    if (!allowed_pos.empty() && 2 * allowed[l] < freqs[l]) continue;
    out.push_back({l, c, freqs[l], 2.0 * c / double(freqs[pivot] + freqs[l])});
  }
  std::sort(out.begin(), out.end(), [&](const Ranked& a, const Ranked& b) {
    if (a.dice != b.dice) return a.dice > b.dice;
    if (a.pair_count != b.pair_count) return a.pair_count > b.pair_count;
    return idx.lemmas()[a.lemma] < idx.lemmas()[b.lemma];
  });
  if (out.size() > k) out.resize(k);
  return out;
}

/// Pearson chi-square statistic divided by the grand total.
inline double chi2_over_n(const std::vector<std::vector<double>>& t) {
  double n = 0;
  std::vector<double> rs(t.size(), 0), cs(t.empty() ? 0 : t[0].size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      rs[i] += t[i][j];
      cs[j] += t[i][j];
      n += t[i][j];
    }
  double chi2 = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      double e = rs[i] * cs[j] / n;
      chi2 += (t[i][j] - e) * (t[i][j] - e) / e;
    }
  return chi2 / n;
}

/// Least-squares slope by solving the 2x2 normal equations for y = a + b x,
/// x = 1..k, in long double.
inline double normal_equation_slope(const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<long double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    long double x = static_cast<long double>(i + 1);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

}  // namespace oracle
