#pragma once

#include <cstdint>
#include <ostream>

namespace diachrona {

/// Parameters of a reproducible pseudo-Latin corpus in vertical format.
struct SynthOptions {
  std::uint64_t seed = 1;
  std::uint64_t tokens = 100000;
  std::uint32_t vocabulary = 5000;
  std::uint32_t mean_doc_length = 200;
  std::int32_t first_year = 700;
  std::int32_t last_year = 1350;
  /// Fraction of documents written without a date.
  double undated_share = 0.05;
  /// Fraction of token lines that are punctuation (tag PUN).
  double punctuation_share = 0.08;
};

/// Writes "#doc" headers and form/POS/lemma lines. Lemma frequencies are
/// Zipfian; the most frequent ranks carry real Latin kinship and church
/// vocabulary. Output depends only on the options (no std distributions).
/// Returns the number of word tokens written (punctuation excluded).
std::uint64_t write_synthetic_vertical(std::ostream& out, const SynthOptions& options);

}  // namespace diachrona
