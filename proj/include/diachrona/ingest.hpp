#pragma once

#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diachrona/corpus.hpp"
#include "diachrona/error.hpp"

namespace diachrona {

/// One token line of a tagger's vertical output.
struct VerticalRecord {
  std::string form;
  std::string pos;
  std::string lemma;

  friend bool operator==(const VerticalRecord&, const VerticalRecord&) = default;
};

/// Lemma TreeTagger writes when it cannot lemmatize a form.
inline constexpr std::string_view kUnknownLemma = "<unknown>";
/// POS assigned by the lexicon fallback to forms it does not know.
inline constexpr std::string_view kUnknownPos = "<unk>";

struct IngestOptions {
  /// Tokens carrying one of these tags are dropped before positions are
  /// assigned, so cooccurrence windows are measured over words only.
  std::set<std::string, std::less<>> drop_pos{"PUN", "SENT"};
  /// Replace the tagger's "<unknown>" lemma by the surface form.
  bool unknown_lemma_as_form = true;
};

/// Parses "#doc key=value ..." headers followed by form<TAB>pos<TAB>lemma
/// lines into `builder`. Tokens before any header land in an implicit
/// undated "doc0". Throws ParseError naming the offending line.
void parse_vertical_into(std::istream& in, CorpusBuilder& builder,
                         const IngestOptions& options = {});

CorpusIndex parse_vertical(std::istream& in, const IngestOptions& options = {});
CorpusIndex parse_vertical(std::string_view text,
                           const IngestOptions& options = {});

/// Header fields of a "#doc" line.
struct DocHeader {
  std::string id;
  DateSpec date;
  std::optional<std::string> typology;
};

/// Parses one "#doc ..." line. Accepts dates "YYYY" and "YYYY-YYYY".
DocHeader parse_doc_header(std::string_view line, std::size_t line_no);

/// Maximal runs of letters; everything else separates. Case is preserved.
std::vector<std::string> tokenize_plain(std::string_view text);

/// Case-folded form -> (lemma, pos) lookup used when no tagger output exists.
class Lexicon {
 public:
  struct Entry {
    std::string lemma;
    std::string pos;
  };

  void add(std::string_view form, std::string lemma, std::string pos);
  /// Misses return {form, "<unk>"}.
  Entry lookup(std::string_view form) const;
  std::size_t size() const noexcept { return entries_.size(); }

  /// Reads form<TAB>lemma<TAB>pos lines; blank lines and lines starting
  /// with '#' are skipped.
  static Lexicon read_tsv(std::istream& in);

 private:
  std::unordered_map<std::string, Entry, detail::StringHash, std::equal_to<>>
      entries_;
};

std::vector<VerticalRecord> lemmatize(const std::vector<std::string>& forms,
                                      const Lexicon& lex);

/// Plain-text ingestion: "#doc" header lines as in the vertical format,
/// every other line is tokenized and lemmatized through `lex`.
void parse_plain_into(std::istream& in, const Lexicon& lex,
                      CorpusBuilder& builder, const IngestOptions& options = {});

}  // namespace diachrona
