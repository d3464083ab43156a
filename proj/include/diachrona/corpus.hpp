#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace diachrona {

using LemmaId = std::uint32_t;
using FormId = std::uint32_t;
using PosId = std::uint16_t;
using DocIndex = std::uint32_t;

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
}  // namespace detail

/// Interned string table with dense ids starting at 0.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Builds from an ordered entry list; throws std::invalid_argument on a
  /// duplicate string.
  static Vocabulary from_entries(std::vector<std::string> entries);

  std::uint32_t intern(std::string_view s);
  std::optional<std::uint32_t> find(std::string_view s) const;

  const std::string& operator[](std::uint32_t id) const { return entries_[id]; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const std::string> entries() const noexcept { return entries_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::uint32_t, detail::StringHash,
                     std::equal_to<>>
      lookup_;
};

/// Dating of a document as a closed year interval.
class DateSpec {
 public:
  enum class Kind : std::uint8_t { Undated = 0, Exact = 1, Range = 2 };

  DateSpec() = default;
  static DateSpec undated() { return {}; }
  static DateSpec exact(std::int32_t year) { return {Kind::Exact, year, year}; }
  /// Throws std::invalid_argument when lo > hi.
  static DateSpec range(std::int32_t lo, std::int32_t hi);

  Kind kind() const noexcept { return kind_; }
  bool is_dated() const noexcept { return kind_ != Kind::Undated; }
  std::int32_t lo() const noexcept { return lo_; }
  std::int32_t hi() const noexcept { return hi_; }

  /// floor((lo + hi) / 2); empty for undated documents.
  std::optional<std::int32_t> midpoint() const noexcept;

  friend bool operator==(const DateSpec&, const DateSpec&) = default;

 private:
  DateSpec(Kind k, std::int32_t lo, std::int32_t hi) : kind_(k), lo_(lo), hi_(hi) {}

  Kind kind_ = Kind::Undated;
  std::int32_t lo_ = 0;
  std::int32_t hi_ = 0;
};

struct Document {
  std::string doc_id;
  DateSpec date;
  std::optional<std::string> typology;
  std::uint64_t token_start = 0;
  std::uint32_t token_len = 0;

  std::uint64_t token_end() const noexcept { return token_start + token_len; }

  friend bool operator==(const Document&, const Document&) = default;
};

/// Immutable lemmatized corpus: three vocabularies, three columnar token
/// arrays and the document table in ingestion order.
class CorpusIndex {
 public:
  CorpusIndex() = default;

  /// Validates every structural invariant and throws std::invalid_argument
  /// on the first violation.
  CorpusIndex(Vocabulary lemmas, Vocabulary forms, Vocabulary pos_tags,
              std::vector<LemmaId> lemma_ids, std::vector<FormId> form_ids,
              std::vector<PosId> pos_ids, std::vector<Document> documents);

  const Vocabulary& lemmas() const noexcept { return lemmas_; }
  const Vocabulary& forms() const noexcept { return forms_; }
  const Vocabulary& pos_tags() const noexcept { return pos_tags_; }

  std::span<const LemmaId> lemma_ids() const noexcept { return lemma_ids_; }
  std::span<const FormId> form_ids() const noexcept { return form_ids_; }
  std::span<const PosId> pos_ids() const noexcept { return pos_ids_; }

  std::span<const Document> documents() const noexcept { return documents_; }
  std::size_t document_count() const noexcept { return documents_.size(); }
  std::uint64_t total_tokens() const noexcept { return lemma_ids_.size(); }

  /// Lemma ids of one document's tokens.
  std::span<const LemmaId> document_lemmas(DocIndex d) const noexcept {
    const auto& doc = documents_[d];
    return std::span<const LemmaId>(lemma_ids_).subspan(doc.token_start,
                                                        doc.token_len);
  }

  /// Dated documents ordered by date midpoint, ties by doc_id, then by
  /// ingestion order.
  std::vector<DocIndex> dated_documents_by_date() const;

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  Vocabulary lemmas_;
  Vocabulary forms_;
  Vocabulary pos_tags_;
  std::vector<LemmaId> lemma_ids_;
  std::vector<FormId> form_ids_;
  std::vector<PosId> pos_ids_;
  std::vector<Document> documents_;
};

/// Single-owner incremental construction of a CorpusIndex.
class CorpusBuilder {
 public:
  void begin_document(std::string doc_id, DateSpec date = {},
                      std::optional<std::string> typology = std::nullopt);
  /// Appends a token to the current document, opening an implicit undated
  /// "doc0" if none is open.
  void add_token(std::string_view form, std::string_view pos,
                 std::string_view lemma);
  bool has_document() const noexcept { return !documents_.empty(); }

  CorpusIndex build() &&;

 private:
  Vocabulary lemmas_;
  Vocabulary forms_;
  Vocabulary pos_tags_;
  std::vector<LemmaId> lemma_ids_;
  std::vector<FormId> form_ids_;
  std::vector<PosId> pos_ids_;
  std::vector<Document> documents_;
};

/// Sorted set of document positions within one CorpusIndex.
class DocSet {
 public:
  DocSet() = default;
  /// Sorts and deduplicates.
  explicit DocSet(std::vector<DocIndex> docs);
  static DocSet all(const CorpusIndex& index);

  std::span<const DocIndex> docs() const noexcept { return docs_; }
  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }
  bool contains(DocIndex d) const;
  auto begin() const noexcept { return docs_.begin(); }
  auto end() const noexcept { return docs_.end(); }

  /// Sum of token_len over members.
  std::uint64_t token_mass(const CorpusIndex& index) const;

  friend bool operator==(const DocSet&, const DocSet&) = default;

 private:
  std::vector<DocIndex> docs_;
};

using DocPredicate = std::function<bool(const Document&)>;

DocSet subcorpus(const CorpusIndex& index, const DocPredicate& filter);

/// Dated documents whose midpoint lies in [lo, hi].
DocPredicate dated_within(std::int32_t lo, std::int32_t hi);
DocPredicate is_dated();
DocPredicate has_typology(std::string typology);

}  // namespace diachrona
