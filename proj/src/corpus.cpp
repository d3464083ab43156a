#include "diachrona/corpus.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace diachrona {

Vocabulary Vocabulary::from_entries(std::vector<std::string> entries) {
  Vocabulary v;
  v.entries_.reserve(entries.size());
  v.lookup_.reserve(entries.size());
  for (auto& s : entries) {
    auto id = static_cast<std::uint32_t>(v.entries_.size());
    if (!v.lookup_.emplace(s, id).second)
      throw std::invalid_argument("duplicate vocabulary entry: " + s);
    v.entries_.push_back(std::move(s));
  }
  return v;
}

std::uint32_t Vocabulary::intern(std::string_view s) {
  if (auto it = lookup_.find(s); it != lookup_.end()) return it->second;
  if (entries_.size() >= std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("vocabulary full");
  auto id = static_cast<std::uint32_t>(entries_.size());
  entries_.emplace_back(s);
  lookup_.emplace(entries_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view s) const {
  if (auto it = lookup_.find(s); it != lookup_.end()) return it->second;
  return std::nullopt;
}

DateSpec DateSpec::range(std::int32_t lo, std::int32_t hi) {
  if (lo > hi) throw std::invalid_argument("date range with lo > hi");
  return {Kind::Range, lo, hi};
}

std::optional<std::int32_t> DateSpec::midpoint() const noexcept {
  if (!is_dated()) return std::nullopt;
  std::int64_t sum = std::int64_t{lo_} + hi_;
  // floor division, also for negative years
  std::int64_t mid = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
  return static_cast<std::int32_t>(mid);
}

CorpusIndex::CorpusIndex(Vocabulary lemmas, Vocabulary forms,
                         Vocabulary pos_tags, std::vector<LemmaId> lemma_ids,
                         std::vector<FormId> form_ids,
                         std::vector<PosId> pos_ids,
                         std::vector<Document> documents)
    : lemmas_(std::move(lemmas)),
      forms_(std::move(forms)),
      pos_tags_(std::move(pos_tags)),
      lemma_ids_(std::move(lemma_ids)),
      form_ids_(std::move(form_ids)),
      pos_ids_(std::move(pos_ids)),
      documents_(std::move(documents)) {
  const auto n = lemma_ids_.size();
  if (form_ids_.size() != n || pos_ids_.size() != n)
    throw std::invalid_argument("columnar arrays differ in length");
  if (pos_tags_.size() > std::size_t{std::numeric_limits<PosId>::max()} + 1)
    throw std::invalid_argument("too many POS tags for 16-bit ids");
  std::uint64_t next = 0;
  for (const auto& d : documents_) {
    if (d.token_start != next)
      throw std::invalid_argument("document token ranges not contiguous: " +
                                  d.doc_id);
    next = d.token_end();
  }
  if (next != n)
    throw std::invalid_argument("document lengths do not cover token arrays");
  auto check = [](auto ids, std::size_t vocab, const char* what) {
    for (auto id : ids)
      if (id >= vocab)
        throw std::invalid_argument(std::string(what) + " id out of range");
  };
  check(std::span<const LemmaId>(lemma_ids_), lemmas_.size(), "lemma");
  check(std::span<const FormId>(form_ids_), forms_.size(), "form");
  check(std::span<const PosId>(pos_ids_), pos_tags_.size(), "pos");
}

std::vector<DocIndex> CorpusIndex::dated_documents_by_date() const {
  std::vector<DocIndex> out;
  for (DocIndex i = 0; i < documents_.size(); ++i)
    if (documents_[i].date.is_dated()) out.push_back(i);
  std::stable_sort(out.begin(), out.end(), [this](DocIndex a, DocIndex b) {
    auto ma = *documents_[a].date.midpoint();
    auto mb = *documents_[b].date.midpoint();
    if (ma != mb) return ma < mb;
    return documents_[a].doc_id < documents_[b].doc_id;
  });
  return out;
}

void CorpusBuilder::begin_document(std::string doc_id, DateSpec date,
                                   std::optional<std::string> typology) {
  Document d;
  d.doc_id = std::move(doc_id);
  d.date = date;
  d.typology = std::move(typology);
  d.token_start = lemma_ids_.size();
  documents_.push_back(std::move(d));
}

void CorpusBuilder::add_token(std::string_view form, std::string_view pos,
                              std::string_view lemma) {
  if (documents_.empty()) begin_document("doc0");
  auto& doc = documents_.back();
  if (doc.token_len == std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("document too long: " + doc.doc_id);
  auto pos_id = pos_tags_.intern(pos);
  if (pos_id > std::numeric_limits<PosId>::max())
    throw std::length_error("too many POS tags for 16-bit ids");
  lemma_ids_.push_back(lemmas_.intern(lemma));
  form_ids_.push_back(forms_.intern(form));
  pos_ids_.push_back(static_cast<PosId>(pos_id));
  ++doc.token_len;
}

CorpusIndex CorpusBuilder::build() && {
  return CorpusIndex(std::move(lemmas_), std::move(forms_),
                     std::move(pos_tags_), std::move(lemma_ids_),
                     std::move(form_ids_), std::move(pos_ids_),
                     std::move(documents_));
}

DocSet::DocSet(std::vector<DocIndex> docs) : docs_(std::move(docs)) {
  std::sort(docs_.begin(), docs_.end());
  docs_.erase(std::unique(docs_.begin(), docs_.end()), docs_.end());
}

DocSet DocSet::all(const CorpusIndex& index) {
  std::vector<DocIndex> v(index.document_count());
  std::iota(v.begin(), v.end(), DocIndex{0});
  return DocSet(std::move(v));
}

bool DocSet::contains(DocIndex d) const {
  return std::binary_search(docs_.begin(), docs_.end(), d);
}

std::uint64_t DocSet::token_mass(const CorpusIndex& index) const {
  std::uint64_t t = 0;
  for (auto d : docs_) t += index.documents()[d].token_len;
  return t;
}

DocSet subcorpus(const CorpusIndex& index, const DocPredicate& filter) {
  std::vector<DocIndex> out;
  auto docs = index.documents();
  for (DocIndex i = 0; i < docs.size(); ++i)
    if (filter(docs[i])) out.push_back(i);
  return DocSet(std::move(out));
}

DocPredicate dated_within(std::int32_t lo, std::int32_t hi) {
  return [lo, hi](const Document& d) {
    auto m = d.date.midpoint();
    return m && *m >= lo && *m <= hi;
  };
}

DocPredicate is_dated() {
  return [](const Document& d) { return d.date.is_dated(); };
}

DocPredicate has_typology(std::string typology) {
  return [t = std::move(typology)](const Document& d) {
    return d.typology && *d.typology == t;
  };
}

}  // namespace diachrona
