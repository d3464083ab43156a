#include "diachrona/index_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <string_view>

namespace diachrona {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

namespace {

constexpr char kMagic[4] = {'C', 'S', 'E', 'M'};

template <typename T>
T byteswap(T v) {
  auto* p = reinterpret_cast<unsigned char*>(&v);
  for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
    std::swap(p[i], p[sizeof(T) - 1 - i]);
  return v;
}

class Writer {
 public:
  template <typename T>
  void put(T v) {
    if constexpr (std::endian::native == std::endian::big) v = byteswap(v);
    auto old = out_.size();
    out_.resize(old + sizeof(T));
    std::memcpy(out_.data() + old, &v, sizeof(T));
  }

  void put_string(std::string_view s) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max())
      throw IndexError(IndexErrc::Malformed, "string too long");
    put(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  template <typename T>
  void put_array(std::span<const T> values) {
    auto old = out_.size();
    out_.resize(old + values.size_bytes());
    if constexpr (std::endian::native == std::endian::little) {
      if (!values.empty())
        std::memcpy(out_.data() + old, values.data(), values.size_bytes());
    } else {
      auto* dst = out_.data() + old;
      for (T v : values) {
        v = byteswap(v);
        std::memcpy(dst, &v, sizeof(T));
        dst += sizeof(T);
      }
    }
  }

  void put_vocabulary(const Vocabulary& vocab) {
    put(static_cast<std::uint32_t>(vocab.size()));
    for (const auto& s : vocab.entries()) put_string(s);
  }

  std::vector<std::uint8_t> take() && { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  void need(std::uint64_t n, const char* what) const {
    if (n > in_.size() - pos_)
      throw IndexError(IndexErrc::Truncated, std::string("while reading ") + what);
  }

  template <typename T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    if constexpr (std::endian::native == std::endian::big) v = byteswap(v);
    return v;
  }

  std::string get_string(const char* what) {
    auto len = get<std::uint32_t>(what);
    need(len, what);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  template <typename T>
  std::vector<T> get_array(std::uint64_t n, const char* what) {
    if (n > (in_.size() - pos_) / sizeof(T))
      throw IndexError(IndexErrc::Truncated, std::string("while reading ") + what);
    std::vector<T> out(n);
    if (n != 0) std::memcpy(out.data(), in_.data() + pos_, n * sizeof(T));
    pos_ += n * sizeof(T);
    if constexpr (std::endian::native == std::endian::big)
      for (auto& v : out) v = byteswap(v);
    return out;
  }

  Vocabulary get_vocabulary(const char* what) {
    auto count = get<std::uint32_t>(what);
    std::vector<std::string> entries;
    // each entry needs at least its length prefix
    need(std::uint64_t{count} * 4, what);
    entries.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) entries.push_back(get_string(what));
    try {
      return Vocabulary::from_entries(std::move(entries));
    } catch (const std::invalid_argument& e) {
      throw IndexError(IndexErrc::Malformed, e.what());
    }
  }

  bool at_end() const noexcept { return pos_ == in_.size(); }
  std::span<const std::uint8_t> peek(std::size_t n) const {
    return in_.subspan(pos_, std::min(n, in_.size() - pos_));
  }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

template <typename T>
void check_ids(std::span<const T> ids, std::size_t vocab, const char* what) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] >= vocab)
      throw IndexError(IndexErrc::IdOutOfRange,
                       std::string(what) + " id " + std::to_string(ids[i]) +
                           " at token " + std::to_string(i));
}

}  // namespace

const char* to_string(IndexErrc code) noexcept {
  switch (code) {
    case IndexErrc::Io: return "i/o error";
    case IndexErrc::BadMagic: return "bad magic";
    case IndexErrc::UnsupportedVersion: return "unsupported version";
    case IndexErrc::Truncated: return "truncated file";
    case IndexErrc::IdOutOfRange: return "id out of vocabulary range";
    case IndexErrc::Malformed: return "malformed index";
  }
  return "unknown";
}

IndexError::IndexError(IndexErrc code, const std::string& detail)
    : Error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

std::vector<std::uint8_t> serialize_index(const CorpusIndex& index) {
  Writer w;
  for (char c : kMagic) w.put(static_cast<std::uint8_t>(c));
  w.put(kIndexFormatVersion);
  w.put_vocabulary(index.lemmas());
  w.put_vocabulary(index.forms());
  w.put_vocabulary(index.pos_tags());
  w.put(static_cast<std::uint64_t>(index.total_tokens()));
  w.put_array(index.lemma_ids());
  w.put_array(index.form_ids());
  w.put_array(index.pos_ids());
  if (index.document_count() > std::numeric_limits<std::uint32_t>::max())
    throw IndexError(IndexErrc::Malformed, "too many documents");
  w.put(static_cast<std::uint32_t>(index.document_count()));
  for (const auto& d : index.documents()) {
    w.put_string(d.doc_id);
    w.put(static_cast<std::uint8_t>(d.date.kind()));
    w.put(d.date.lo());
    w.put(d.date.hi());
    w.put_string(d.typology.value_or(std::string{}));
    w.put(d.token_start);
    w.put(d.token_len);
  }
  return std::move(w).take();
}

CorpusIndex deserialize_index(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.peek(4);
  if (std::memcmp(magic.data(), kMagic, magic.size()) != 0)
    throw IndexError(IndexErrc::BadMagic, "");
  if (magic.size() < 4) throw IndexError(IndexErrc::Truncated, "file shorter than the magic");
  r.skip(4);
  auto version = r.get<std::uint32_t>("version");
  if (version != kIndexFormatVersion)
    throw IndexError(IndexErrc::UnsupportedVersion,
                     "version " + std::to_string(version));

  auto lemmas = r.get_vocabulary("lemma vocabulary");
  auto forms = r.get_vocabulary("form vocabulary");
  auto pos_tags = r.get_vocabulary("POS vocabulary");
  auto n = r.get<std::uint64_t>("token count");
  auto lemma_ids = r.get_array<LemmaId>(n, "lemma ids");
  auto form_ids = r.get_array<FormId>(n, "form ids");
  auto pos_ids = r.get_array<PosId>(n, "POS ids");
  check_ids<LemmaId>(lemma_ids, lemmas.size(), "lemma");
  check_ids<FormId>(form_ids, forms.size(), "form");
  check_ids<PosId>(pos_ids, pos_tags.size(), "POS");

  auto doc_count = r.get<std::uint32_t>("document count");
  std::vector<Document> docs;
  docs.reserve(std::min<std::uint32_t>(doc_count, 1u << 20));
  for (std::uint32_t i = 0; i < doc_count; ++i) {
    Document d;
    d.doc_id = r.get_string("document id");
    auto kind = r.get<std::uint8_t>("date kind");
    auto lo = r.get<std::int32_t>("date");
    auto hi = r.get<std::int32_t>("date");
    switch (kind) {
      case 0: d.date = DateSpec::undated(); break;
      case 1:
        if (lo != hi) throw IndexError(IndexErrc::Malformed, "exact date with lo != hi");
        d.date = DateSpec::exact(lo);
        break;
      case 2:
        if (lo > hi) throw IndexError(IndexErrc::Malformed, "date range with lo > hi");
        d.date = DateSpec::range(lo, hi);
        break;
      default:
        throw IndexError(IndexErrc::Malformed, "date kind " + std::to_string(kind));
    }
    auto typology = r.get_string("typology");
    if (!typology.empty()) d.typology = std::move(typology);
    d.token_start = r.get<std::uint64_t>("token start");
    d.token_len = r.get<std::uint32_t>("token length");
    docs.push_back(std::move(d));
  }
  if (!r.at_end()) throw IndexError(IndexErrc::Malformed, "trailing bytes");

  try {
    return CorpusIndex(std::move(lemmas), std::move(forms), std::move(pos_tags),
                       std::move(lemma_ids), std::move(form_ids),
                       std::move(pos_ids), std::move(docs));
  } catch (const std::invalid_argument& e) {
    throw IndexError(IndexErrc::Malformed, e.what());
  }
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  auto bytes = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IndexError(IndexErrc::Io, "cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IndexError(IndexErrc::Io, "write failed: " + path.string());
}

CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError(IndexErrc::Io, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  auto size = in.tellg();
  if (size < 0) throw IndexError(IndexErrc::Io, "cannot size " + path.string());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (!bytes.empty() &&
      !in.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size())))
    throw IndexError(IndexErrc::Io, "read failed: " + path.string());
  return deserialize_index(bytes);
}

}  // namespace diachrona
