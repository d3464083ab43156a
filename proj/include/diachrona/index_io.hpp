#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "diachrona/corpus.hpp"
#include "diachrona/error.hpp"

namespace diachrona {

// On-disk layout (all integers little-endian):
//   "CSEM" | u32 version
//   lemma, form, POS vocabularies: u32 count, then per entry u32 len + bytes
//   u64 N | u32 lemma_ids[N] | u32 form_ids[N] | u16 pos_ids[N]
//   u32 doc count, then per document:
//     len-prefixed doc_id | u8 date kind | i32 lo | i32 hi
//     len-prefixed typology (0 bytes = none) | u64 token_start | u32 token_len

inline constexpr std::uint32_t kIndexFormatVersion = 1;

enum class IndexErrc {
  Io,
  BadMagic,
  UnsupportedVersion,
  Truncated,
  IdOutOfRange,
  Malformed,
};

const char* to_string(IndexErrc code) noexcept;

class IndexError : public Error {
 public:
  IndexError(IndexErrc code, const std::string& detail);
  IndexErrc code() const noexcept { return code_; }

 private:
  IndexErrc code_;
};

std::vector<std::uint8_t> serialize_index(const CorpusIndex& index);
CorpusIndex deserialize_index(std::span<const std::uint8_t> bytes);

void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(const std::filesystem::path& path);

}  // namespace diachrona
