#include "diachrona/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace diachrona {

namespace {

// splitmix64: tiny, portable and fully specified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t state_;
};

struct NamedLemma {
  std::string_view lemma;
  std::string_view pos;
  std::array<std::string_view, 3> forms;
};

constexpr std::array<NamedLemma, 32> kNamed = {{
    {"et", "CON", {"et", "Et", "et"}},
    {"in", "PRE", {"in", "In", "in"}},
    {"de", "PRE", {"de", "De", "de"}},
    {"sum", "VER", {"est", "sunt", "esse"}},
    {"qui", "PRO", {"qui", "quae", "quod"}},
    {"ad", "PRE", {"ad", "Ad", "ad"}},
    {"non", "ADV", {"non", "Non", "non"}},
    {"deus", "NOM", {"deus", "dei", "deo"}},
    {"dominus", "NOM", {"dominus", "domini", "domino"}},
    {"pater", "NOM", {"pater", "patris", "patres"}},
    {"filius", "NOM", {"filius", "filii", "filio"}},
    {"sanctus", "ADJ", {"sanctus", "sancti", "sancto"}},
    {"ecclesia", "NOM", {"ecclesia", "ecclesiae", "ecclesiam"}},
    {"episcopus", "NOM", {"episcopus", "episcopi", "episcopo"}},
    {"mater", "NOM", {"mater", "matris", "matrem"}},
    {"frater", "NOM", {"frater", "fratris", "fratres"}},
    {"terra", "NOM", {"terra", "terrae", "terram"}},
    {"rex", "NOM", {"rex", "regis", "regem"}},
    {"comes", "NOM", {"comes", "comitis", "comitem"}},
    {"monasterium", "NOM", {"monasterium", "monasterii", "monasterio"}},
    {"abbas", "NOM", {"abbas", "abbatis", "abbati"}},
    {"uxor", "NOM", {"uxor", "uxoris", "uxorem"}},
    {"spiritus", "NOM", {"spiritus", "spiritui", "spiritum"}},
    {"verbum", "NOM", {"verbum", "verbi", "verbo"}},
    {"homo", "NOM", {"homo", "hominis", "homines"}},
    {"natura", "NOM", {"natura", "naturae", "naturam"}},
    {"caritas", "NOM", {"caritas", "caritatis", "caritatem"}},
    {"villa", "NOM", {"villa", "villae", "villam"}},
    {"donatio", "NOM", {"donatio", "donationis", "donationem"}},
    {"noster", "ADJ", {"noster", "nostri", "nostro"}},
    {"paternitas", "NOM", {"paternitas", "paternitatis", "paternitatem"}},
    {"avus", "NOM", {"avus", "avi", "avo"}},
}};

constexpr std::array<std::string_view, 5> kGenericPos = {"NOM", "NOM", "ADJ", "VER", "ADV"};
constexpr std::array<std::string_view, 4> kSuffixes = {"", "is", "um", "ibus"};
constexpr std::array<std::string_view, 3> kTypologies = {"charter", "letter", "treatise"};

}  // namespace

std::uint64_t write_synthetic_vertical(std::ostream& out, const SynthOptions& o) {
  Rng rng(o.seed);
  const std::uint32_t vocab = std::max<std::uint32_t>(o.vocabulary, 1);

  // Zipf(1) cumulative weights over ranks.
  std::vector<double> cdf(vocab);
  double acc = 0.0;
  for (std::uint32_t r = 0; r < vocab; ++r) cdf[r] = (acc += 1.0 / (r + 1.0));
  for (auto& c : cdf) c /= acc;

  std::string buf;
  buf.reserve(1 << 20);
  auto flush = [&] {
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.clear();
  };

  const std::uint32_t mean = std::max<std::uint32_t>(o.mean_doc_length, 1);
  const std::int64_t span = std::max<std::int64_t>(0, std::int64_t{o.last_year} - o.first_year);
  std::uint64_t written = 0;
  for (std::uint64_t doc = 0; written < o.tokens; ++doc) {
    buf += "#doc id=d" + std::to_string(doc);
    if (rng.unit() >= o.undated_share) {
      auto year = o.first_year + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span) + 1));
      buf += " date=" + std::to_string(year);
      if (rng.unit() < 0.2) buf += "-" + std::to_string(year + 1 + static_cast<std::int64_t>(rng.below(30)));
    }
    buf += " typology=";
    buf += kTypologies[rng.below(kTypologies.size())];
    buf += '\n';

    auto len = 1 + rng.below(2ull * mean - 1);
    len = std::min<std::uint64_t>(len, o.tokens - written);
    for (std::uint64_t t = 0; t < len; ++t) {
      if (rng.unit() < o.punctuation_share) buf += ",\tPUN\t,\n";
      auto rank = static_cast<std::uint32_t>(
          std::lower_bound(cdf.begin(), cdf.end(), rng.unit()) - cdf.begin());
      rank = std::min(rank, vocab - 1);
      auto variant = rng.below(3);
      if (rank < kNamed.size()) {
        const auto& n = kNamed[rank];
        buf += n.forms[variant];
        buf += '\t';
        buf += n.pos;
        buf += '\t';
        buf += n.lemma;
      } else {
        std::string lemma = "lemma" + std::to_string(rank);
        buf += lemma;
        buf += kSuffixes[variant];
        buf += '\t';
        buf += kGenericPos[rank % kGenericPos.size()];
        buf += '\t';
        buf += lemma;
      }
      buf += '\n';
      if (buf.size() > (1 << 20) - 256) flush();
    }
    written += len;
    buf += ".\tSENT\t.\n";
  }
  flush();
  return written;
}

}  // namespace diachrona
