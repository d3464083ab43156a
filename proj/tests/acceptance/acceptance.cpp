// Acceptance gate: runs every criterion (or one, with --criterion N) and
// prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// selected criterion fails.

#include <unistd.h>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "diachrona/cli.hpp"
#include "diachrona/cooc.hpp"
#include "diachrona/diachrony.hpp"
#include "diachrona/format.hpp"
#include "diachrona/frequency.hpp"
#include "diachrona/index_io.hpp"
#include "diachrona/ingest.hpp"
#include "diachrona/parallel.hpp"
#include "diachrona/semfield.hpp"
#include "diachrona/synth.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace diachrona;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("diachrona_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Peak resident set size in bytes (VmHWM), 0 if unavailable.
std::uint64_t peak_rss() {
  std::ifstream f("/proc/self/status");
  std::string line;
  while (std::getline(f, line))
    if (line.rfind("VmHWM:", 0) == 0) return std::stoull(line.substr(6)) * 1024;
  return 0;
}

// ---------------------------------------------------------------------------

Outcome ratios() {
  Outcome o;
  struct Case {
    std::uint64_t a, b;
    double expect;
  } cases[] = {{8670, 3244, 2.672}, {1608, 323, 4.978}, {50273, 8143, 6.174}};
  for (auto c : cases) {
    auto r = ratio(c.a, c.b);
    if (std::abs(r.value - c.expect) > 0.001 || r.numerator != c.a || r.denominator != c.b)
      o.fail(std::to_string(c.a) + "/" + std::to_string(c.b) + " = " + format_double(r.value));
  }
  // the early-PL ratio is printed with one decimal: 6,2
  if (format_fixed(ratio(50273, 8143).value, 1) != "6.2") o.fail("50273/8143 does not round to 6.2");
  if (o.pass) o.detail = "2.6726, 4.9783, 6.1738";
  return o;
}

Outcome kinship_table() {
  Outcome o;
  // rows: mater pater filius filia avus proavus abavus atavus tritavus
  // columns: Antique, Vulgate, CEMA, OpenMGH, PL II-V, PL V-VII, PL VIII-IX,
  //          PL X-mid XI, PL mid XI-XIII, Corpus Thomisticum, Latin XV
  std::vector<std::vector<std::uint64_t>> cells = {
      {3244, 323, 25425, 4074, 8143, 3472, 7059, 9357, 9943, 2330, 1685},
      {8670, 1608, 47503, 14699, 50273, 21676, 45484, 40257, 48410, 16850, 6098},
      {5354, 4689, 175945, 18865, 63772, 20793, 54926, 47466, 64119, 20135, 6504},
      {1586, 1194, 21275, 3365, 4130, 1931, 4271, 5321, 5447, 895, 835},
      {779, 2, 3993, 709, 492, 370, 672, 774, 607, 109, 207},
      {108, 0, 384, 113, 73, 42, 66, 107, 72, 13, 25},
      {15, 0, 23, 20, 1, 6, 13, 18, 12, 1, 0},
      {23, 0, 103, 42, 22, 22, 29, 49, 21, 0, 5},
      {7, 0, 0, 9, 0, 12, 5, 10, 0, 0, 0},
  };
  const std::vector<std::uint64_t> published_column_sums = {19786, 7816,  274651, 41896,
                                                            126906, 48324, 112525, 103359,
                                                            128631, 40333, 15359};
  auto t = CountTable::from_cells(cells);
  if (t.row_sums[1] != 301528) o.fail("pater row sums to " + std::to_string(t.row_sums[1]));
  if (t.grand_total != 919586) o.fail("grand total " + std::to_string(t.grand_total));
  if (t.column_sums != published_column_sums) o.fail("column sums differ from the published Somme row");
  if (o.pass) o.detail = "pater 301528, total 919586";
  return o;
}

// Shared by criteria 3 and 4: corpus i and its window.
struct RandomCase {
  CorpusIndex index;
  std::uint32_t window;
  std::mt19937_64 rng;
};

RandomCase random_case(int i) {
  std::mt19937_64 rng(0xC00C + static_cast<std::uint64_t>(i));
  auto index = oracle::random_corpus(rng);
  auto w = static_cast<std::uint32_t>(std::uniform_int_distribution<int>(1, 6)(rng));
  return {std::move(index), w, std::move(rng)};
}

Outcome cooccurrence_oracle() {
  Outcome o;
  std::size_t tables = 0, lists = 0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    auto [index, w, rng] = random_case(i);
    auto docs = (i % 3 == 2) ? subcorpus(index, has_typology("charter")) : DocSet::all(index);
    std::vector<DocIndex> dv(docs.begin(), docs.end());
    auto freqs = oracle::brute_freqs(index, dv);
    for (LemmaId p = 0; p < index.lemmas().size(); ++p) {
      auto table = cooc_counts(index, docs, p, w);
      auto expect = oracle::brute_pairs(index, dv, p, w);
      ++tables;
      if (table.pair_counts != expect) {
        o.fail("corpus " + std::to_string(i) + " pivot " + index.lemmas()[p] + ": pair counts differ");
        break;
      }
      if (table.pivot_freq != (freqs.count(p) ? freqs[p] : 0)) o.fail("pivot frequency differs");
      for (auto [l, f] : table.neighbor_freqs)
        if (freqs[l] != f) o.fail("neighbor frequency differs");

      std::vector<std::string> pos;
      if (rng() % 2) pos = {"NOM", "ADJ"};
      auto k = 1 + rng() % 12;
      auto min = 1 + rng() % 3;
      PosFilter filter{{pos.begin(), pos.end()}};
      auto got = top_cooccurrents(index, docs, index.lemmas()[p], w, k, filter, min);
      auto want = freqs.count(p) ? oracle::brute_top(index, dv, p, w, k, pos, min)
                                 : std::vector<oracle::Ranked>{};
      ++lists;
      bool same = got.size() == want.size();
      for (std::size_t r = 0; same && r < got.size(); ++r)
        same = got[r].lemma == want[r].lemma && got[r].pair_count == want[r].pair_count &&
               got[r].freq == want[r].freq && got[r].dice == want[r].dice;
      if (!same) {
        o.fail("corpus " + std::to_string(i) + " pivot " + index.lemmas()[p] + ": ranked list differs");
        break;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(tables) + " tables, " + std::to_string(lists) + " ranked lists";
  return o;
}

Outcome dice_bounds() {
  Outcome o;
  std::size_t checked = 0, above = 0;
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    auto [index, w, rng] = random_case(i);
    auto docs = DocSet::all(index);
    auto hist = lemma_histogram(index, docs);
    for (LemmaId a = 0; a < index.lemmas().size(); ++a) {
      auto table = cooc_counts(index, docs, a, w);
      for (LemmaId b = a + 1; b < index.lemmas().size(); ++b) {
        if (hist[a] + hist[b] == 0) continue;
        auto it = table.pair_counts.find(b);
        std::uint64_t ab = it == table.pair_counts.end() ? 0 : it->second;
        auto back = cooc_counts(index, docs, b, w).pair_counts;
        std::uint64_t ba = back.count(a) ? back.at(a) : 0;
        double d_ab = dice(ab, hist[a], hist[b]);
        double d_ba = dice(ba, hist[b], hist[a]);
        ++checked;
        if (d_ab != d_ba) o.fail("asymmetric dice in corpus " + std::to_string(i));
        if (d_ab < 0) o.fail("negative dice");
        if (d_ab > w) {
          ++above;
          if (d_ab / w > worst) worst = d_ab / w;
        }
      }
    }
  }
  if (above)
    o.fail(std::to_string(above) + " of " + std::to_string(checked) +
           " pairs have dice > w (max dice/w = " + format_fixed(worst, 3) + ")");
  if (o.pass) o.detail = std::to_string(checked) + " pairs";
  return o;
}

Outcome tranching() {
  Outcome o;
  std::mt19937_64 rng(5150);
  for (int c = 0; c < 100 && o.pass; ++c) {
    CorpusBuilder b;
    auto ndocs = std::uniform_int_distribution<int>(10, 80)(rng);
    std::uint64_t total = 0, longest = 0;
    for (int d = 0; d < ndocs; ++d) {
      int year = std::uniform_int_distribution<int>(700, 1350)(rng);
      auto date = rng() % 4 == 0 ? DateSpec::range(year, year + static_cast<int>(rng() % 50))
                                 : DateSpec::exact(year);
      if (rng() % 10 == 0) date = DateSpec::undated();
      b.begin_document("doc" + std::to_string(d), date);
      auto len = std::uniform_int_distribution<int>(1, 300)(rng);
      for (int t = 0; t < len; ++t) b.add_token("w", "NOM", "w");
      if (date.is_dated()) {
        total += len;
        longest = std::max<std::uint64_t>(longest, len);
      }
    }
    auto index = std::move(b).build();
    std::size_t dated = 0;
    for (const auto& d : index.documents()) dated += d.date.is_dated();
    if (dated < 10) continue;
    auto ts = make_tranches(index, 10);
    if (ts.k() != 10 || ts.boundaries.size() != 11) {
      o.fail("not 10 tranches");
      break;
    }
    if (ts.boundaries.front() != 0 || ts.boundaries.back() != dated) o.fail("boundaries do not span the dated documents");
    std::uint64_t sum = 0;
    std::optional<std::int32_t> prev_max;
    for (std::size_t t = 0; t < 10; ++t) {
      if (ts.boundaries[t] >= ts.boundaries[t + 1]) o.fail("empty or unordered tranche");
      std::uint64_t mass = 0;
      std::int32_t lo = INT32_MAX, hi = INT32_MIN;
      for (auto i = ts.boundaries[t]; i < ts.boundaries[t + 1]; ++i) {
        const auto& doc = index.documents()[ts.order[i]];
        mass += doc.token_len;
        lo = std::min(lo, *doc.date.midpoint());
        hi = std::max(hi, *doc.date.midpoint());
      }
      if (mass != ts.token_masses[t]) o.fail("reported mass differs from recount");
      if (prev_max && *prev_max > lo) o.fail("tranches not date-monotone");
      prev_max = hi;
      if (std::abs(static_cast<double>(mass) * 10 - static_cast<double>(total)) > 10.0 * longest)
        o.fail("corpus " + std::to_string(c) + ": tranche mass " + std::to_string(mass) +
               " farther than " + std::to_string(longest) + " from T/10");
      sum += mass;
    }
    if (sum != total) o.fail("masses do not sum to T");
    // every dated document exactly once
    auto order = ts.order;
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end() || order.size() != dated)
      o.fail("dated documents not partitioned");
  }
  if (o.pass) o.detail = "100 corpora";
  return o;
}

Outcome trend_detection() {
  Outcome o;
  // 10 tranches of 3 equal documents; y sits next to the pivot everywhere,
  // x only from tranche 6 on. Filler g pads every document to 12 tokens.
  std::vector<std::string> texts;
  std::vector<int> years;
  for (int t = 0; t < 10; ++t)
    for (int d = 0; d < 3; ++d) {
      texts.push_back(t >= 5 ? "p y x g g g g g g g g g" : "p y g g g g g g g g g g");
      years.push_back(800 + 30 * t + d);
    }
  auto index = oracle::from_texts(texts, years);
  auto ts = make_tranches(index, 10);
  auto report = evolving_cooccurrents(index, ts, "p", 5, {}, 1, 40);
  auto find = [&](std::string_view l) -> const TrendEntry* {
    for (const auto& e : report.entries)
      if (index.lemmas()[e.lemma] == l) return &e;
    return nullptr;
  };
  const auto* x = find("x");
  const auto* y = find("y");
  if (report.entries.empty() || index.lemmas()[report.entries[0].lemma] != "x") o.fail("x is not ranked first");
  if (!x || x->direction != TrendDirection::Rising) o.fail("x is not rising");
  if (!y || !(std::abs(y->score) < 0.1 * std::abs(x ? x->score : 0))) o.fail("y score not below 0.1 |score(x)|");
  if (o.pass) o.detail = "score(x) = " + format_double(x->score) + ", score(y) = " + format_double(y->score);
  return o;
}

Outcome correspondence() {
  Outcome o;
  auto a = correspondence_analysis(Matrix::from_rows({{4, 2}, {2, 1}}));
  if (!(a.total_inertia <= 1e-12)) o.fail("independence table inertia " + format_double(a.total_inertia));

  auto b = correspondence_analysis(Matrix::from_rows({{1, 0}, {0, 1}}));
  double r0 = b.row_coords(0, 0), r1 = b.row_coords(1, 0);
  if (std::abs(std::abs(r0) - 1) > 1e-10 || std::abs(r0 + r1) > 1e-10) o.fail("identity table coordinates " + format_double(r0) + ", " + format_double(r1));
  if (std::abs(b.inertia_fractions[0] - 1) > 1e-10) o.fail("identity table first-axis fraction");

  std::mt19937_64 rng(77);
  double worst_chi = 0, worst_orth = 0, worst_rec = 0;
  for (int c = 0; c < 50; ++c) {
    auto rows = std::uniform_int_distribution<int>(2, 15)(rng);
    auto cols = std::uniform_int_distribution<int>(2, 15)(rng);
    std::vector<std::vector<double>> t(rows, std::vector<double>(cols));
    for (auto& r : t)
      for (auto& v : r) v = rng() % 3 == 0 ? 0.0 : static_cast<double>(rng() % 50);
    for (int i = 0; i < rows; ++i) t[i][i % cols] += 1;
    for (int j = 0; j < cols; ++j) t[j % rows][j] += 1;
    auto ca = correspondence_analysis(Matrix::from_rows(t));
    worst_chi = std::max(worst_chi, std::abs(ca.total_inertia - oracle::chi2_over_n(t)));

    const auto& s = ca.svd;
    auto orth = [](const Matrix& m) {
      auto g = m.transposed() * m;
      return (g - Matrix::identity(g.rows())).frobenius_norm();
    };
    worst_orth = std::max({worst_orth, orth(s.u), orth(s.v)});
    Matrix sigma(s.singular_values.size(), s.singular_values.size());
    for (std::size_t i = 0; i < s.singular_values.size(); ++i) sigma(i, i) = s.singular_values[i];
    auto rec = (ca.residuals - s.u * sigma * s.v.transposed()).frobenius_norm();
    worst_rec = std::max(worst_rec, rec / ca.residuals.frobenius_norm());
  }
  if (worst_chi > 1e-10) o.fail("inertia vs chi2/N off by " + format_double(worst_chi));
  if (worst_orth > 1e-8) o.fail("orthonormality residual " + format_double(worst_orth));
  if (worst_rec > 1e-8) o.fail("reconstruction residual " + format_double(worst_rec));
  if (o.pass)
    o.detail = "max |inertia - chi2/N| " + format_double(worst_chi) + ", orth " + format_double(worst_orth) +
               ", recon " + format_double(worst_rec);
  return o;
}

Outcome series_conservation() {
  Outcome o;
  std::size_t series = 0;
  for (int c = 0; c < 60; ++c) {
    std::mt19937_64 rng(8800 + c);
    auto index = oracle::random_corpus(rng, {.max_tokens = 2000, .max_docs = 40});
    std::vector<DocIndex> dated;
    for (DocIndex d = 0; d < index.document_count(); ++d)
      if (index.documents()[d].date.is_dated()) dated.push_back(d);
    auto freqs = oracle::brute_freqs(index, dated);
    for (std::int32_t width : {25, 50, 100})
      for (LemmaId l = 0; l < index.lemmas().size(); ++l) {
        auto ts = time_series(index, index.lemmas()[l], width);
        std::uint64_t sum = 0;
        for (const auto& b : ts.bins) sum += b.count;
        ++series;
        if (sum != (freqs.count(l) ? freqs[l] : 0))
          o.fail("corpus " + std::to_string(c) + " width " + std::to_string(width) + " lemma " +
                 index.lemmas()[l]);
      }
  }
  if (o.pass) o.detail = std::to_string(series) + " series";
  return o;
}

Outcome index_round_trip() {
  Outcome o;
  Scratch scratch;
  for (int c = 0; c < 50; ++c) {
    CorpusIndex index;
    if (c > 0) {
      std::mt19937_64 rng(4242 + c);
      index = oracle::random_corpus(rng);
    }
    auto path = scratch.dir / ("c" + std::to_string(c) + ".csem");
    auto again = scratch.dir / ("c" + std::to_string(c) + "b.csem");
    save_index(index, path);
    auto loaded = load_index(path);
    if (!(loaded == index)) o.fail("corpus " + std::to_string(c) + " not equal after load");
    save_index(loaded, again);
    if (slurp(path) != slurp(again)) o.fail("corpus " + std::to_string(c) + " re-save differs");
  }
  if (o.pass) o.detail = "50 corpora, first empty";
  return o;
}

Outcome scale() {
  Outcome o;
  Scratch scratch;
  auto vert = scratch.dir / "synthetic.vert";
  {
    std::ofstream f(vert, std::ios::binary);
    SynthOptions so;
    so.seed = 20240501;
    so.tokens = 10'000'000;
    so.vocabulary = 50000;
    write_synthetic_vertical(f, so);
  }
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::ifstream in(vert, std::ios::binary);
  auto index = parse_vertical(in);
  save_index(index, scratch.dir / "synthetic.csem");
  auto t1 = clock::now();
  auto top = top_cooccurrents(index, DocSet::all(index), "pater", 5, 50, {}, 1);
  auto t2 = clock::now();
  double build_s = std::chrono::duration<double>(t1 - t0).count();
  double query_s = std::chrono::duration<double>(t2 - t1).count();
  auto rss = peak_rss();
  if (index.total_tokens() != 10'000'000) o.fail("indexed " + std::to_string(index.total_tokens()) + " tokens");
  if (top.size() != 50) o.fail("expected 50 cooccurrents");
  if (build_s + query_s >= 60) o.fail("took " + format_fixed(build_s + query_s, 1) + " s");
  if (rss == 0 || rss >= (2ull << 30)) o.fail("peak RSS " + std::to_string(rss >> 20) + " MiB");
  o.detail = (o.pass ? "" : o.detail + "; ") + "build " + format_fixed(build_s, 2) + " s, query " +
             format_fixed(query_s, 2) + " s, peak RSS " + std::to_string(rss >> 20) + " MiB, " +
             std::to_string(max_workers()) + " workers";
  return o;
}

Outcome determinism() {
  Outcome o;
  Scratch scratch;
  const std::vector<std::string> outputs = {"series.tsv", "series.svg", "top.tsv",
                                            "evolve.tsv", "map.tsv",    "map.svg"};
  auto pipeline = [&](const fs::path& dir) {
    fs::create_directories(dir);
    auto idx = (dir / "sample.csem").string();
    auto d = [&](const char* name) { return (dir / name).string(); };
    std::vector<std::vector<std::string>> steps = {
        {"index", "build", "--input", DIACHRONA_SAMPLE, "--out", idx},
        {"freq", "series", "--index", idx, "--lemma", "pater", "--bin", "50", "--ma", "3", "--out",
         d("series.tsv"), "--svg", d("series.svg")},
        {"cooc", "top", "--index", idx, "--pivot", "pater", "--window", "5", "--k", "50", "--pos",
         "NOM,ADJ", "--out", d("top.tsv")},
        {"evolve", "--index", idx, "--pivot", "pater", "--k", "10", "--window", "5", "--min", "20",
         "--top", "40", "--out", d("evolve.tsv")},
        {"map", "--index", idx, "--pivot", "pater", "--terms", "30", "--window", "5", "--tsv",
         d("map.tsv"), "--svg", d("map.svg")},
    };
    for (const auto& args : steps) {
      std::ostringstream out, err;
      int rc = run_cli(args, out, err);
      if (rc != 0) {
        o.fail(args[0] + " exited " + std::to_string(rc) + ": " + err.str());
        return;
      }
    }
  };
  pipeline(scratch.dir / "a");
  pipeline(scratch.dir / "b");
  if (!o.pass) return o;
  std::size_t bytes = 0;
  for (const auto& name : outputs) {
    auto a = slurp(scratch.dir / "a" / name), b = slurp(scratch.dir / "b" / name);
    if (a.empty()) o.fail(name + " is empty");
    if (a != b) o.fail(name + " differs between runs");
    bytes += a.size();
  }
  if (slurp(scratch.dir / "a" / "sample.csem") != slurp(scratch.dir / "b" / "sample.csem"))
    o.fail("index files differ");
  if (o.pass) o.detail = std::to_string(outputs.size()) + " outputs, " + std::to_string(bytes) + " bytes";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = checked inside the criterion
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "ratio reproduction", 1, ratios},
      {2, "kinship table arithmetic", 1, kinship_table},
      {3, "cooccurrence oracle", 30, cooccurrence_oracle},
      {4, "dice bounds and symmetry", 10, dice_bounds},
      {5, "tranching", 10, tranching},
      {6, "trend detection", 5, trend_detection},
      {7, "correspondence analysis", 10, correspondence},
      {8, "time-series conservation", 5, series_conservation},
      {9, "index round-trip", 10, index_round_trip},
      {10, "scale (10M tokens)", 0, scale},
      {11, "end-to-end determinism", 0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && s >= c.budget_s)
      o.fail("runtime " + format_fixed(s, 2) + " s over budget " + format_fixed(c.budget_s, 0) + " s");
    failed += !o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name
              << "  [" << format_fixed(s, 2) << " s]  " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
