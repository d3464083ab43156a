#include "diachrona/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "diachrona/cooc.hpp"
#include "diachrona/diachrony.hpp"
#include "diachrona/format.hpp"
#include "diachrona/frequency.hpp"
#include "diachrona/index_io.hpp"
#include "diachrona/ingest.hpp"
#include "diachrona/semfield.hpp"
#include "diachrona/svg.hpp"
#include "diachrona/synth.hpp"
#include "diachrona/text.hpp"

namespace diachrona {

DocPredicate parse_filter(const std::string& expr) {
  if (expr == "dated") return is_dated();
  if (expr == "undated") return [](const Document& d) { return !d.date.is_dated(); };
  auto eq = expr.find('=');
  if (eq != std::string::npos) {
    auto key = expr.substr(0, eq);
    auto value = expr.substr(eq + 1);
    if (key == "typology" && !value.empty()) return has_typology(value);
    if (key == "date") {
      auto dots = value.find("..");
      if (dots != std::string::npos) {
        auto lo = text::parse_int(std::string_view(value).substr(0, dots));
        auto hi = text::parse_int(std::string_view(value).substr(dots + 2));
        if (lo && hi && *lo <= *hi)
          return dated_within(static_cast<std::int32_t>(*lo), static_cast<std::int32_t>(*hi));
      }
    }
  }
  throw Error("invalid filter '" + expr +
              "' (expected date=LO..HI, typology=NAME, dated or undated)");
}

DocSet select_documents(const CorpusIndex& index, const std::vector<std::string>& filters) {
  std::vector<DocPredicate> preds;
  for (const auto& f : filters) preds.push_back(parse_filter(f));
  return subcorpus(index, [&](const Document& d) {
    return std::all_of(preds.begin(), preds.end(), [&](const auto& p) { return p(d); });
  });
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : text::split(s, ','))
    if (!part.empty()) out.emplace_back(part);
  return out;
}

PosFilter pos_filter_from(const std::string& list) {
  PosFilter f;
  for (auto& p : split_list(list)) f.allowed.insert(std::move(p));
  return f;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw Error("write failed: " + path);
}

std::string opt_num(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

/// Shared flags of the query subcommands.
struct Query {
  std::string index_path;
  std::vector<std::string> filters;
  std::string out_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--index", index_path, "Corpus index (.csem)")->required();
    cmd->add_option("--filter", filters,
                    "Document filter: date=LO..HI (midpoint), typology=NAME, dated, undated; "
                    "repeat to combine");
    cmd->add_option("--out", out_path, "Write the TSV here instead of stdout");
  }
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"diachrona: lemma frequency, cooccurrence, diachrony and semantic-field "
                 "analysis of lemmatized corpora"};
    app.name("diachrona");
    app.require_subcommand(1);
    app.set_version_flag("--version", "diachrona 1.0.0");
    build(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      err_ << "diachrona: " << e.what() << "\n\n" << app.help();
      return kExitUsage;
    }
    try {
      action_();
      flush_data();
    } catch (const CLI::Error& e) {
      err_ << "diachrona: " << e.what() << "\n\n" << app.help();
      return kExitUsage;
    } catch (const std::exception& e) {
      err_ << "diachrona: error: " << e.what() << '\n';
      return kExitDomainError;
    }
    return kExitOk;
  }

 private:
  void emit(const std::string& data) { data_ += data; }

  void flush_data() {
    if (data_out_.empty()) out_ << data_;
    else write_file(data_out_, data_);
  }

  void build(CLI::App& app) {
    build_index(app);
    build_freq(app);
    build_cooc(app);
    build_evolve(app);
    build_map(app);
  }

  // ---- index ----------------------------------------------------------

  void build_index(CLI::App& app) {
    auto* index = app.add_subcommand("index", "Build and inspect corpus indexes");
    index->require_subcommand(1);

    auto* b = index->add_subcommand("build", "Ingest vertical or plain-text files");
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto format = std::make_shared<std::string>("vertical");
    auto lexicon = std::make_shared<std::string>();
    auto drop = std::make_shared<std::string>("PUN,SENT");
    auto out = std::make_shared<std::string>();
    auto keep_unknown = std::make_shared<bool>(false);
    b->add_option("--input", *inputs, "Input files")->required()->check(CLI::ExistingFile);
    b->add_option("--format", *format, "vertical (form<TAB>pos<TAB>lemma) or plain")
        ->check(CLI::IsMember({"vertical", "plain"}));
    b->add_option("--lexicon", *lexicon,
                  "form<TAB>lemma<TAB>pos lookup table for --format plain")
        ->check(CLI::ExistingFile);
    b->add_option("--drop-pos", *drop, "Comma-separated POS tags to drop (empty keeps all)");
    b->add_flag("--keep-unknown", *keep_unknown,
                "Keep the tagger's <unknown> lemma instead of using the form");
    b->add_option("--out", *out, "Index file to write")->required();
    b->callback([=, this] {
      action_ = [=, this] {
        IngestOptions opts;
        opts.drop_pos.clear();
        for (auto& p : split_list(*drop)) opts.drop_pos.insert(p);
        opts.unknown_lemma_as_form = !*keep_unknown;
        Lexicon lex;
        if (!lexicon->empty()) {
          std::ifstream lf(*lexicon);
          lex = Lexicon::read_tsv(lf);
        }
        CorpusBuilder builder;
        for (const auto& path : *inputs) {
          std::ifstream in(path, std::ios::binary);
          if (!in) throw Error("cannot open " + path);
          try {
            if (*format == "plain") parse_plain_into(in, lex, builder, opts);
            else parse_vertical_into(in, builder, opts);
          } catch (const ParseError& e) {
            throw Error(path + ": " + e.what());
          }
        }
        auto idx = std::move(builder).build();
        save_index(idx, *out);
        err_ << "indexed " << idx.document_count() << " documents, " << idx.total_tokens()
             << " tokens, " << idx.lemmas().size() << " lemmas -> " << *out << '\n';
      };
    });

    auto* info = index->add_subcommand("info", "Summarize an index");
    auto q = std::make_shared<Query>();
    q->attach(info);
    info->callback([=, this] {
      action_ = [=, this] {
        auto idx = load(*q);
        auto docs = select_documents(idx, q->filters);
        std::size_t dated = 0;
        for (auto d : docs) dated += idx.documents()[d].date.is_dated();
        std::ostringstream s;
        s << "documents\t" << docs.size() << "\n"
          << "dated_documents\t" << dated << "\n"
          << "tokens\t" << docs.token_mass(idx) << "\n"
          << "lemmas\t" << idx.lemmas().size() << "\n"
          << "forms\t" << idx.forms().size() << "\n"
          << "pos_tags\t" << idx.pos_tags().size() << "\n";
        emit(s.str());
      };
    });

    auto* synth = index->add_subcommand("synth", "Write a reproducible synthetic vertical corpus");
    auto so = std::make_shared<SynthOptions>();
    auto synth_out = std::make_shared<std::string>();
    synth->add_option("--seed", so->seed, "Random seed")->capture_default_str();
    synth->add_option("--tokens", so->tokens, "Word tokens to write")->capture_default_str();
    synth->add_option("--vocab", so->vocabulary, "Lemma vocabulary size")
        ->check(CLI::Range(1u, 100000000u))
        ->capture_default_str();
    synth->add_option("--doc-length", so->mean_doc_length, "Mean document length")
        ->check(CLI::Range(1u, 10000000u))
        ->capture_default_str();
    synth->add_option("--out", *synth_out, "Vertical file to write")->required();
    synth->callback([=, this] {
      action_ = [=, this] {
        std::ofstream f(*synth_out, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + *synth_out);
        write_synthetic_vertical(f, *so);
        if (!f) throw Error("write failed: " + *synth_out);
      };
    });
  }

  CorpusIndex load(const Query& q) {
    data_out_ = q.out_path;
    return load_index(q.index_path);
  }

  // ---- freq -----------------------------------------------------------

  void build_freq(CLI::App& app) {
    auto* freq = app.add_subcommand("freq", "Lemma counts, tables, ratios, ranks, shares, series");
    freq->require_subcommand(1);

    {
      auto* c = freq->add_subcommand("count", "Occurrences of one lemma");
      auto q = std::make_shared<Query>();
      auto lemma = std::make_shared<std::string>();
      q->attach(c);
      c->add_option("--lemma", *lemma, "Lemma")->required();
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          emit("lemma\tcount\n" + *lemma + "\t" + std::to_string(lemma_count(idx, docs, *lemma)) + "\n");
        };
      });
    }
    {
      auto* c = freq->add_subcommand("table", "Lemma x subcorpus count table with sums");
      auto q = std::make_shared<Query>();
      auto lemmas = std::make_shared<std::string>();
      auto columns = std::make_shared<std::vector<std::string>>();
      q->attach(c);
      c->add_option("--lemmas", *lemmas, "Comma-separated lemmas (rows)")->required();
      c->add_option("--column", *columns,
                    "Column subcorpus as a filter expression, repeatable; 'all' = every document");
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto base = select_documents(idx, q->filters);
          std::vector<std::string> cols = columns->empty() ? std::vector<std::string>{"all"} : *columns;
          std::vector<DocSet> sets;
          for (const auto& col : cols) {
            if (col == "all") {
              sets.push_back(base);
              continue;
            }
            auto pred = parse_filter(col);
            std::vector<DocIndex> v;
            for (auto d : base)
              if (pred(idx.documents()[d])) v.push_back(d);
            sets.emplace_back(std::move(v));
          }
          auto rows = split_list(*lemmas);
          auto t = count_table(idx, rows, sets);
          std::string s = "lemma";
          for (const auto& col : cols) s += "\t" + col;
          s += "\tSum\n";
          for (std::size_t i = 0; i < rows.size(); ++i) {
            s += rows[i];
            for (auto v : t.cells[i]) s += "\t" + std::to_string(v);
            s += "\t" + std::to_string(t.row_sums[i]) + "\n";
          }
          s += "Sum";
          for (auto v : t.column_sums) s += "\t" + std::to_string(v);
          s += "\t" + std::to_string(t.grand_total) + "\n";
          emit(s);
        };
      });
    }
    {
      auto* c = freq->add_subcommand("ratio", "Ratio of two lemma counts (or of two given counts)");
      auto index_path = std::make_shared<std::string>();
      auto filters = std::make_shared<std::vector<std::string>>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      auto counts = std::make_shared<std::vector<std::uint64_t>>();
      auto out = std::make_shared<std::string>();
      c->add_option("--index", *index_path, "Corpus index (.csem)");
      c->add_option("--filter", *filters, "Document filter, repeatable");
      c->add_option("--a", *a, "Numerator lemma");
      c->add_option("--b", *b, "Denominator lemma");
      c->add_option("--counts", *counts, "Two raw counts A B instead of an index")->expected(2);
      c->add_option("--out", *out, "Write the TSV here instead of stdout");
      c->callback([=, this] {
        action_ = [=, this] {
          data_out_ = *out;
          std::string la = "a", lb = "b";
          std::uint64_t ca, cb;
          if (!counts->empty()) {
            ca = (*counts)[0];
            cb = (*counts)[1];
          } else {
            if (index_path->empty() || a->empty() || b->empty())
              throw CLI::ValidationError("ratio needs --counts A B or --index with --a and --b");
            auto idx = load_index(*index_path);
            auto docs = select_documents(idx, *filters);
            la = *a;
            lb = *b;
            ca = lemma_count(idx, docs, la);
            cb = lemma_count(idx, docs, lb);
          }
          auto r = ratio(ca, cb);
          emit("a\tb\tcount_a\tcount_b\tratio\n" + la + "\t" + lb + "\t" + std::to_string(r.numerator) +
               "\t" + std::to_string(r.denominator) + "\t" + format_double(r.value) + "\n");
        };
      });
    }
    {
      auto* c = freq->add_subcommand("rank", "Frequency rank of a lemma (1 = most frequent)");
      auto q = std::make_shared<Query>();
      auto lemma = std::make_shared<std::string>();
      q->attach(c);
      c->add_option("--lemma", *lemma, "Lemma")->required();
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          auto r = lemma_rank(idx, docs, *lemma);
          if (!r) throw Error("lemma '" + *lemma + "' is not present");
          emit("lemma\tcount\trank\n" + *lemma + "\t" + std::to_string(lemma_count(idx, docs, *lemma)) +
               "\t" + std::to_string(*r) + "\n");
        };
      });
    }
    {
      auto* c = freq->add_subcommand("share", "Share of a lemma's tokens written with given forms");
      auto q = std::make_shared<Query>();
      auto lemma = std::make_shared<std::string>();
      auto forms = std::make_shared<std::string>();
      q->attach(c);
      c->add_option("--lemma", *lemma, "Lemma")->required();
      c->add_option("--forms", *forms, "Comma-separated surface forms (case-insensitive)")->required();
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          auto list = split_list(*forms);
          auto share = form_share(idx, docs, *lemma, {list.begin(), list.end()});
          emit("lemma\tforms\tshare\n" + *lemma + "\t" + *forms + "\t" + format_double(share) + "\n");
        };
      });
    }
    {
      auto* c = freq->add_subcommand("series", "Dated frequency series of a lemma");
      auto q = std::make_shared<Query>();
      auto lemma = std::make_shared<std::string>();
      auto bin = std::make_shared<std::int32_t>(50);
      auto svg = std::make_shared<std::string>();
      auto ma = std::make_shared<std::size_t>(0);
      auto rate = std::make_shared<bool>(false);
      auto policy = std::make_shared<std::string>("mid");
      q->attach(c);
      c->add_option("--lemma", *lemma, "Lemma")->required();
      c->add_option("--bin", *bin, "Bin width in years")->check(CLI::Range(1, 100000))->capture_default_str();
      c->add_option("--ma", *ma, "Add a centered moving average over this many bins (odd)");
      c->add_option("--date-policy", *policy, "Year used for ranged dates: mid, start or end")
          ->check(CLI::IsMember({"mid", "start", "end"}));
      c->add_option("--svg", *svg, "Also plot the series to this SVG file");
      c->add_flag("--rate", *rate, "Plot per-million rates instead of raw counts");
      c->callback([=, this] {
        action_ = [=, this] {
          if (*ma != 0 && *ma % 2 == 0) throw Error("--ma must be odd");
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          auto pol = *policy == "start" ? DatePolicy::Start
                     : *policy == "end" ? DatePolicy::End
                                        : DatePolicy::Midpoint;
          auto ts = time_series(idx, docs, *lemma, *bin, pol);
          std::vector<std::optional<double>> avg;
          if (*ma) avg = moving_average(ts, *ma);
          std::string s = "start_year\tcount\ttoken_mass\tper_million";
          if (*ma) s += "\tmoving_average";
          s += "\n";
          for (std::size_t i = 0; i < ts.bins.size(); ++i) {
            const auto& b = ts.bins[i];
            s += std::to_string(b.start_year) + "\t" + std::to_string(b.count) + "\t" +
                 std::to_string(b.token_mass) + "\t" + opt_num(b.per_million);
            if (*ma) s += "\t" + opt_num(avg[i]);
            s += "\n";
          }
          emit(s);
          if (!svg->empty()) {
            PlotSpec spec;
            spec.title = *lemma;
            spec.x_label = "year";
            spec.y_label = *rate ? "occurrences per million tokens" : "occurrences";
            Curve curve{*lemma, {}};
            for (const auto& b : ts.bins) {
              double y = *rate ? b.per_million.value_or(NAN) : static_cast<double>(b.count);
              curve.points.emplace_back(b.start_year, y);
            }
            spec.curves.push_back(std::move(curve));
            if (*ma) {
              Curve smooth{"moving average", {}};
              for (std::size_t i = 0; i < ts.bins.size(); ++i) {
                double y = NAN;
                if (*rate) y = avg[i].value_or(NAN);
                else if (avg[i] && ts.bins[i].token_mass) y = *avg[i] * ts.bins[i].token_mass / 1e6;
                smooth.points.emplace_back(ts.bins[i].start_year, y);
              }
              spec.curves.push_back(std::move(smooth));
            }
            write_file(*svg, emit_svg(spec));
          }
        };
      });
    }
  }

  // ---- cooc -----------------------------------------------------------

  void build_cooc(CLI::App& app) {
    auto* cooc = app.add_subcommand("cooc", "Windowed cooccurrence and Dice association");
    cooc->require_subcommand(1);
    {
      auto* c = cooc->add_subcommand("top", "Ranked cooccurrents of a pivot lemma");
      auto q = std::make_shared<Query>();
      auto pivot = std::make_shared<std::string>();
      auto window = std::make_shared<std::uint32_t>(5);
      auto k = std::make_shared<std::size_t>(50);
      auto pos = std::make_shared<std::string>();
      auto min = std::make_shared<std::uint64_t>(1);
      auto scale = std::make_shared<double>(1.0);
      q->attach(c);
      c->add_option("--pivot", *pivot, "Pivot lemma")->required();
      c->add_option("--window", *window, "Tokens on each side")->check(CLI::Range(1u, 1000u))->capture_default_str();
      c->add_option("--k", *k, "Number of cooccurrents")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40))->capture_default_str();
      c->add_option("--pos", *pos, "Allowed POS tags of cooccurrents, comma-separated");
      c->add_option("--min", *min, "Minimum pair count")->capture_default_str();
      c->add_option("--scale", *scale, "Multiply printed Dice values")->check(CLI::PositiveNumber);
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          auto top = top_cooccurrents(idx, docs, *pivot, *window, *k, pos_filter_from(*pos), *min);
          std::string s = "lemma\tpair_count\tfreq\tdice\n";
          for (const auto& c : top)
            s += idx.lemmas()[c.lemma] + "\t" + std::to_string(c.pair_count) + "\t" +
                 std::to_string(c.freq) + "\t" + format_double(c.dice * *scale) + "\n";
          emit(s);
        };
      });
    }
    {
      auto* c = cooc->add_subcommand("pair", "Dated evolution of one lemma pair");
      auto q = std::make_shared<Query>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      auto window = std::make_shared<std::uint32_t>(5);
      auto bin = std::make_shared<std::int32_t>(50);
      auto svg = std::make_shared<std::string>();
      auto plot = std::make_shared<std::string>("count");
      q->attach(c);
      c->add_option("--a", *a, "First lemma")->required();
      c->add_option("--b", *b, "Second lemma")->required();
      c->add_option("--window", *window, "Tokens on each side")->check(CLI::Range(1u, 1000u))->capture_default_str();
      c->add_option("--bin", *bin, "Bin width in years")->check(CLI::Range(1, 100000))->capture_default_str();
      c->add_option("--svg", *svg, "Also plot to this SVG file");
      c->add_option("--plot", *plot, "Curve to plot: count or dice")->check(CLI::IsMember({"count", "dice"}));
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          auto series = pair_evolution(idx, docs, *a, *b, *window, *bin);
          std::string s = "start_year\tpair_count\tfreq_a\tfreq_b\tdice\n";
          for (const auto& p : series)
            s += std::to_string(p.start_year) + "\t" + std::to_string(p.pair_count) + "\t" +
                 std::to_string(p.freq_a) + "\t" + std::to_string(p.freq_b) + "\t" +
                 opt_num(p.dice) + "\n";
          emit(s);
          if (!svg->empty()) {
            PlotSpec spec;
            spec.title = *a + " / " + *b;
            spec.x_label = "year";
            spec.y_label = *plot == "dice" ? "Dice" : "pair count";
            Curve curve{*plot == "dice" ? "Dice" : "pairs", {}};
            for (const auto& p : series)
              curve.points.emplace_back(p.start_year, *plot == "dice" ? p.dice.value_or(NAN)
                                                                      : static_cast<double>(p.pair_count));
            spec.curves.push_back(std::move(curve));
            write_file(*svg, emit_svg(spec));
          }
        };
      });
    }
    {
      auto* c = cooc->add_subcommand("adj", "Directly adjacent occurrences of two lemmas");
      auto q = std::make_shared<Query>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      q->attach(c);
      c->add_option("--a", *a, "First lemma")->required();
      c->add_option("--b", *b, "Second lemma")->required();
      c->callback([=, this] {
        action_ = [=, this] {
          auto idx = load(*q);
          auto docs = select_documents(idx, q->filters);
          emit("a\tb\tadjacent\n" + *a + "\t" + *b + "\t" +
               std::to_string(adjacency_count(idx, docs, *a, *b)) + "\n");
        };
      });
    }
  }

  // ---- evolve ---------------------------------------------------------

  void build_evolve(CLI::App& app) {
    auto* c = app.add_subcommand("evolve", "Cooccurrents changing most across equal-token tranches");
    auto q = std::make_shared<Query>();
    auto pivot = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(10);
    auto window = std::make_shared<std::uint32_t>(5);
    auto min = std::make_shared<std::uint64_t>(20);
    auto top = std::make_shared<std::size_t>(40);
    auto pos = std::make_shared<std::string>();
    q->attach(c);
    c->add_option("--pivot", *pivot, "Pivot lemma")->required();
    c->add_option("--k", *k, "Number of tranches")->check(CLI::Range(std::size_t{2}, std::size_t{100000}))->capture_default_str();
    c->add_option("--window", *window, "Tokens on each side")->check(CLI::Range(1u, 1000u))->capture_default_str();
    c->add_option("--min", *min, "Minimum total pair count")->check(CLI::Range(std::uint64_t{1}, ~std::uint64_t{0}))->capture_default_str();
    c->add_option("--top", *top, "Number of lemmas to report")->capture_default_str();
    c->add_option("--pos", *pos, "Allowed POS tags of cooccurrents, comma-separated");
    c->callback([=, this] {
      action_ = [=, this] {
        auto idx = load(*q);
        auto docs = select_documents(idx, q->filters);
        auto tranches = make_tranches(idx, docs, *k);
        auto report = evolving_cooccurrents(idx, tranches, *pivot, *window, pos_filter_from(*pos), *min, *top);
        std::string s = "lemma";
        for (std::size_t t = 1; t <= *k; ++t) s += "\td_" + std::to_string(t);
        s += "\ttotal\tscore\tdirection\n";
        for (const auto& e : report.entries) {
          s += idx.lemmas()[e.lemma];
          for (double d : e.dice) s += "\t" + format_double(d);
          s += "\t" + std::to_string(e.total) + "\t" + format_double(e.score) + "\t" +
               to_string(e.direction) + "\n";
        }
        emit(s);
      };
    });
  }

  // ---- map ------------------------------------------------------------

  void build_map(CLI::App& app) {
    auto* c = app.add_subcommand("map", "Correspondence-analysis map of a pivot's semantic field");
    auto q = std::make_shared<Query>();
    auto pivot = std::make_shared<std::string>();
    auto terms = std::make_shared<std::size_t>(30);
    auto window = std::make_shared<std::uint32_t>(5);
    auto pos = std::make_shared<std::string>();
    auto min = std::make_shared<std::uint64_t>(1);
    auto svg = std::make_shared<std::string>();
    auto tsv = std::make_shared<std::string>();
    auto weight = std::make_shared<std::string>("counts");
    auto exclude = std::make_shared<bool>(false);
    q->attach(c);
    c->add_option("--pivot", *pivot, "Pivot lemma")->required();
    c->add_option("--terms", *terms, "Cooccurrents in the field (pivot comes on top)")
        ->check(CLI::Range(std::size_t{3}, std::size_t{100000}))
        ->capture_default_str();
    c->add_option("--window", *window, "Tokens on each side")->check(CLI::Range(1u, 1000u))->capture_default_str();
    c->add_option("--pos", *pos, "Allowed POS tags of terms, comma-separated");
    c->add_option("--min", *min, "Minimum pair count with the pivot")->capture_default_str();
    c->add_option("--weight", *weight, "Cell values: counts or dice")->check(CLI::IsMember({"counts", "dice"}));
    c->add_flag("--exclude-pivot", *exclude, "Leave the pivot out of the matrix");
    c->add_option("--svg", *svg, "Plot the map to this SVG file");
    c->add_option("--tsv", *tsv, "Write coordinates here instead of stdout");
    c->callback([=, this] {
      action_ = [=, this] {
        auto idx = load(*q);
        if (!tsv->empty()) data_out_ = *tsv;
        auto docs = select_documents(idx, q->filters);
        SubmatrixOptions so;
        so.include_pivot = !*exclude;
        MapOptions mo;
        mo.weight = *weight == "dice" ? CellWeight::Dice : CellWeight::Counts;
        auto map = semantic_map(idx, docs, *pivot, *window, *terms, pos_filter_from(*pos), *min, so, mo);
        for (auto p : map.pruned) err_ << "warning: pruned isolated term '" << idx.lemmas()[p] << "'\n";
        std::string s = "# inertia_axis1\t" + format_double(map.inertia_fractions[0]) + "\n" +
                        "# inertia_axis2\t" + format_double(map.inertia_fractions[1]) + "\n" +
                        "# total_inertia\t" + format_double(map.total_inertia) + "\n" +
                        "lemma\tx\ty\n";
        for (const auto& p : map.points)
          s += idx.lemmas()[p.lemma] + "\t" + format_double(p.x) + "\t" + format_double(p.y) + "\n";
        emit(s);
        if (!svg->empty()) {
          PlotSpec spec;
          spec.kind = PlotSpec::Kind::Scatter;
          spec.width = 800;
          spec.height = 800;
          spec.title = "semantic field of " + *pivot;
          spec.x_label = "axis 1 (" + format_fixed(100 * map.inertia_fractions[0], 1) + "%)";
          spec.y_label = "axis 2 (" + format_fixed(100 * map.inertia_fractions[1], 1) + "%)";
          for (const auto& p : map.points) spec.points.push_back({p.x, p.y, idx.lemmas()[p.lemma]});
          write_file(*svg, emit_svg(spec));
        }
      };
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<void()> action_;
  std::string data_;
  std::string data_out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace diachrona
