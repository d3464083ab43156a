#include "diachrona/ingest.hpp"

#include <algorithm>
#include <sstream>

#include "diachrona/text.hpp"

namespace diachrona {

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

bool is_header(std::string_view line) {
  return line.starts_with("#doc") &&
         (line.size() == 4 || line[4] == ' ' || line[4] == '\t');
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::optional<std::int32_t> parse_year(std::string_view s) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return static_cast<std::int32_t>(*text::parse_int(s));
}

DateSpec parse_date(std::string_view value, std::size_t line_no) {
  auto dash = value.find('-');
  if (dash == std::string_view::npos) {
    if (auto y = parse_year(value)) return DateSpec::exact(*y);
  } else {
    auto lo = parse_year(value.substr(0, dash));
    auto hi = parse_year(value.substr(dash + 1));
    if (lo && hi && *lo <= *hi) return DateSpec::range(*lo, *hi);
  }
  throw ParseError(line_no, "invalid date '" + std::string(value) +
                                "' (expected YYYY or YYYY-YYYY)");
}

void begin_from_header(CorpusBuilder& builder, std::string_view line,
                       std::size_t line_no) {
  auto h = parse_doc_header(line, line_no);
  builder.begin_document(std::move(h.id), h.date, std::move(h.typology));
}

}  // namespace

DocHeader parse_doc_header(std::string_view line, std::size_t line_no) {
  line = strip_cr(line);
  if (!is_header(line)) throw ParseError(line_no, "not a #doc header");
  DocHeader h;
  bool have_id = false;
  std::size_t pos = 4;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    auto end = line.find_first_of(" \t", pos);
    if (end == std::string_view::npos) end = line.size();
    auto field = line.substr(pos, end - pos);
    pos = end;
    auto eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError(line_no, "malformed header field '" + std::string(field) + "'");
    auto key = field.substr(0, eq);
    auto value = field.substr(eq + 1);
    if (key == "id") {
      if (value.empty()) throw ParseError(line_no, "malformed header: empty id");
      h.id = std::string(value);
      have_id = true;
    } else if (key == "date") {
      h.date = parse_date(value, line_no);
    } else if (key == "typology") {
      if (!value.empty()) h.typology = std::string(value);
    }
    // other keys are carried by some exporters; ignore them
  }
  if (!have_id) throw ParseError(line_no, "malformed header: missing id");
  return h;
}

void parse_vertical_into(std::istream& in, CorpusBuilder& builder,
                         const IngestOptions& options) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_cr(raw);
    if (is_blank(line)) continue;
    if (is_header(line)) {
      begin_from_header(builder, line, line_no);
      continue;
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      auto cols = std::count(line.begin(), line.end(), '\t') + 1;
      throw ParseError(line_no, "expected 3 tab-separated columns, found " +
                                    std::to_string(cols));
    }
    auto form = line.substr(0, t1);
    auto pos = line.substr(t1 + 1, t2 - t1 - 1);
    auto lemma = line.substr(t2 + 1);
    if (form.empty()) throw ParseError(line_no, "empty form");
    if (pos.empty()) throw ParseError(line_no, "empty POS tag");
    if (lemma.empty()) throw ParseError(line_no, "empty lemma");
    if (options.drop_pos.contains(pos)) continue;
    if (options.unknown_lemma_as_form && lemma == kUnknownLemma) lemma = form;
    builder.add_token(form, pos, lemma);
  }
  if (in.bad()) throw Error("read error after line " + std::to_string(line_no));
}

CorpusIndex parse_vertical(std::istream& in, const IngestOptions& options) {
  CorpusBuilder builder;
  parse_vertical_into(in, builder, options);
  return std::move(builder).build();
}

CorpusIndex parse_vertical(std::string_view text, const IngestOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_vertical(in, options);
}

std::vector<std::string> tokenize_plain(std::string_view input) {
  std::vector<std::string> out;
  std::string current;
  std::size_t pos = 0;
  while (pos < input.size()) {
    auto start = pos;
    auto cp = text::next_code_point(input, pos);
    bool letter = text::is_alphabetic(cp) ||
                  (!current.empty() && text::is_combining_mark(cp));
    if (letter) {
      current.append(input.substr(start, pos - start));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

void Lexicon::add(std::string_view form, std::string lemma, std::string pos) {
  entries_.insert_or_assign(text::fold_case(form),
                            Entry{std::move(lemma), std::move(pos)});
}

Lexicon::Entry Lexicon::lookup(std::string_view form) const {
  if (auto it = entries_.find(text::fold_case(form)); it != entries_.end())
    return it->second;
  return {std::string(form), std::string(kUnknownPos)};
}

Lexicon Lexicon::read_tsv(std::istream& in) {
  Lexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_cr(raw);
    if (is_blank(line) || line.starts_with('#')) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty())
      throw ParseError(line_no, "lexicon lines are form<TAB>lemma<TAB>pos");
    lex.add(cols[0], std::string(cols[1]), std::string(cols[2]));
  }
  return lex;
}

std::vector<VerticalRecord> lemmatize(const std::vector<std::string>& forms,
                                      const Lexicon& lex) {
  std::vector<VerticalRecord> out;
  out.reserve(forms.size());
  for (const auto& f : forms) {
    auto e = lex.lookup(f);
    out.push_back({f, std::move(e.pos), std::move(e.lemma)});
  }
  return out;
}

void parse_plain_into(std::istream& in, const Lexicon& lex,
                      CorpusBuilder& builder, const IngestOptions& options) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_cr(raw);
    if (is_header(line)) {
      begin_from_header(builder, line, line_no);
      continue;
    }
    for (const auto& rec : lemmatize(tokenize_plain(line), lex)) {
      if (options.drop_pos.contains(rec.pos)) continue;
      builder.add_token(rec.form, rec.pos, rec.lemma);
    }
  }
}

}  // namespace diachrona
