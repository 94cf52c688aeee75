#include "corplex/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "corplex/error.hpp"
#include "corplex/rng.hpp"
#include "corplex/text.hpp"

namespace corplex {

namespace {

void validate_bounds(const std::vector<std::size_t>& bounds, std::size_t n, const char* what) {
  if (n == 0) {
    if (!bounds.empty()) throw ArgumentError(std::string(what) + " bounds on empty stream");
    return;
  }
  if (bounds.empty() || bounds.back() != n) {
    throw ArgumentError(std::string("final ") + what + " bound must equal token count");
  }
  std::size_t prev = 0;
  for (std::size_t b : bounds) {
    if (b <= prev) throw ArgumentError(std::string(what) + " bounds must be strictly increasing");
    prev = b;
  }
}

}  // namespace

TokenStream::TokenStream(std::vector<Token> tokens, std::vector<std::size_t> sentence_bounds,
                         std::vector<std::size_t> document_bounds, std::string source_id)
    : tokens_(std::move(tokens)),
      sentence_bounds_(std::move(sentence_bounds)),
      document_bounds_(std::move(document_bounds)),
      source_id_(std::move(source_id)) {
  if (document_bounds_.empty() && !tokens_.empty()) document_bounds_.push_back(tokens_.size());
  validate_bounds(sentence_bounds_, tokens_.size(), "sentence");
  validate_bounds(document_bounds_, tokens_.size(), "document");
  for (std::size_t d : document_bounds_) {
    if (!std::binary_search(sentence_bounds_.begin(), sentence_bounds_.end(), d)) {
      throw ArgumentError("document boundary " + std::to_string(d) + " splits a sentence");
    }
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const Token& t = tokens_[i];
    if (t.surface.empty()) throw ArgumentError("token " + std::to_string(i) + " has empty surface");
    if (t.pos && t.pos->empty()) throw ArgumentError("token " + std::to_string(i) + " has empty tag");
  }
}

std::size_t TokenStream::word_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tokens_.begin(), tokens_.end(), [](const Token& t) { return t.is_word; }));
}

bool TokenStream::tagged() const noexcept {
  return std::all_of(tokens_.begin(), tokens_.end(), [](const Token& t) { return t.pos.has_value(); });
}

std::vector<std::string> PlainTextOptions::default_abbreviations() {
  return {"e.g.", "i.e.", "etc.", "cf.", "vs.",  "viz.", "approx.", "mr.", "mrs.", "ms.",
          "dr.",  "prof.", "st.", "jr.", "sr.", "fig.", "vol.", "inc.", "ltd.",
          "a.m.", "p.m.", "u.s.", "u.k."};
}

std::set<std::string> VerticalOptions::default_punctuation_tags() {
  return {"SENT", "PUN", ",", ":", "(", ")", "''", "``", ".", "$"};
}

// ---------------------------------------------------------------------------
// plain text

namespace {

bool is_word_char(char32_t cp) { return !text::is_space(cp) && !text::is_punct(cp); }

bool is_final_punct(char32_t cp) { return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026; }

bool is_closer(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == '}' || cp == 0x201D ||
         cp == 0x2019 || cp == 0xBB;
}

bool is_opener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == 0x201C || cp == 0x2018 ||
         cp == 0xAB;
}

bool is_word_joiner(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == '-' || cp == 0x2010; }

class PlainTokenizer {
 public:
  PlainTokenizer(const std::vector<char32_t>& cps, const PlainTextOptions& options)
      : cps_(cps) {
    for (const auto& a : options.abbreviations) {
      auto decoded = text::decode_utf8(text::lowercase(a));
      abbreviations_.emplace_back(decoded.begin(), decoded.end());
    }
    std::sort(abbreviations_.begin(), abbreviations_.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    paragraph_breaks_ = options.paragraph_breaks_end_sentences;
  }

  void run() {
    const std::size_t n = cps_.size();
    std::size_t i = 0;
    while (i < n) {
      char32_t cp = cps_[i];
      if (text::is_space(cp)) {
        std::size_t newlines = 0;
        while (i < n && text::is_space(cps_[i])) {
          if (cps_[i] == '\n') ++newlines;
          ++i;
        }
        if (paragraph_breaks_ && newlines >= 2) close_sentence();
        continue;
      }
      if (std::size_t len = match_abbreviation(i)) {
        emit(i, i + len, true);
        i += len;
        continue;
      }
      if (is_word_char(cp)) {
        i = take_word(i);
        continue;
      }
      if (is_final_punct(cp)) {
        std::size_t j = i;
        while (j < n && is_final_punct(cps_[j])) ++j;
        emit(i, j, false);
        while (j < n && is_closer(cps_[j])) {
          emit(j, j + 1, false);
          ++j;
        }
        if (boundary_follows(j)) close_sentence();
        i = j;
        continue;
      }
      emit(i, i + 1, false);
      ++i;
    }
    close_sentence();
  }

  std::vector<Token> tokens;
  std::vector<std::size_t> bounds;

 private:
  std::size_t match_abbreviation(std::size_t i) const {
    for (const auto& abbr : abbreviations_) {
      if (i + abbr.size() > cps_.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < abbr.size() && ok; ++k) ok = text::to_lower(cps_[i + k]) == abbr[k];
      if (!ok) continue;
      std::size_t after = i + abbr.size();
      if (after < cps_.size() && is_word_char(cps_[after])) continue;
      return abbr.size();
    }
    return 0;
  }

  std::size_t take_word(std::size_t i) {
    const std::size_t n = cps_.size();
    std::size_t j = i;
    while (j < n) {
      if (is_word_char(cps_[j])) {
        ++j;
        continue;
      }
      bool inner = j > i && j + 1 < n && is_word_char(cps_[j - 1]) && is_word_char(cps_[j + 1]);
      if (inner && is_word_joiner(cps_[j])) {
        ++j;
        continue;
      }
      // 3.14 and 1,000
      if (inner && (cps_[j] == '.' || cps_[j] == ',') && text::is_digit(cps_[j - 1]) &&
          text::is_digit(cps_[j + 1])) {
        ++j;
        continue;
      }
      break;
    }
    emit(i, j, true);
    return j;
  }

  bool boundary_follows(std::size_t j) const {
    const std::size_t n = cps_.size();
    if (j >= n) return true;
    if (!text::is_space(cps_[j])) return false;
    while (j < n && text::is_space(cps_[j])) ++j;
    if (j >= n) return true;
    if (text::is_upper(cps_[j])) return true;
    return is_opener(cps_[j]) && j + 1 < n && text::is_upper(cps_[j + 1]);
  }

  void emit(std::size_t from, std::size_t to, bool word) {
    std::string s;
    for (std::size_t k = from; k < to; ++k) text::append_utf8(s, cps_[k]);
    tokens.push_back(Token{std::move(s), std::nullopt, std::nullopt, word});
  }

  void close_sentence() {
    std::size_t last = bounds.empty() ? 0 : bounds.back();
    if (tokens.size() > last) bounds.push_back(tokens.size());
  }

  const std::vector<char32_t>& cps_;
  std::vector<std::vector<char32_t>> abbreviations_;
  bool paragraph_breaks_ = true;
};

}  // namespace

TokenStream tokenize_plain(std::string_view input, const PlainTextOptions& options,
                           std::string source_id) {
  auto cps = text::decode_utf8(input);
  PlainTokenizer tok(cps, options);
  tok.run();
  return TokenStream(std::move(tok.tokens), std::move(tok.bounds), {}, std::move(source_id));
}

// ---------------------------------------------------------------------------
// vertical

namespace {

bool is_markup(std::string_view line) {
  return line.size() >= 2 && line.front() == '<' && line.back() == '>' &&
         line.find('\t') == std::string_view::npos;
}

std::string_view markup_name(std::string_view line) {
  line.remove_prefix(1);
  line.remove_suffix(1);
  if (!line.empty() && line.back() == '/') line.remove_suffix(1);
  return line.substr(0, line.find(' '));
}

}  // namespace

TokenStream read_vertical(std::istream& in, const VerticalOptions& options, std::string source_id) {
  std::vector<Token> tokens;
  std::vector<std::size_t> sentences;
  std::vector<std::size_t> documents;
  auto close_sentence = [&] {
    std::size_t last = sentences.empty() ? 0 : sentences.back();
    if (tokens.size() > last) sentences.push_back(tokens.size());
  };
  auto close_document = [&] {
    close_sentence();
    std::size_t last = documents.empty() ? 0 : documents.back();
    if (tokens.size() > last) documents.push_back(tokens.size());
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (text::trim(view).empty()) continue;
    if (is_markup(view)) {
      auto name = markup_name(view);
      if (name == "/s") {
        close_sentence();
      } else if (name == "doc" || name == "text" || name == "/doc" || name == "/text") {
        close_document();
      }
      continue;
    }
    std::size_t t1 = view.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : view.find('\t', t1 + 1);
    std::size_t fields = t1 == std::string_view::npos ? 1 : (t2 == std::string_view::npos ? 2 : 3);
    if (fields == 3 && view.find('\t', t2 + 1) != std::string_view::npos) fields = 4;
    if (fields != 3) {
      throw IngestionError("line " + std::to_string(line_no) + ": expected 3 tab-separated fields, found " +
                               std::to_string(fields),
                           IngestionError::Unit::line, line_no);
    }
    Token tok;
    tok.surface = std::string(view.substr(0, t1));
    tok.pos = std::string(view.substr(t1 + 1, t2 - t1 - 1));
    tok.lemma = std::string(view.substr(t2 + 1));
    if (tok.surface.empty() || tok.pos->empty()) {
      throw IngestionError("line " + std::to_string(line_no) + ": empty surface or tag field",
                           IngestionError::Unit::line, line_no);
    }
    tok.is_word = options.punctuation_tags.count(*tok.pos) == 0;
    const bool ends = *tok.pos == options.sentence_end_tag;
    tokens.push_back(std::move(tok));
    if (ends) close_sentence();
  }
  close_document();
  if (sentences.empty()) {
    throw IngestionError("vertical input contains no sentences", IngestionError::Unit::line, line_no);
  }
  return TokenStream(std::move(tokens), std::move(sentences), std::move(documents),
                     std::move(source_id));
}

TokenStream read_vertical(std::string_view content, const VerticalOptions& options,
                          std::string source_id) {
  std::istringstream in{std::string(content)};
  return read_vertical(in, options, std::move(source_id));
}

void write_vertical(std::ostream& out, const TokenStream& stream, const VerticalOptions& options) {
  const bool multi_doc = stream.document_count() > 1;
  std::size_t sent = 0;
  for (std::size_t d = 0; d < stream.document_count(); ++d) {
    if (multi_doc) out << "<doc>\n";
    for (; sent < stream.sentence_count() && stream.sentence_end(sent) <= stream.document_end(d); ++sent) {
      for (std::size_t i = stream.sentence_begin(sent); i < stream.sentence_end(sent); ++i) {
        const Token& t = stream.tokens()[i];
        if (!t.pos) throw ArgumentError("write_vertical: token " + std::to_string(i) + " has no tag");
        out << t.surface << '\t' << *t.pos << '\t' << t.lemma.value_or(t.surface) << '\n';
      }
      const Token& last = stream.tokens()[stream.sentence_end(sent) - 1];
      if (*last.pos != options.sentence_end_tag) out << "</s>\n";
    }
    if (multi_doc) out << "</doc>\n";
  }
}

// ---------------------------------------------------------------------------

TokenStream concatenate(std::span<const TokenStream> parts, std::string source_id) {
  std::vector<Token> tokens;
  std::vector<std::size_t> sentences;
  std::vector<std::size_t> documents;
  for (const auto& p : parts) {
    const std::size_t offset = tokens.size();
    tokens.insert(tokens.end(), p.tokens().begin(), p.tokens().end());
    for (std::size_t b : p.sentence_bounds()) sentences.push_back(offset + b);
    for (std::size_t b : p.document_bounds()) documents.push_back(offset + b);
  }
  return TokenStream(std::move(tokens), std::move(sentences), std::move(documents), std::move(source_id));
}

TokenStream word_tokens(const TokenStream& stream) {
  std::vector<Token> tokens;
  std::vector<std::size_t> sentences;
  std::vector<std::size_t> documents;
  tokens.reserve(stream.size());
  std::size_t sent = 0;
  for (std::size_t d = 0; d < stream.document_count(); ++d) {
    for (; sent < stream.sentence_count() && stream.sentence_end(sent) <= stream.document_end(d); ++sent) {
      for (std::size_t i = stream.sentence_begin(sent); i < stream.sentence_end(sent); ++i) {
        if (stream.tokens()[i].is_word) tokens.push_back(stream.tokens()[i]);
      }
      if (tokens.size() > (sentences.empty() ? 0 : sentences.back())) sentences.push_back(tokens.size());
    }
    if (tokens.size() > (documents.empty() ? 0 : documents.back())) documents.push_back(tokens.size());
  }
  return TokenStream(std::move(tokens), std::move(sentences), std::move(documents), stream.source_id());
}

std::vector<Segment> segment(const TokenStream& stream, std::size_t size) {
  if (size < 1) throw ArgumentError("segment size must be at least 1");
  std::vector<Segment> out;
  const auto& tokens = stream.tokens();
  for (std::size_t d = 0; d < stream.document_count(); ++d) {
    std::size_t start = stream.document_begin(d);
    std::size_t words = 0;
    for (std::size_t i = start; i < stream.document_end(d); ++i) {
      if (tokens[i].is_word) ++words;
      if (words == size) {
        out.push_back(Segment{start, i + 1, words});
        start = i + 1;
        words = 0;
      }
    }
  }
  return out;
}

SampleResult sample_sentences(const TokenStream& stream, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw ArgumentError("sampling budget must be at least 1");
  if (budget >= stream.size()) return SampleResult{stream, budget > stream.size()};

  std::vector<std::size_t> order(stream.sentence_count());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  rng::Engine eng(seed);
  rng::shuffle(order, eng);

  std::vector<char> keep(stream.sentence_count(), 0);
  std::size_t taken = 0;
  for (std::size_t s : order) {
    std::size_t len = stream.sentence_end(s) - stream.sentence_begin(s);
    if (taken + len > budget) break;
    taken += len;
    keep[s] = 1;
  }

  std::vector<Token> tokens;
  std::vector<std::size_t> sentences;
  std::vector<std::size_t> documents;
  tokens.reserve(taken);
  std::size_t sent = 0;
  for (std::size_t d = 0; d < stream.document_count(); ++d) {
    for (; sent < stream.sentence_count() && stream.sentence_end(sent) <= stream.document_end(d); ++sent) {
      if (!keep[sent]) continue;
      for (std::size_t i = stream.sentence_begin(sent); i < stream.sentence_end(sent); ++i) {
        tokens.push_back(stream.tokens()[i]);
      }
      sentences.push_back(tokens.size());
    }
    if (tokens.size() > (documents.empty() ? 0 : documents.back())) documents.push_back(tokens.size());
  }
  return SampleResult{TokenStream(std::move(tokens), std::move(sentences), std::move(documents),
                                  stream.source_id()),
                      false};
}

std::vector<std::string> type_keys(const TokenStream& stream, TypeDefinition def) {
  std::vector<std::string> keys;
  keys.reserve(stream.size());
  for (const Token& t : stream.tokens()) {
    if (def == TypeDefinition::lemma && t.lemma && !t.lemma->empty() && *t.lemma != "<unknown>") {
      keys.push_back(text::lowercase(*t.lemma));
    } else {
      keys.push_back(text::lowercase(t.surface));
    }
  }
  return keys;
}

}  // namespace corplex
