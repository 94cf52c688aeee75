#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corplex {

struct Token {
  std::string surface;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;
  bool is_word = true;

  bool operator==(const Token&) const = default;
};

/// Ordered tokens with sentence and document boundaries, stored as exclusive
/// end indices. Document boundaries are always a subset of the sentence
/// boundaries. Immutable after construction.
class TokenStream {
 public:
  TokenStream() = default;

  /// Validates every invariant and throws ArgumentError on violation. An empty
  /// `document_bounds` means one document spanning the whole stream.
  TokenStream(std::vector<Token> tokens, std::vector<std::size_t> sentence_bounds,
              std::vector<std::size_t> document_bounds = {}, std::string source_id = {});

  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  std::span<const std::size_t> sentence_bounds() const noexcept { return sentence_bounds_; }
  std::span<const std::size_t> document_bounds() const noexcept { return document_bounds_; }
  const std::string& source_id() const noexcept { return source_id_; }

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  std::size_t sentence_count() const noexcept { return sentence_bounds_.size(); }
  std::size_t document_count() const noexcept { return document_bounds_.size(); }

  std::size_t sentence_begin(std::size_t s) const { return s == 0 ? 0 : sentence_bounds_[s - 1]; }
  std::size_t sentence_end(std::size_t s) const { return sentence_bounds_[s]; }
  std::size_t document_begin(std::size_t d) const { return d == 0 ? 0 : document_bounds_[d - 1]; }
  std::size_t document_end(std::size_t d) const { return document_bounds_[d]; }

  std::size_t word_count() const noexcept;
  /// True when every token carries a POS tag.
  bool tagged() const noexcept;

  bool operator==(const TokenStream& other) const {
    return tokens_ == other.tokens_ && sentence_bounds_ == other.sentence_bounds_ &&
           document_bounds_ == other.document_bounds_;
  }

 private:
  std::vector<Token> tokens_;
  std::vector<std::size_t> sentence_bounds_;
  std::vector<std::size_t> document_bounds_;
  std::string source_id_;
};

struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t word_count = 0;
};

enum class TypeDefinition { surface, lemma };

struct PlainTextOptions {
  /// Lowercase abbreviations that never end a sentence and keep their dots.
  std::vector<std::string> abbreviations = default_abbreviations();
  /// A blank line closes the current sentence even without final punctuation.
  bool paragraph_breaks_end_sentences = true;

  static std::vector<std::string> default_abbreviations();
};

struct VerticalOptions {
  std::string sentence_end_tag = "SENT";
  std::set<std::string> punctuation_tags = default_punctuation_tags();

  static std::set<std::string> default_punctuation_tags();
};

/// Splits UTF-8 text into word and punctuation tokens with sentence bounds.
/// Throws IngestionError with the byte offset of invalid UTF-8.
TokenStream tokenize_plain(std::string_view text, const PlainTextOptions& options = {},
                           std::string source_id = {});

/// Reads `surface<TAB>pos<TAB>lemma` lines. Lines of the form `<...>` are
/// structural markup: `</s>` closes a sentence, `<doc ...>`/`<text ...>` and
/// their closing tags delimit documents; other markup is ignored.
TokenStream read_vertical(std::istream& in, const VerticalOptions& options = {},
                          std::string source_id = {});
TokenStream read_vertical(std::string_view content, const VerticalOptions& options = {},
                          std::string source_id = {});

/// Inverse of read_vertical. Every token must carry a POS tag.
void write_vertical(std::ostream& out, const TokenStream& stream,
                    const VerticalOptions& options = {});

/// Concatenates streams; each input's documents stay separate documents.
TokenStream concatenate(std::span<const TokenStream> parts, std::string source_id = {});

/// Keeps only is_word tokens. Sentences and documents left empty are dropped.
TokenStream word_tokens(const TokenStream& stream);

/// Consecutive, non-overlapping runs of exactly `size` word tokens. Segments
/// never cross a document boundary; each document's trailing remainder is
/// discarded.
std::vector<Segment> segment(const TokenStream& stream, std::size_t size);

struct SampleResult {
  TokenStream stream;
  /// Set when the budget is larger than the whole stream.
  bool budget_exceeds_stream = false;
};

/// Draws whole sentences uniformly without replacement until the next one
/// would overflow `budget` tokens. Output keeps the original sentence order.
SampleResult sample_sentences(const TokenStream& stream, std::size_t budget, std::uint64_t seed);

/// Type key per token: lowercased surface, or the lemma when requested and
/// available (TreeTagger's "<unknown>" lemma falls back to the surface).
std::vector<std::string> type_keys(const TokenStream& stream,
                                   TypeDefinition def = TypeDefinition::surface);

}  // namespace corplex
