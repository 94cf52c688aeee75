#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corplex/corpus.hpp"
#include "corplex/diversity.hpp"
#include "corplex/keyvalue.hpp"
#include "corplex/stats.hpp"

namespace corplex {

struct ReadabilityCounts {
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;

  /// Throws ArgumentError unless 1 <= sentences <= words <= syllables.
  void validate() const;
};

/// Vowel-group syllable heuristic with an exception lexicon. Lexicon entries
/// are looked up on the lowercased word (or hyphen-separated part).
class SyllableCounter {
 public:
  /// Uses the built-in exception lexicon.
  SyllableCounter();
  explicit SyllableCounter(std::map<std::string, std::size_t> exceptions) : exceptions_(std::move(exceptions)) {}

  /// `word = count` lines. Entries are added to the built-in lexicon unless
  /// `replace` is set.
  static SyllableCounter load(const std::filesystem::path& path, bool replace = false);

  /// At least 1 for any input. Hyphenated words sum their parts.
  std::size_t count(std::string_view word) const;

  const std::map<std::string, std::size_t>& exceptions() const { return exceptions_; }
  static const std::map<std::string, std::size_t>& builtin_exceptions();

 private:
  std::size_t count_part(const std::string& part) const;
  std::map<std::string, std::size_t> exceptions_;
};

/// Uses a shared default SyllableCounter.
std::size_t count_syllables(std::string_view word);

/// 206.835 - 1.015 (words/sentences) - 84.6 (syllables/words)
double flesch_reading_ease(const ReadabilityCounts& c);
/// 0.39 (words/sentences) + 11.8 (syllables/words) - 15.59
double flesch_kincaid(const ReadabilityCounts& c);

/// Half-open score interval (lower, upper]. The outer bands extend to
/// -inf and +inf so every score has exactly one band.
struct FleschBand {
  std::string name;
  double lower;
  double upper;
};

const std::vector<FleschBand>& flesch_bands();
const FleschBand& classify_flesch(double score);

/// Word, sentence and syllable counts of tokens [begin, end). Sentences are
/// counted if at least one of their words falls inside the range.
ReadabilityCounts readability_counts(const TokenStream& stream, std::size_t begin, std::size_t end,
                                     const SyllableCounter& counter);
ReadabilityCounts readability_counts(const TokenStream& stream, const SyllableCounter& counter);

/// Counts for each consecutive sample of `sample_size` word tokens (document
/// local, as in `segment`). Throws UndefinedMeasure if no full sample exists.
std::vector<ReadabilityCounts> sample_counts(const TokenStream& stream, std::size_t sample_size,
                                             const SyllableCounter& counter);

enum class ReadabilityFormula { flesch_reading_ease, flesch_kincaid };

/// Per-sample scores of `formula`.
SampleSeries readability_series(const TokenStream& stream, std::size_t sample_size,
                                ReadabilityFormula formula = ReadabilityFormula::flesch_reading_ease,
                                const SyllableCounter& counter = SyllableCounter());

/// Mean and population SD of word tokens per sentence. Sentences without
/// words (punctuation only) are ignored.
stats::MeanSd mean_sentence_length(const TokenStream& stream);

}  // namespace corplex
