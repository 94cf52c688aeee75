#include "corplex/readability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corplex/error.hpp"
#include "corplex/text.hpp"

namespace corplex {

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }
bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Lowercased ASCII letters only; apostrophes and digits are dropped.
std::string letters_of(std::string_view word) {
  std::string out;
  for (char c : text::lowercase(word)) {
    if (c >= 'a' && c <= 'z') out.push_back(c);
  }
  return out;
}

std::size_t heuristic(const std::string& w) {
  std::size_t groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (groups == 0) return 1;
  const std::size_t n = w.size();

  if (groups > 1 && w.back() == 'e') {
    // silent final e, except consonant + "le" (ta-ble)
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && is_consonant(w[n - 3]);
    if (!consonant_le && !is_vowel(w[n - 2])) --groups;
  } else if (groups > 1 && ends_with(w, "ed") && n >= 3) {
    // -ed is silent unless it follows t or d (want-ed)
    const char c = w[n - 3];
    if (is_consonant(c) && c != 't' && c != 'd') --groups;
  } else if (groups > 1 && ends_with(w, "es") && n >= 4) {
    // -es is silent after a silent-e stem (make-s) but not after sibilants
    // (box-es, hors-es) or consonant + "le" (ta-bles)
    const char c = w[n - 3];
    const bool sibilant = c == 's' || c == 'x' || c == 'z' || c == 'c' || c == 'g' ||
                          ends_with(w, "ches") || ends_with(w, "shes");
    const bool consonant_les = c == 'l' && n >= 5 && is_consonant(w[n - 4]);
    if (is_consonant(c) && !sibilant && !consonant_les) --groups;
  }
  // a vowel before -ing is its own syllable (be-ing, say-ing)
  if (n >= 4 && ends_with(w, "ing") && is_vowel(w[n - 4])) ++groups;
  return std::max<std::size_t>(groups, 1);
}

}  // namespace

void ReadabilityCounts::validate() const {
  if (sentences < 1) throw ArgumentError("readability counts: need at least one sentence");
  if (words < sentences) throw ArgumentError("readability counts: fewer words than sentences");
  if (syllables < words) throw ArgumentError("readability counts: fewer syllables than words");
}

const std::map<std::string, std::size_t>& SyllableCounter::builtin_exceptions() {
  // Vowel sequences that split into two syllables, and a few irregulars.
  static const std::map<std::string, std::size_t> table = {
      {"area", 3},     {"idea", 3},      {"ideas", 3},     {"create", 2},    {"created", 3},
      {"creative", 3}, {"real", 1},      {"really", 2},    {"science", 2},   {"scientific", 4},
      {"society", 4},  {"variety", 4},   {"quiet", 2},     {"diet", 2},      {"poem", 2},
      {"poet", 2},     {"poetry", 3},    {"video", 3},     {"radio", 3},     {"period", 3},
      {"piano", 3},    {"via", 2},       {"lion", 2},      {"giant", 2},     {"client", 2},
      {"museum", 3},   {"theatre", 3},   {"theater", 3},   {"reality", 4},   {"annual", 3},
      {"usually", 4},  {"actually", 4},  {"situation", 4}, {"experience", 4}, {"serious", 3},
      {"various", 3},  {"previous", 3},  {"obvious", 3},   {"media", 3},     {"material", 4},
      {"fire", 1},      {"hour", 1},      {"our", 1},       {"business", 2},
      {"evening", 2},  {"chocolate", 3}, {"vegetable", 4},
      {"recipe", 3},   {"simile", 3},    {"apostrophe", 4}, {"catastrophe", 4}, {"people", 2},
      {"naive", 2},    {"cooperate", 4}, {"coordinate", 4}, {"react", 2},     {"reaction", 3},
      {"being", 2},    {"ruin", 2},      {"fluid", 2},     {"genuine", 3},
  };
  return table;
}

SyllableCounter::SyllableCounter() : exceptions_(builtin_exceptions()) {}

SyllableCounter SyllableCounter::load(const std::filesystem::path& path, bool replace) {
  const KeyValueConfig cfg = KeyValueConfig::load(path);
  std::map<std::string, std::size_t> table = replace ? std::map<std::string, std::size_t>{} : builtin_exceptions();
  for (const auto& [word, value] : cfg.entries()) {
    std::size_t n = 0;
    try {
      n = std::stoul(value);
    } catch (const std::exception&) {
      throw ArgumentError("syllable lexicon: '" + word + "' has non-numeric count '" + value + "'");
    }
    if (n < 1) throw ArgumentError("syllable lexicon: '" + word + "' must have at least one syllable");
    table[letters_of(word)] = n;
  }
  return SyllableCounter(std::move(table));
}

std::size_t SyllableCounter::count_part(const std::string& part) const {
  const std::string w = letters_of(part);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;
  return heuristic(w);
}

std::size_t SyllableCounter::count(std::string_view word) const {
  std::size_t total = 0;
  std::size_t start = 0;
  while (start <= word.size()) {
    std::size_t dash = word.find('-', start);
    if (dash == std::string_view::npos) dash = word.size();
    const std::string part(word.substr(start, dash - start));
    if (!letters_of(part).empty()) total += count_part(part);
    start = dash + 1;
  }
  return std::max<std::size_t>(total, 1);
}

std::size_t count_syllables(std::string_view word) {
  static const SyllableCounter counter;
  return counter.count(word);
}

double flesch_reading_ease(const ReadabilityCounts& c) {
  c.validate();
  const double w = static_cast<double>(c.words);
  return 206.835 - 1.015 * (w / static_cast<double>(c.sentences)) - 84.6 * (static_cast<double>(c.syllables) / w);
}

double flesch_kincaid(const ReadabilityCounts& c) {
  c.validate();
  const double w = static_cast<double>(c.words);
  return 0.39 * (w / static_cast<double>(c.sentences)) + 11.8 * (static_cast<double>(c.syllables) / w) - 15.59;
}

const std::vector<FleschBand>& flesch_bands() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  static const std::vector<FleschBand> bands = {
      {"very difficult", -inf, 30}, {"difficult", 30, 50}, {"fairly difficult", 50, 60},
      {"standard", 60, 70},         {"fairly easy", 70, 80}, {"easy", 80, 90},
      {"very easy", 90, inf},
  };
  return bands;
}

const FleschBand& classify_flesch(double score) {
  if (std::isnan(score)) throw ArgumentError("Flesch band of NaN");
  const auto& bands = flesch_bands();
  for (const auto& b : bands) {
    if (score <= b.upper) return b;
  }
  return bands.back();
}

ReadabilityCounts readability_counts(const TokenStream& stream, std::size_t begin, std::size_t end,
                                     const SyllableCounter& counter) {
  ReadabilityCounts c;
  const auto& tokens = stream.tokens();
  const auto bounds = stream.sentence_bounds();
  // first sentence whose end lies past `begin`
  std::size_t s = static_cast<std::size_t>(std::upper_bound(bounds.begin(), bounds.end(), begin) - bounds.begin());
  bool sentence_has_word = false;
  for (std::size_t i = begin; i < end; ++i) {
    while (s < bounds.size() && i >= bounds[s]) {
      ++s;
      sentence_has_word = false;
    }
    if (!tokens[i].is_word) continue;
    ++c.words;
    c.syllables += counter.count(tokens[i].surface);
    if (!sentence_has_word) {
      sentence_has_word = true;
      ++c.sentences;
    }
  }
  return c;
}

ReadabilityCounts readability_counts(const TokenStream& stream, const SyllableCounter& counter) {
  return readability_counts(stream, 0, stream.size(), counter);
}

std::vector<ReadabilityCounts> sample_counts(const TokenStream& stream, std::size_t sample_size,
                                             const SyllableCounter& counter) {
  const auto segments = segment(stream, sample_size);
  if (segments.empty()) {
    throw UndefinedMeasure("readability: no full sample of " + std::to_string(sample_size) + " words");
  }
  std::vector<ReadabilityCounts> out;
  out.reserve(segments.size());
  for (const Segment& seg : segments) out.push_back(readability_counts(stream, seg.start, seg.end, counter));
  return out;
}

SampleSeries readability_series(const TokenStream& stream, std::size_t sample_size, ReadabilityFormula formula,
                                const SyllableCounter& counter) {
  SampleSeries series;
  series.segment_size = sample_size;
  series.measure_name =
      formula == ReadabilityFormula::flesch_reading_ease ? "flesch_reading_ease" : "flesch_kincaid";
  for (const auto& c : sample_counts(stream, sample_size, counter)) {
    series.values.push_back(formula == ReadabilityFormula::flesch_reading_ease ? flesch_reading_ease(c)
                                                                               : flesch_kincaid(c));
  }
  return series;
}

stats::MeanSd mean_sentence_length(const TokenStream& stream) {
  std::vector<double> lengths;
  const auto& tokens = stream.tokens();
  for (std::size_t s = 0; s < stream.sentence_count(); ++s) {
    std::size_t words = 0;
    for (std::size_t i = stream.sentence_begin(s); i < stream.sentence_end(s); ++i) words += tokens[i].is_word ? 1 : 0;
    if (words > 0) lengths.push_back(static_cast<double>(words));
  }
  if (lengths.empty()) throw UndefinedMeasure("mean sentence length: no sentence contains a word");
  return stats::mean_sd(lengths);
}

}  // namespace corplex
