#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "corplex/corpus.hpp"
#include "corplex/keyvalue.hpp"

namespace corplex {

/// POS tag prefixes per lexical class. A tag matching a proper-noun prefix is
/// never counted as a noun, whatever the noun prefixes say.
struct TagClassMap {
  std::vector<std::string> noun_tags{"NN"};
  std::vector<std::string> proper_noun_tags{"NP", "NPS", "NNP", "NNPS"};
  std::vector<std::string> verb_tags{"V"};
  std::vector<std::string> adjective_tags{"JJ"};
  std::vector<std::string> other_lexical_tags{};
  /// Tags matching these prefixes are not counted in any class (modals by default).
  std::vector<std::string> excluded_tags{"MD"};

  /// Penn-style defaults, optionally counting RB* adverbs as lexical.
  static TagClassMap penn(bool include_adverbs = false);

  /// Keys: noun, proper_noun, verb, adjective, other_lexical, excluded. Each
  /// value is a whitespace-separated prefix list; missing keys keep defaults.
  static TagClassMap from_config(const KeyValueConfig& config);
  static TagClassMap load(const std::filesystem::path& path);

  /// Throws ArgumentError if one tag could land in two of the counted classes.
  void validate() const;

  enum class Class { none, proper_noun, noun, verb, adjective, other_lexical };
  Class classify(std::string_view tag) const;
};

struct DensityRatios {
  double noun_ratio = 0;
  double verb_ratio = 0;
  double adj_ratio = 0;
  double lexical_ratio = 0;
  std::size_t words = 0;
};

/// Class counts over the is_word tokens, divided by the word-token count.
/// Throws ArgumentError naming the token index of the first untagged word and
/// UndefinedMeasure for a stream without words.
DensityRatios lexical_density(const TokenStream& stream, const TagClassMap& map = {});

}  // namespace corplex
