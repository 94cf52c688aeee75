#include "corplex/density.hpp"

#include <algorithm>

#include "corplex/error.hpp"

namespace corplex {

namespace {

bool matches(const std::vector<std::string>& prefixes, std::string_view tag) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return !p.empty() && tag.substr(0, p.size()) == p; });
}

bool prefix_overlap(const std::string& a, const std::string& b) {
  const std::size_t n = std::min(a.size(), b.size());
  return a.compare(0, n, b, 0, n) == 0;
}

}  // namespace

TagClassMap TagClassMap::penn(bool include_adverbs) {
  TagClassMap map;
  if (include_adverbs) map.other_lexical_tags = {"RB"};
  return map;
}

TagClassMap TagClassMap::from_config(const KeyValueConfig& config) {
  TagClassMap map;
  const std::pair<const char*, std::vector<std::string>*> keys[] = {
      {"noun", &map.noun_tags},         {"proper_noun", &map.proper_noun_tags},
      {"verb", &map.verb_tags},         {"adjective", &map.adjective_tags},
      {"other_lexical", &map.other_lexical_tags}, {"excluded", &map.excluded_tags},
  };
  for (const auto& [key, slot] : keys) {
    if (config.contains(key)) *slot = config.list(key);
  }
  for (const auto& [key, value] : config.entries()) {
    const bool known = std::any_of(std::begin(keys), std::end(keys), [&](const auto& k) { return key == k.first; });
    if (!known) throw ArgumentError("tag-class map: unknown class '" + key + "'");
  }
  map.validate();
  return map;
}

TagClassMap TagClassMap::load(const std::filesystem::path& path) { return from_config(KeyValueConfig::load(path)); }

void TagClassMap::validate() const {
  const std::pair<const char*, const std::vector<std::string>*> classes[] = {
      {"noun", &noun_tags}, {"verb", &verb_tags}, {"adjective", &adjective_tags}, {"other_lexical", &other_lexical_tags}};
  for (std::size_t i = 0; i < std::size(classes); ++i) {
    for (std::size_t j = i + 1; j < std::size(classes); ++j) {
      for (const auto& a : *classes[i].second) {
        for (const auto& b : *classes[j].second) {
          if (prefix_overlap(a, b)) {
            throw ArgumentError(std::string("tag-class map: prefix '") + a + "' (" + classes[i].first +
                                ") overlaps '" + b + "' (" + classes[j].first + ")");
          }
        }
      }
    }
  }
}

TagClassMap::Class TagClassMap::classify(std::string_view tag) const {
  if (matches(proper_noun_tags, tag)) return Class::proper_noun;
  if (matches(excluded_tags, tag)) return Class::none;
  if (matches(noun_tags, tag)) return Class::noun;
  if (matches(verb_tags, tag)) return Class::verb;
  if (matches(adjective_tags, tag)) return Class::adjective;
  if (matches(other_lexical_tags, tag)) return Class::other_lexical;
  return Class::none;
}

DensityRatios lexical_density(const TokenStream& stream, const TagClassMap& map) {
  std::size_t words = 0, nouns = 0, verbs = 0, adjs = 0, other = 0;
  const auto& tokens = stream.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.is_word) continue;
    if (!t.pos) throw ArgumentError("lexical density: token " + std::to_string(i) + " ('" + t.surface + "') has no POS tag");
    ++words;
    switch (map.classify(*t.pos)) {
      case TagClassMap::Class::noun: ++nouns; break;
      case TagClassMap::Class::verb: ++verbs; break;
      case TagClassMap::Class::adjective: ++adjs; break;
      case TagClassMap::Class::other_lexical: ++other; break;
      default: break;
    }
  }
  if (words == 0) throw UndefinedMeasure("lexical density: stream has no word tokens");
  const double n = static_cast<double>(words);
  DensityRatios r;
  r.words = words;
  r.noun_ratio = nouns / n;
  r.verb_ratio = verbs / n;
  r.adj_ratio = adjs / n;
  r.lexical_ratio = (nouns + verbs + adjs + other) / n;
  return r;
}

}  // namespace corplex
