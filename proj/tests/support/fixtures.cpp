#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "corplex/rng.hpp"

namespace corplex::testing {

namespace {

constexpr std::size_t kFunctionWords = 60;

// A syllable is onset + vowel + optional coda. Syllables spelling the id
// digits use vowels a, i, o; padding syllables use u, so padded and unpadded
// forms never collide.
const char* const kOnsets[] = {"b",  "bl", "br", "d",  "dr", "f",  "fl", "fr", "g",  "gl",
                               "gr", "k",  "kl", "kr", "l",  "m",  "n",  "p",  "pl", "pr",
                               "r",  "s",  "sk", "sl", "sm", "sp", "st", "t",  "tr", "v"};
const char* const kCodas[] = {"", "n", "r", "s", "t", "l", "k", "m"};
constexpr std::size_t kBase = 30 * 3 * 8;

std::string id_syllables(std::size_t id) {
  static const char vowels[] = {'a', 'i', 'o'};
  std::string out;
  do {
    const std::size_t d = id % kBase;
    out += kOnsets[d / 24];
    out.push_back(vowels[(d / 8) % 3]);
    out += kCodas[d % 8];
    id /= kBase;
  } while (id > 0);
  return out;
}

std::size_t digit_count(std::size_t id) {
  std::size_t n = 1;
  while (id >= kBase) {
    id /= kBase;
    ++n;
  }
  return n;
}

struct Lexeme {
  std::string surface;
  const char* tag;
};

const char* function_tag(std::size_t id) {
  static const char* tags[] = {"DT", "IN", "PRP", "CC", "TO", "MD", "DT", "IN", "PRP", "WDT"};
  return tags[id % 10];
}

const char* content_tag(std::uint64_t h) {
  const unsigned r = static_cast<unsigned>(h % 100);
  if (r < 40) return "NN";
  if (r < 47) return "NNS";
  if (r < 52) return "NP";
  if (r < 58) return "VBD";
  if (r < 64) return "VBZ";
  if (r < 68) return "VB";
  if (r < 72) return "VBG";
  if (r < 84) return "JJ";
  if (r < 95) return "RB";
  return "CD";
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

struct Profile {
  std::size_t content_types;
  double zipf_exponent;
  double repeat_probability;
  std::size_t cache_size;
  std::size_t topics;
  std::size_t sentence_min, sentence_max;
  std::size_t doc_min, doc_max;
  double function_share;
  // syllable count weights for 1..4 syllables
  double syllable_weights[4];
};

Profile profile(Domain d) {
  if (d == Domain::narrow) {
    return Profile{30000, 1.15, 0.30, 120, 12, 6, 16, 1500, 3000, 0.45, {0.62, 0.28, 0.08, 0.02}};
  }
  return Profile{80000, 1.0, 0.06, 60, 1, 5, 36, 1500, 6000, 0.42, {0.36, 0.34, 0.20, 0.10}};
}

class Zipf {
 public:
  Zipf(std::size_t n, double s) : cdf_(n) {
    double acc = 0;
    for (std::size_t r = 0; r < n; ++r) {
      acc += std::pow(static_cast<double>(r + 1), -s);
      cdf_[r] = acc;
    }
    for (double& c : cdf_) c /= acc;
  }
  std::size_t draw(rng::Engine& eng) const {
    const double u = rng::uniform01(eng);
    return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()) % cdf_.size();
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

std::string synthetic_word(std::size_t id, std::size_t syllables) {
  std::string w = id_syllables(id);
  for (std::size_t k = digit_count(id); k < syllables; ++k) {
    w += kOnsets[(id + k) % 30];
    w.push_back('u');
  }
  return w;
}

std::string synthetic_vertical(Domain domain, std::size_t tokens, std::uint64_t seed) {
  const Profile p = profile(domain);
  rng::Engine eng(seed * 0x9e3779b97f4a7c15ULL + (domain == Domain::narrow ? 1 : 2));
  const Zipf content(p.content_types, p.zipf_exponent);
  const Zipf function(kFunctionWords, 1.0);

  auto lexeme = [&](std::size_t id) {
    if (id < kFunctionWords) return Lexeme{synthetic_word(id, 1), function_tag(id)};
    const std::uint64_t h = mix(id);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    std::size_t syl = 1;
    double acc = p.syllable_weights[0];
    while (syl < 4 && u > acc) acc += p.syllable_weights[syl++];
    syl = std::max(syl, digit_count(id));
    return Lexeme{synthetic_word(id, syl), content_tag(h >> 7)};
  };
  auto range = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng::uniform_index(eng, hi - lo + 1));
  };

  std::string out;
  std::size_t emitted = 0;
  std::size_t doc_no = 0;
  while (emitted < tokens) {
    out += "<doc id=\"d" + std::to_string(doc_no) + "\">\n";
    const std::size_t topic = p.topics > 1 ? static_cast<std::size_t>(rng::uniform_index(eng, p.topics)) : 0;
    const std::size_t doc_len = range(p.doc_min, p.doc_max);
    std::size_t in_doc = 0;
    std::deque<std::size_t> recent;
    while (in_doc < doc_len && emitted < tokens) {
      std::size_t words = range(p.sentence_min, p.sentence_max);
      // one final "." per sentence, plus a comma after every 8th word
      auto cost = [](std::size_t n) { return n + 1 + (n - 1) / 8; };
      const std::size_t left = tokens - emitted;
      bool full_stop = true;
      if (cost(words) > left) {
        if (left == 1) {
          words = 1;
          full_stop = false;
        } else {
          while (cost(words) > left) --words;
        }
      }
      const std::size_t sentence_tokens = full_stop ? cost(words) : 1;
      for (std::size_t w = 0; w < words; ++w) {
        std::size_t id;
        if (rng::uniform01(eng) < p.function_share) {
          id = function.draw(eng);
        } else if (!recent.empty() && rng::uniform01(eng) < p.repeat_probability) {
          id = recent[static_cast<std::size_t>(rng::uniform_index(eng, recent.size()))];
        } else {
          const std::size_t rank = content.draw(eng);
          // topics rotate which part of the vocabulary the head ranks map to
          id = kFunctionWords + (rank + topic * 97) % p.content_types;
          recent.push_back(id);
          if (recent.size() > p.cache_size) recent.pop_front();
        }
        const Lexeme lx = lexeme(id);
        out += lx.surface;
        out += '\t';
        out += lx.tag;
        out += '\t';
        out += lx.surface;
        out += '\n';
        if (w + 1 < words && (w + 1) % 8 == 0) out += ",\t,\t,\n";
      }
      if (full_stop) {
        out += ".\tSENT\t.\n";
      } else {
        out += "</s>\n";
      }
      emitted += sentence_tokens;
      in_doc += sentence_tokens;
    }
    out += "</doc>\n";
    ++doc_no;
  }
  return out;
}

}  // namespace corplex::testing
