#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace corplex::testing {

enum class Domain { narrow, broad };

/// Deterministic tagged vertical corpus with <doc> markup and exactly
/// `tokens` tokens (punctuation included).
///
/// narrow: small topical vocabulary, heavy within-document repetition,
///         short sentences of short words.
/// broad:  large Zipfian vocabulary, little repetition, sentence lengths
///         and word lengths spread widely.
std::string synthetic_vertical(Domain domain, std::size_t tokens, std::uint64_t seed);

/// Surface form of synthetic word `id` with `syllables` CV syllables. Distinct
/// (id, syllables) pairs give distinct words; the syllable heuristic counts
/// exactly `syllables` for every form.
std::string synthetic_word(std::size_t id, std::size_t syllables);

}  // namespace corplex::testing
