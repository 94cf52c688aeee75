#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 and character-class helpers. Only what tokenization and type
// folding need; no normalization.
namespace corplex::text {

/// Decodes `input` into code points. Throws IngestionError (byte unit) at the
/// offset of the first invalid sequence.
std::vector<char32_t> decode_utf8(std::string_view input);

/// Appends the UTF-8 encoding of `cp` to `out`.
void append_utf8(std::string& out, char32_t cp);

std::string encode_utf8(const std::u32string& cps);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_upper(char32_t cp);
bool is_digit(char32_t cp);

char32_t to_lower(char32_t cp);

/// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
std::string lowercase(std::string_view utf8);

/// Splits on runs of ASCII whitespace.
std::vector<std::string> split_ws(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace corplex::text
