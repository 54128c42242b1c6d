#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

/// Small text utilities shared by the codecs and metrics.
namespace gsnforge::text {

std::string_view trim(std::string_view s);

/// Splits on LF, dropping a trailing CR from each line (CRLF input).
std::vector<std::string_view> split_lines(std::string_view s);

/// Decodes UTF-8; invalid bytes map to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

/// ASCII plus Latin-1 uppercase letters folded to lowercase.
char32_t fold_case(char32_t c);
bool is_space(char32_t c);
bool is_punctuation(char32_t c);

/// Ordering that compares embedded digit runs numerically: G2 < G10 < G10.1.
bool natural_less(std::string_view a, std::string_view b);

struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const {
    return natural_less(a, b);
  }
};

/// A `{...}` span inside a description (offsets are byte positions,
/// `end` one past the closing brace).
struct PlaceholderSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Well-formed, non-nested placeholder spans in order of appearance.
std::vector<PlaceholderSpan> placeholder_spans(std::string_view description);

/// True when braces are unbalanced or nested.
bool has_malformed_braces(std::string_view description);

}  // namespace gsnforge::text
