#pragma once

// Internal UTF-8 helpers backed by ICU character properties.

#include <cstddef>
#include <string>
#include <string_view>

namespace claimcheck::detail {

/// Decodes the code point at `pos` and advances `pos`. Returns a negative value
/// for an ill-formed sequence (pos still advances by at least one byte).
int next_code_point(std::string_view text, std::size_t& pos);

bool is_word_char(int cp);
bool is_upper(int cp);
bool is_digit(int cp);
bool is_space(int cp);

void append_lower(std::string& out, int cp);

} // namespace claimcheck::detail
