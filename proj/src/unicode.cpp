#include "unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace claimcheck::detail {

int next_code_point(std::string_view text, std::size_t& pos) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    auto i = static_cast<int32_t>(pos);
    UChar32 cp = 0;
    U8_NEXT(bytes, i, length, cp);
    pos = static_cast<std::size_t>(i);
    return cp;
}

bool is_word_char(int cp) {
    return cp >= 0 && (u_isalpha(cp) || u_isdigit(cp));
}

bool is_upper(int cp) { return cp >= 0 && u_isupper(cp); }

bool is_digit(int cp) { return cp >= 0 && u_isdigit(cp); }

bool is_space(int cp) { return cp >= 0 && u_isUWhiteSpace(cp); }

void append_lower(std::string& out, int cp) {
    const UChar32 lower = u_tolower(cp);
    char buffer[U8_MAX_LENGTH];
    int32_t length = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buffer), length, U8_MAX_LENGTH, lower, error);
    if (!error) {
        out.append(buffer, static_cast<std::size_t>(length));
    }
}

} // namespace claimcheck::detail
