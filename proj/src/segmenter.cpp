#include <algorithm>
#include <array>
#include <string_view>

#include "claimcheck/corpus.hpp"
#include "unicode.hpp"

namespace claimcheck {

namespace {

// A period ending one of these words never closes a sentence. Case-sensitive.
// "al." covers "et al." since words are whitespace-delimited.
constexpr std::array<std::string_view, 32> kAbbreviations = {
    "e.g.",  "i.e.", "Fig.",   "Figs.", "fig.", "figs.", "al.", "vs.",
    "Dr.",   "No.",  "Nos.",   "cf.",  "Eq.",   "Eqs.",   "eq.", "approx.",
    "Ref.",  "Refs.", "Mr.",   "Mrs.",  "Ms.",  "Prof.", "St.",    "Jr.", "Sr.",
    "Inc.",  "Ltd.", "Co.",    "resp.", "ca.",  "Vol.",  "pp.",
};

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// The whitespace-delimited word ending at `end` (inclusive), minus leading brackets/quotes.
std::string_view word_ending_at(std::string_view body, std::size_t end) {
    std::size_t begin = end;
    while (begin > 0 && !is_ascii_space(body[begin - 1])) {
        --begin;
    }
    auto word = body.substr(begin, end + 1 - begin);
    const auto first = word.find_first_not_of("([{\"'");
    return first == std::string_view::npos ? std::string_view{} : word.substr(first);
}

bool is_abbreviation(std::string_view body, std::size_t period) {
    const auto word = word_ending_at(body, period);
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

// Boundary after the terminator at `pos`? Returns the start of the next sentence, or npos.
// Requiring whitespace right after the terminator also rules out decimals like "0.5".
std::size_t boundary_after(std::string_view body, std::size_t pos) {
    const char mark = body[pos];
    if (mark != '.' && mark != '!' && mark != '?') {
        return std::string_view::npos;
    }
    std::size_t next = pos + 1;
    if (next >= body.size() || !is_ascii_space(body[next])) {
        return std::string_view::npos;
    }
    while (next < body.size() && is_ascii_space(body[next])) {
        ++next;
    }
    if (next >= body.size()) {
        return std::string_view::npos;
    }
    std::size_t probe = next;
    const int cp = detail::next_code_point(body, probe);
    if (!detail::is_upper(cp) && !detail::is_digit(cp)) {
        return std::string_view::npos;
    }
    if (mark == '.' && is_abbreviation(body, pos)) {
        return std::string_view::npos;
    }
    return next;
}

void push_trimmed(std::vector<Sentence>& out, const Document& doc, std::string_view piece) {
    const auto first = piece.find_first_not_of(" \t\n\r\f\v");
    if (first == std::string_view::npos) {
        return;
    }
    const auto last = piece.find_last_not_of(" \t\n\r\f\v");
    out.push_back(Sentence{doc.doc_id, out.size(), std::string(piece.substr(first, last + 1 - first))});
}

} // namespace

std::vector<Sentence> segment_sentences(const Document& doc) {
    std::vector<Sentence> sentences;
    const std::string_view body = doc.body;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const auto next = boundary_after(body, i);
        if (next == std::string_view::npos) {
            continue;
        }
        push_trimmed(sentences, doc, body.substr(start, i + 1 - start));
        start = next;
        i = next - 1;
    }
    if (start < body.size()) {
        push_trimmed(sentences, doc, body.substr(start));
    }
    return sentences;
}

} // namespace claimcheck
