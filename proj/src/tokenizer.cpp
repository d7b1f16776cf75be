#include "claimcheck/tokenizer.hpp"

#include <algorithm>

#include "unicode.hpp"

namespace claimcheck {

std::vector<Term> tokenize(std::string_view text) {
    std::vector<Term> terms;
    Term current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const int cp = detail::next_code_point(text, pos);
        if (detail::is_word_char(cp)) {
            detail::append_lower(current, cp);
        } else if (!current.empty()) {
            terms.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        terms.push_back(std::move(current));
    }
    return terms;
}

std::vector<Term> unique_terms(std::string_view text) {
    auto terms = tokenize(text);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

double jaccard(std::string_view a, std::string_view b) {
    const auto left = unique_terms(a);
    const auto right = unique_terms(b);
    if (left.empty() && right.empty()) {
        return 0.0;
    }
    std::size_t common = 0;
    auto l = left.begin();
    auto r = right.begin();
    while (l != left.end() && r != right.end()) {
        if (*l < *r) {
            ++l;
        } else if (*r < *l) {
            ++r;
        } else {
            ++common;
            ++l;
            ++r;
        }
    }
    const std::size_t all = left.size() + right.size() - common;
    return static_cast<double>(common) / static_cast<double>(all);
}

} // namespace claimcheck
