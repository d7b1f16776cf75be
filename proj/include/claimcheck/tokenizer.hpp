#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claimcheck {

/// A normalized index term: a lowercased maximal run of Unicode letters and digits.
using Term = std::string;

/// Splits UTF-8 text into terms. Every maximal run of letters/digits becomes
/// one lowercased term; everything else separates. No stemming, no stopwords,
/// so "TMEM27" and "TMEM2" stay distinct. Invalid UTF-8 bytes act as separators.
std::vector<Term> tokenize(std::string_view text);

/// Sorted, de-duplicated terms of `text`.
std::vector<Term> unique_terms(std::string_view text);

/// |A ∩ B| / |A ∪ B| over term sets; 0 when both are empty.
double jaccard(std::string_view a, std::string_view b);

} // namespace claimcheck
