#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimcheck/claim.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/tokenizer.hpp"

namespace claimcheck {

/// Okapi BM25 free parameters.
struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

/// One ranked retrieval hit. Ranks start at 1; scores are non-increasing with rank.
struct ScoredDocument {
    std::string doc_id;
    double score = 0.0;
    std::size_t rank = 0;

    friend bool operator==(const ScoredDocument&, const ScoredDocument&) = default;
};

/// Smoothed inverse document frequency, ln(1 + (N - df + 0.5) / (df + 0.5)). Always > 0 for df <= N.
double bm25_idf(std::size_t doc_count, std::size_t doc_freq);

/// Contribution of one term to a document's BM25 score.
double bm25_term_weight(double idf, std::uint32_t tf, std::uint32_t doc_length, double avg_length,
                        const Bm25Params& params);

/// Inverted index over title + " " + body of every document.
///
/// Documents are numbered by ascending doc_id, so postings (sorted by ordinal) are
/// also sorted by doc_id and the ordinal doubles as the tie-break key.
/// A built index is immutable and safe for concurrent queries.
class SparseIndex {
public:
    struct Posting {
        std::uint32_t doc = 0; ///< ordinal into doc_ids()
        std::uint32_t tf = 0;

        friend bool operator==(const Posting&, const Posting&) = default;
    };

    SparseIndex() = default;

    static SparseIndex build(const Corpus& corpus, Bm25Params params = {});

    std::size_t document_count() const { return doc_ids_.size(); }
    double average_length() const { return avg_length_; }
    const Bm25Params& params() const { return params_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    std::uint32_t length(std::uint32_t ordinal) const { return lengths_.at(ordinal); }
    std::size_t term_count() const { return postings_.size(); }

    std::optional<std::uint32_t> ordinal(std::string_view doc_id) const;

    /// Empty span for unknown terms.
    std::span<const Posting> postings(std::string_view term) const;

    /// BM25 of `query` against one document. Unknown doc_id throws UnknownDocumentError.
    double score(std::string_view query, std::string_view doc_id) const;

    /// Top-k documents with score > 0, ties broken by doc_id ascending.
    std::vector<ScoredDocument> retrieve(std::string_view query, std::size_t k) const;

    /// Binary format: magic, version, params, doc table, sorted term table.
    void save(std::ostream& out) const;
    static SparseIndex load(std::istream& in);

    friend bool operator==(const SparseIndex&, const SparseIndex&) = default;

private:
    Bm25Params params_;
    std::vector<std::string> doc_ids_;
    std::vector<std::uint32_t> lengths_;
    double avg_length_ = 0.0;
    std::unordered_map<Term, std::vector<Posting>> postings_;
};

SparseIndex build_sparse_index(const Corpus& corpus, Bm25Params params = {});
double bm25_score(const SparseIndex& index, const Claim& claim, std::string_view doc_id);
std::vector<ScoredDocument> retrieve_sparse(const SparseIndex& index, const Claim& claim,
                                            std::size_t k);

} // namespace claimcheck
