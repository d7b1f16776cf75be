#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/claim.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/gateway.hpp"
#include "claimcheck/sparse_index.hpp"

namespace claimcheck {

/// A retrieval hit paired with the document it names.
struct RetrievedDocument {
    ScoredDocument ranking;
    Document document;
};

struct EvidenceSentence {
    Sentence sentence;
    double score = 0.0;
    std::size_t source_rank = 0;

    friend bool operator==(const EvidenceSentence&, const EvidenceSentence&) = default;
};

/// At most j sentences, ordered by score descending, then (source_rank, sentence index).
struct EvidenceSet {
    std::string claim_id;
    std::vector<EvidenceSentence> sentences;
    std::size_t j = 0;

    bool empty() const { return sentences.empty(); }
    nlohmann::json to_json() const;

    friend bool operator==(const EvidenceSet&, const EvidenceSet&) = default;
};

struct EvidenceOptions {
    /// Sentences with fewer terms than this never become candidates.
    std::size_t min_tokens = 3;
};

/// Segments every retrieved document, scores all candidate sentences against the
/// claim in one scorer call, and keeps the global top-j (no per-document quota).
/// Returns an empty set when no document yields a candidate sentence.
EvidenceSet select_evidence(const Claim& claim, std::span<const RetrievedDocument> docs,
                            const SentenceScorer& scorer, std::size_t j,
                            const EvidenceOptions& options = {});

} // namespace claimcheck
