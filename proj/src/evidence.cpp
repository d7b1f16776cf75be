#include "claimcheck/evidence.hpp"

#include <algorithm>

#include "claimcheck/errors.hpp"
#include "claimcheck/tokenizer.hpp"

namespace claimcheck {

nlohmann::json EvidenceSet::to_json() const {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& e : sentences) {
        items.push_back({
            {"doc_id", e.sentence.doc_id},
            {"index", e.sentence.index},
            {"text", e.sentence.text},
            {"score", e.score},
            {"source_rank", e.source_rank},
        });
    }
    return {{"claim_id", claim_id}, {"sentences", items}};
}

EvidenceSet select_evidence(const Claim& claim, std::span<const RetrievedDocument> docs,
                            const SentenceScorer& scorer, std::size_t j,
                            const EvidenceOptions& options) {
    if (j == 0) {
        throw ConfigError("j must be at least 1");
    }
    EvidenceSet result{claim.claim_id, {}, j};

    std::vector<EvidenceSentence> candidates;
    for (const auto& retrieved : docs) {
        for (auto& sentence : segment_sentences(retrieved.document)) {
            if (tokenize(sentence.text).size() < options.min_tokens) {
                continue;
            }
            candidates.push_back(EvidenceSentence{std::move(sentence), 0.0, retrieved.ranking.rank});
        }
    }
    if (candidates.empty()) {
        return result;
    }

    std::vector<std::string> texts;
    texts.reserve(candidates.size());
    for (const auto& c : candidates) {
        texts.push_back(c.sentence.text);
    }
    const auto scores = score_sentences(scorer, claim.text, texts);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].score = scores[i];
    }

    const auto keep = std::min(j, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), [](const EvidenceSentence& a, const EvidenceSentence& b) {
                          if (a.score != b.score) {
                              return a.score > b.score;
                          }
                          if (a.source_rank != b.source_rank) {
                              return a.source_rank < b.source_rank;
                          }
                          if (a.sentence.index != b.sentence.index) {
                              return a.sentence.index < b.sentence.index;
                          }
                          return a.sentence.doc_id < b.sentence.doc_id;
                      });
    candidates.resize(keep);
    result.sentences = std::move(candidates);
    return result;
}

} // namespace claimcheck
