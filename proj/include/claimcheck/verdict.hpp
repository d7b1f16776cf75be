#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/claim.hpp"
#include "claimcheck/evidence.hpp"
#include "claimcheck/gateway.hpp"

namespace claimcheck {

enum class VerdictMode { concat, majority };

std::string_view to_string(VerdictMode mode);
VerdictMode verdict_mode_from_string(std::string_view name);

struct Verdict {
    std::string claim_id;
    Label label = Label::supported;
    VerdictMode mode = VerdictMode::concat;
    double entail_mass = 0.0;
    double contradict_mass = 0.0;
    /// Per-document votes (majority mode only), in doc_id order.
    std::vector<std::pair<std::string, Label>> votes;

    nlohmann::json to_json() const;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Binary decision: SUPPORTED iff entailment >= contradiction. Neutral mass is ignored
/// and an exact tie resolves to SUPPORTED.
Label decide(const NliScores& scores);

/// Premise is the evidence text joined with " " in EvidenceSet order; hypothesis is
/// the claim. Throws EmptyEvidenceError when there is no evidence.
Verdict predict_concat(const Claim& claim, const EvidenceSet& evidence, const NliPredictor& nli);

/// One concat-rule vote per document; majority wins and a tie goes to SUPPORTED.
/// Reported masses are the per-document means.
Verdict predict_majority(const Claim& claim,
                         const std::map<std::string, std::vector<EvidenceSentence>>& evidence_by_doc,
                         const NliPredictor& nli);

/// Groups an evidence set by source document, preserving evidence order within each.
std::map<std::string, std::vector<EvidenceSentence>> group_by_document(const EvidenceSet& evidence);

/// predict_concat over search snippets in the order given (no re-sorting).
Verdict verify_from_snippets(const Claim& claim, std::span<const std::string> snippets,
                             const NliPredictor& nli);

} // namespace claimcheck
