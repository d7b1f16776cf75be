#include "claimcheck/verdict.hpp"

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

std::string join_texts(std::span<const std::string> texts) {
    std::string premise;
    for (const auto& text : texts) {
        if (!premise.empty()) {
            premise.push_back(' ');
        }
        premise += text;
    }
    return premise;
}

std::string join_evidence(std::span<const EvidenceSentence> sentences) {
    std::vector<std::string> texts;
    texts.reserve(sentences.size());
    for (const auto& e : sentences) {
        texts.push_back(e.sentence.text);
    }
    return join_texts(texts);
}

Verdict concat_verdict(const Claim& claim, std::string premise, const NliPredictor& predictor) {
    if (premise.empty()) {
        throw EmptyEvidenceError("no evidence for claim '" + claim.claim_id + "'");
    }
    const auto scores = nli(predictor, premise, claim.text);
    return Verdict{claim.claim_id, decide(scores), VerdictMode::concat, scores.entailment,
                   scores.contradiction, {}};
}

} // namespace

std::string_view to_string(Label label) {
    return label == Label::supported ? "SUPPORTED" : "REFUTED";
}

std::string_view to_string(VerdictMode mode) {
    return mode == VerdictMode::concat ? "concat" : "majority";
}

VerdictMode verdict_mode_from_string(std::string_view name) {
    if (name == "concat") {
        return VerdictMode::concat;
    }
    if (name == "majority") {
        return VerdictMode::majority;
    }
    throw ConfigError("unknown verdict mode '" + std::string(name) + "'");
}

nlohmann::json Verdict::to_json() const {
    nlohmann::json out = {
        {"claim_id", claim_id},
        {"label", to_string(label)},
        {"mode", to_string(mode)},
        {"entail_mass", entail_mass},
        {"contradict_mass", contradict_mass},
    };
    if (mode == VerdictMode::majority) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& [doc_id, vote] : votes) {
            list.push_back({{"doc_id", doc_id}, {"label", to_string(vote)}});
        }
        out["votes"] = list;
    }
    return out;
}

Label decide(const NliScores& scores) {
    return scores.entailment >= scores.contradiction ? Label::supported : Label::refuted;
}

Verdict predict_concat(const Claim& claim, const EvidenceSet& evidence, const NliPredictor& nli) {
    return concat_verdict(claim, join_evidence(evidence.sentences), nli);
}

std::map<std::string, std::vector<EvidenceSentence>> group_by_document(const EvidenceSet& evidence) {
    std::map<std::string, std::vector<EvidenceSentence>> groups;
    for (const auto& e : evidence.sentences) {
        groups[e.sentence.doc_id].push_back(e);
    }
    return groups;
}

Verdict predict_majority(const Claim& claim,
                         const std::map<std::string, std::vector<EvidenceSentence>>& evidence_by_doc,
                         const NliPredictor& predictor) {
    std::vector<NliPair> pairs;
    std::vector<std::string> doc_ids;
    for (const auto& [doc_id, sentences] : evidence_by_doc) {
        auto premise = join_evidence(sentences);
        if (premise.empty()) {
            continue;
        }
        pairs.push_back(NliPair{std::move(premise), claim.text});
        doc_ids.push_back(doc_id);
    }
    if (pairs.empty()) {
        throw EmptyEvidenceError("no evidence for claim '" + claim.claim_id + "'");
    }
    const auto results = nli_batch(predictor, pairs);

    Verdict verdict{claim.claim_id, Label::supported, VerdictMode::majority, 0.0, 0.0, {}};
    std::size_t supported = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto vote = decide(results[i]);
        supported += vote == Label::supported ? 1 : 0;
        verdict.votes.emplace_back(doc_ids[i], vote);
        verdict.entail_mass += results[i].entailment;
        verdict.contradict_mass += results[i].contradiction;
    }
    const auto n = static_cast<double>(results.size());
    verdict.entail_mass /= n;
    verdict.contradict_mass /= n;
    verdict.label = 2 * supported >= results.size() ? Label::supported : Label::refuted;
    return verdict;
}

Verdict verify_from_snippets(const Claim& claim, std::span<const std::string> snippets,
                             const NliPredictor& nli) {
    if (snippets.empty()) {
        throw EmptyEvidenceError("no snippets for claim '" + claim.claim_id + "'");
    }
    return concat_verdict(claim, join_texts(snippets), nli);
}

} // namespace claimcheck
