#include "claimcheck/pipeline.hpp"

#include <fstream>

#include "claimcheck/errors.hpp"

namespace claimcheck {

std::string_view to_string(RetrieverKind kind) {
    return kind == RetrieverKind::bm25 ? "bm25" : "dense";
}

RetrieverKind retriever_kind_from_string(std::string_view name) {
    if (name == "bm25" || name == "sparse") {
        return RetrieverKind::bm25;
    }
    if (name == "dense" || name == "semantic") {
        return RetrieverKind::dense;
    }
    throw ConfigError("unknown retriever '" + std::string(name) + "'");
}

std::vector<ScoredDocument> SparseRetriever::retrieve(const Claim& claim, std::size_t k) const {
    return retrieve_sparse(index_, claim, k);
}

DenseRetriever::DenseRetriever(const DenseIndex& index, const Embedder& embedder)
    : index_(index), embedder_(embedder) {
    if (embedder_.id() != index_.embedder_id()) {
        throw EmbedderMismatchError("index built with '" + index_.embedder_id() +
                                    "' but the configured embedder is '" + embedder_.id() + "'");
    }
}

std::vector<ScoredDocument> DenseRetriever::retrieve(const Claim& claim, std::size_t k) const {
    const std::string text = claim.text;
    const auto embedding = embed(embedder_, std::span<const std::string>(&text, 1)).front();
    if (embedding.is_null()) {
        return {};
    }
    return retrieve_dense(index_, embedding, k);
}

FixtureSnippets::FixtureSnippets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open snippets file '" + path.string() + "'");
    }
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("snippets file '" + path.string() + "': " + e.what());
    }
    *this = FixtureSnippets(document);
}

FixtureSnippets::FixtureSnippets(const nlohmann::json& document) {
    const auto as_list = [](const nlohmann::json& value) {
        if (!value.is_array()) {
            throw FormatError("snippets must be an array of strings");
        }
        std::vector<std::string> out;
        for (const auto& item : value) {
            if (!item.is_string()) {
                throw FormatError("snippets must be an array of strings");
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    };
    if (document.is_array()) {
        shared_ = as_list(document);
    } else if (document.is_object()) {
        for (const auto& [claim_id, value] : document.items()) {
            by_claim_[claim_id] = as_list(value);
        }
    } else {
        throw FormatError("snippets file must hold an array or an object");
    }
}

std::vector<std::string> FixtureSnippets::snippets(const Claim& claim) const {
    if (shared_) {
        return *shared_;
    }
    const auto it = by_claim_.find(claim.claim_id);
    return it == by_claim_.end() ? std::vector<std::string>{} : it->second;
}

nlohmann::json ClaimOutcome::to_json() const {
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& hit : retrieved) {
        hits.push_back({{"doc_id", hit.doc_id}, {"score", hit.score}, {"rank", hit.rank}});
    }
    nlohmann::json out = {
        {"claim", {{"claim_id", claim.claim_id}, {"text", claim.text}}},
        {"retrieved", hits},
        {"evidence", evidence.to_json()},
        {"verdict", verdict ? verdict->to_json() : nlohmann::json(nullptr)},
    };
    if (!error.empty()) {
        out["error"] = error;
    }
    return out;
}

namespace {

Verdict judge(const Claim& claim, const EvidenceSet& evidence, const NliPredictor& nli,
              VerdictMode mode) {
    if (mode == VerdictMode::majority) {
        return predict_majority(claim, group_by_document(evidence), nli);
    }
    return predict_concat(claim, evidence, nli);
}

} // namespace

ClaimOutcome run_claim(const Claim& claim, const Retriever& retriever, const Corpus& corpus,
                       const SentenceScorer& scorer, const NliPredictor& nli,
                       const PipelineOptions& options) {
    ClaimOutcome outcome{claim, retriever.retrieve(claim, options.k), {claim.claim_id, {}, options.j},
                         std::nullopt, {}};
    std::vector<RetrievedDocument> docs;
    docs.reserve(outcome.retrieved.size());
    for (const auto& hit : outcome.retrieved) {
        const auto* doc = corpus.find(hit.doc_id);
        if (doc == nullptr) {
            throw UnknownDocumentError("retrieved doc_id '" + hit.doc_id + "' is not in the corpus");
        }
        docs.push_back(RetrievedDocument{hit, *doc});
    }
    outcome.evidence = select_evidence(claim, docs, scorer, options.j, options.evidence);
    try {
        outcome.verdict = judge(claim, outcome.evidence, nli, options.mode);
    } catch (const EmptyEvidenceError& e) {
        outcome.error = "NO_EVIDENCE";
    }
    return outcome;
}

ClaimOutcome run_claim_with_texts(const Claim& claim, const std::vector<std::string>& texts,
                                  const NliPredictor& nli) {
    ClaimOutcome outcome{claim, {}, {claim.claim_id, {}, texts.size()}, std::nullopt, {}};
    for (std::size_t i = 0; i < texts.size(); ++i) {
        outcome.evidence.sentences.push_back(
            EvidenceSentence{Sentence{"", i, texts[i]}, 1.0, i + 1});
    }
    try {
        outcome.verdict = verify_from_snippets(claim, texts, nli);
    } catch (const EmptyEvidenceError&) {
        outcome.error = "NO_EVIDENCE";
    }
    return outcome;
}

} // namespace claimcheck
