#pragma once

// Retrieve → select → verdict for a single claim, over any retriever.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/dense_index.hpp"
#include "claimcheck/evidence.hpp"
#include "claimcheck/gateway.hpp"
#include "claimcheck/sparse_index.hpp"
#include "claimcheck/verdict.hpp"

namespace claimcheck {

enum class RetrieverKind { bm25, dense };

std::string_view to_string(RetrieverKind kind);
RetrieverKind retriever_kind_from_string(std::string_view name);

/// Document retrieval function w(c, d) behind a common interface.
class Retriever {
public:
    virtual ~Retriever() = default;
    virtual RetrieverKind kind() const = 0;
    virtual std::vector<ScoredDocument> retrieve(const Claim& claim, std::size_t k) const = 0;
};

class SparseRetriever final : public Retriever {
public:
    explicit SparseRetriever(const SparseIndex& index) : index_(index) {}
    RetrieverKind kind() const override { return RetrieverKind::bm25; }
    std::vector<ScoredDocument> retrieve(const Claim& claim, std::size_t k) const override;

private:
    const SparseIndex& index_;
};

/// Embeds the claim with `embedder` (whose id must match the index) and searches exactly.
/// A claim with no embeddable tokens retrieves nothing.
class DenseRetriever final : public Retriever {
public:
    DenseRetriever(const DenseIndex& index, const Embedder& embedder);
    RetrieverKind kind() const override { return RetrieverKind::dense; }
    std::vector<ScoredDocument> retrieve(const Claim& claim, std::size_t k) const override;

private:
    const DenseIndex& index_;
    const Embedder& embedder_;
};

/// Web-search snippets standing in for retrieved evidence.
class SnippetSource {
public:
    virtual ~SnippetSource() = default;
    virtual std::vector<std::string> snippets(const Claim& claim) const = 0;
};

/// Snippets from a JSON file: either an array of strings (same snippets for every
/// claim) or an object mapping claim_id to an array of strings.
class FixtureSnippets final : public SnippetSource {
public:
    explicit FixtureSnippets(const std::filesystem::path& path);
    explicit FixtureSnippets(const nlohmann::json& document);
    std::vector<std::string> snippets(const Claim& claim) const override;

private:
    std::optional<std::vector<std::string>> shared_;
    std::map<std::string, std::vector<std::string>> by_claim_;
};

/// Google Custom Search JSON API client. Credentials come from the environment
/// (GOOGLE_API_KEY, GOOGLE_CSE_ID). Requires a build with OpenSSL.
class GoogleSearchClient final : public SnippetSource {
public:
    GoogleSearchClient(std::string api_key, std::string engine_id, std::size_t count = 10);
    /// Throws ConfigError when either variable is unset.
    static GoogleSearchClient from_environment();
    std::vector<std::string> snippets(const Claim& claim) const override;

    /// Extracts items[].snippet from an API response, in order.
    static std::vector<std::string> parse_response(const nlohmann::json& response);

private:
    std::string api_key_;
    std::string engine_id_;
    std::size_t count_;
};

struct PipelineOptions {
    std::size_t k = 10;
    std::size_t j = 10;
    VerdictMode mode = VerdictMode::concat;
    EvidenceOptions evidence;
};

/// Everything produced for one claim. `verdict` is empty when no evidence was found
/// (`error` then says why).
struct ClaimOutcome {
    Claim claim;
    std::vector<ScoredDocument> retrieved;
    EvidenceSet evidence;
    std::optional<Verdict> verdict;
    std::string error;

    nlohmann::json to_json() const;
};

/// Looks up retrieved ids in `corpus`; ids missing from the corpus throw UnknownDocumentError.
ClaimOutcome run_claim(const Claim& claim, const Retriever& retriever, const Corpus& corpus,
                       const SentenceScorer& scorer, const NliPredictor& nli,
                       const PipelineOptions& options);

/// Evidence already selected (gold evidence or snippets) straight to the concat verdict.
ClaimOutcome run_claim_with_texts(const Claim& claim, const std::vector<std::string>& texts,
                                  const NliPredictor& nli);

} // namespace claimcheck
