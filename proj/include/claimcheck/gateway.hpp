#pragma once

// Neural scorer interfaces (embedder, sentence similarity, NLI) with remote
// HTTP+JSON clients and deterministic offline fallbacks.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/dense_index.hpp"

namespace claimcheck {

struct NliScores {
    double entailment = 0.0;
    double neutral = 0.0;
    double contradiction = 0.0;

    friend bool operator==(const NliScores&, const NliScores&) = default;
};

struct NliPair {
    std::string premise;
    std::string hypothesis;
};

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::string id() const = 0;
    virtual std::size_t dim() const = 0;
    /// One embedding per text, in order.
    virtual std::vector<Embedding> embed(std::span<const std::string> texts) const = 0;
};

class SentenceScorer {
public:
    virtual ~SentenceScorer() = default;
    virtual std::string id() const = 0;
    /// One score in [0, 1] per sentence, in order.
    virtual std::vector<double> score(std::string_view claim,
                                      std::span<const std::string> sentences) const = 0;
};

class NliPredictor {
public:
    virtual ~NliPredictor() = default;
    virtual std::string id() const = 0;
    virtual std::vector<NliScores> predict(std::span<const NliPair> pairs) const = 0;
};

// ---------------------------------------------------------------------------
// Offline fallbacks. Pure functions of their input.

/// Feature-hashing bag-of-terms embedder: each term lands in one of `dim` buckets
/// (FNV-1a 64) with a ±1 sign from a second mix of the same hash, then the sum is
/// L2-normalized. Token-less text maps to the all-zero null vector.
class HashEmbedder final : public Embedder {
public:
    explicit HashEmbedder(std::size_t dim = 256);
    std::string id() const override;
    std::size_t dim() const override { return dim_; }
    std::vector<Embedding> embed(std::span<const std::string> texts) const override;

private:
    std::size_t dim_;
};

/// Jaccard similarity of term sets.
class LexicalScorer final : public SentenceScorer {
public:
    std::string id() const override { return "fallback_lexical"; }
    std::vector<double> score(std::string_view claim,
                              std::span<const std::string> sentences) const override;
};

/// Overlap/negation heuristic: o = Jaccard(premise, hypothesis), g = XOR of
/// negation-cue presence; entail = o(1-g), contradict = o·g, neutral = 1-o, normalized.
class HeuristicNli final : public NliPredictor {
public:
    std::string id() const override { return "fallback_heuristic"; }
    std::vector<NliScores> predict(std::span<const NliPair> pairs) const override;
};

/// Whether text contains a negation cue (no, not, never, cannot, fails, lacks, "no evidence").
bool has_negation_cue(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// ---------------------------------------------------------------------------
// Remote gateway.

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{200};
};

struct GatewayOptions {
    std::string endpoint; ///< e.g. "http://localhost:8080"
    std::optional<std::string> bearer_token;
    std::chrono::milliseconds timeout{30000};
    RetryPolicy retry;
    std::size_t max_batch = 64;
};

/// Thin JSON-over-HTTP client with retries. Reentrant: each call opens its own connection.
class GatewayClient {
public:
    explicit GatewayClient(GatewayOptions options);

    const GatewayOptions& options() const { return options_; }

    /// Transient failures (connect errors, timeouts, 429, 5xx) are retried with
    /// exponential backoff, then surface as RetryableError. Other non-2xx answers
    /// and non-JSON bodies raise ProtocolError.
    nlohmann::json get(const std::string& path) const;
    nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

private:
    nlohmann::json request(const std::string& method, const std::string& path,
                           const nlohmann::json* body) const;

    GatewayOptions options_;
};

class RemoteEmbedder final : public Embedder {
public:
    /// Reads embedder id and dim from /v1/info.
    explicit RemoteEmbedder(std::shared_ptr<const GatewayClient> client);
    std::string id() const override { return id_; }
    std::size_t dim() const override { return dim_; }
    std::vector<Embedding> embed(std::span<const std::string> texts) const override;

private:
    std::shared_ptr<const GatewayClient> client_;
    std::string id_;
    std::size_t dim_ = 0;
};

class RemoteScorer final : public SentenceScorer {
public:
    explicit RemoteScorer(std::shared_ptr<const GatewayClient> client) : client_(std::move(client)) {}
    std::string id() const override { return "remote:" + client_->options().endpoint; }
    std::vector<double> score(std::string_view claim,
                              std::span<const std::string> sentences) const override;

private:
    std::shared_ptr<const GatewayClient> client_;
};

class RemoteNli final : public NliPredictor {
public:
    explicit RemoteNli(std::shared_ptr<const GatewayClient> client) : client_(std::move(client)) {}
    std::string id() const override { return "remote:" + client_->options().endpoint; }
    std::vector<NliScores> predict(std::span<const NliPair> pairs) const override;

private:
    std::shared_ptr<const GatewayClient> client_;
};

/// The three scorers a pipeline run needs.
struct Scorers {
    std::shared_ptr<const Embedder> embedder;
    std::shared_ptr<const SentenceScorer> sentence_scorer;
    std::shared_ptr<const NliPredictor> nli;
};

Scorers make_fallback_scorers();
Scorers make_remote_scorers(const GatewayOptions& options);

/// The /v1/info document describing the fallback scorers.
nlohmann::json fallback_info();

// ---------------------------------------------------------------------------
// Checked entry points. These enforce the protocol contract on any implementation.

/// Throws Error on empty input; ProtocolError on count/dim mismatch or non-finite values.
std::vector<Embedding> embed(const Embedder& embedder, std::span<const std::string> texts);

/// Throws Error on empty input; ProtocolError on count mismatch or scores outside [0, 1].
std::vector<double> score_sentences(const SentenceScorer& scorer, std::string_view claim,
                                    std::span<const std::string> sentences);

/// Throws Error on empty texts; ProtocolError when the triple is not a distribution.
NliScores nli(const NliPredictor& predictor, std::string_view premise, std::string_view hypothesis);

/// Batched form of nli() with the same checks.
std::vector<NliScores> nli_batch(const NliPredictor& predictor, std::span<const NliPair> pairs);

// ---------------------------------------------------------------------------
// Protocol conformance suite, runnable against any gateway endpoint.

struct ConformanceCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<ConformanceCheck> run_conformance(const GatewayClient& client);

} // namespace claimcheck
