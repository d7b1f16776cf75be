#include "claimcheck/gateway.hpp"

#include <algorithm>
#include <cmath>

#include "claimcheck/errors.hpp"
#include "claimcheck/tokenizer.hpp"

namespace claimcheck {

namespace {

constexpr double kDistributionTolerance = 1e-6;

// splitmix64 finalizer, used to derive the sign independently of the bucket.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

void require_nonempty(std::span<const std::string> texts, const char* what) {
    if (texts.empty()) {
        throw Error(std::string(what) + ": empty input list");
    }
}

void check_distribution(const NliScores& s) {
    const double values[] = {s.entailment, s.neutral, s.contradiction};
    for (const double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ProtocolError("NLI probabilities must be finite and non-negative");
        }
    }
    if (std::abs(s.entailment + s.neutral + s.contradiction - 1.0) > kDistributionTolerance) {
        throw ProtocolError("NLI probabilities do not sum to 1");
    }
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

HashEmbedder::HashEmbedder(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) {
        throw DimensionError("embedder dim must be positive");
    }
}

std::string HashEmbedder::id() const { return "fallback_hash-" + std::to_string(dim_); }

std::vector<Embedding> HashEmbedder::embed(std::span<const std::string> texts) const {
    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        std::vector<double> sums(dim_, 0.0);
        for (const auto& term : tokenize(text)) {
            const auto hash = fnv1a64(term);
            const double sign = (mix64(hash) >> 63) != 0 ? -1.0 : 1.0;
            sums[hash % dim_] += sign;
        }
        double norm = 0.0;
        for (const double x : sums) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        Embedding embedding;
        embedding.embedder_id = id();
        embedding.values.resize(dim_, 0.0F);
        if (norm > 0.0) {
            for (std::size_t i = 0; i < dim_; ++i) {
                embedding.values[i] = static_cast<float>(sums[i] / norm);
            }
        }
        out.push_back(std::move(embedding));
    }
    return out;
}

std::vector<double> LexicalScorer::score(std::string_view claim,
                                         std::span<const std::string> sentences) const {
    std::vector<double> scores;
    scores.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        scores.push_back(jaccard(claim, sentence));
    }
    return scores;
}

bool has_negation_cue(std::string_view text) {
    // "no evidence" is covered by "no" at the token level.
    static const std::vector<std::string> cues = {"no", "not", "never", "cannot", "fails", "lacks"};
    const auto terms = tokenize(text);
    return std::any_of(terms.begin(), terms.end(), [](const Term& t) {
        return std::find(cues.begin(), cues.end(), t) != cues.end();
    });
}

std::vector<NliScores> HeuristicNli::predict(std::span<const NliPair> pairs) const {
    std::vector<NliScores> out;
    out.reserve(pairs.size());
    for (const auto& pair : pairs) {
        const double overlap = jaccard(pair.premise, pair.hypothesis);
        const double flip =
            has_negation_cue(pair.premise) != has_negation_cue(pair.hypothesis) ? 1.0 : 0.0;
        NliScores raw{overlap * (1.0 - flip), 1.0 - overlap, overlap * flip};
        const double total = raw.entailment + raw.neutral + raw.contradiction;
        out.push_back(NliScores{raw.entailment / total, raw.neutral / total,
                                raw.contradiction / total});
    }
    return out;
}

Scorers make_fallback_scorers() {
    return Scorers{std::make_shared<HashEmbedder>(), std::make_shared<LexicalScorer>(),
                   std::make_shared<HeuristicNli>()};
}

nlohmann::json fallback_info() {
    const HashEmbedder embedder;
    return {
        {"embedder_id", embedder.id()},
        {"dim", embedder.dim()},
        {"models",
         {{"embed", embedder.id()},
          {"similarity", LexicalScorer{}.id()},
          {"nli", HeuristicNli{}.id()}}},
    };
}

std::vector<Embedding> embed(const Embedder& embedder, std::span<const std::string> texts) {
    require_nonempty(texts, "embed");
    auto vectors = embedder.embed(texts);
    if (vectors.size() != texts.size()) {
        throw ProtocolError("embedder returned " + std::to_string(vectors.size()) +
                            " vectors for " + std::to_string(texts.size()) + " texts");
    }
    for (auto& v : vectors) {
        if (v.dim() != embedder.dim()) {
            throw ProtocolError("embedding dim " + std::to_string(v.dim()) + " != declared " +
                                std::to_string(embedder.dim()));
        }
        if (!std::all_of(v.values.begin(), v.values.end(), [](float x) { return std::isfinite(x); })) {
            throw ProtocolError("embedding contains non-finite values");
        }
        if (v.embedder_id.empty()) {
            v.embedder_id = embedder.id();
        }
    }
    return vectors;
}

std::vector<double> score_sentences(const SentenceScorer& scorer, std::string_view claim,
                                    std::span<const std::string> sentences) {
    require_nonempty(sentences, "score_sentences");
    auto scores = scorer.score(claim, sentences);
    if (scores.size() != sentences.size()) {
        throw ProtocolError("scorer returned " + std::to_string(scores.size()) + " scores for " +
                            std::to_string(sentences.size()) + " sentences");
    }
    for (const double s : scores) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw ProtocolError("sentence score outside [0, 1]");
        }
    }
    return scores;
}

std::vector<NliScores> nli_batch(const NliPredictor& predictor, std::span<const NliPair> pairs) {
    if (pairs.empty()) {
        throw Error("nli: empty input list");
    }
    for (const auto& pair : pairs) {
        if (pair.premise.empty() || pair.hypothesis.empty()) {
            throw Error("nli: premise and hypothesis must be non-empty");
        }
    }
    auto results = predictor.predict(pairs);
    if (results.size() != pairs.size()) {
        throw ProtocolError("NLI returned " + std::to_string(results.size()) + " labels for " +
                            std::to_string(pairs.size()) + " pairs");
    }
    for (const auto& r : results) {
        check_distribution(r);
    }
    return results;
}

NliScores nli(const NliPredictor& predictor, std::string_view premise, std::string_view hypothesis) {
    const NliPair pair{std::string(premise), std::string(hypothesis)};
    return nli_batch(predictor, std::span<const NliPair>(&pair, 1)).front();
}

} // namespace claimcheck
