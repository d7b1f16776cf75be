#pragma once

// Synthetic corpus with one planted evidence document per claim.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/eval.hpp"

namespace claimcheck {

struct PlantedOptions {
    std::size_t distractors = 5000;
    std::size_t claims = 200;
    std::uint64_t seed = 20240607;
    /// Share of claims planted with a negated evidence sentence.
    double refuted_fraction = 0.4;
};

/// Claims and documents are built from generated pseudo-words, so no negation cue
/// occurs except in the planted "No evidence that ..." sentences of refuted claims.
/// Every claim has its own topic words and identifier tokens; its planted document
/// holds a paraphrase keeping 9 of the claim's 10 tokens, and about 25 distractors
/// per topic share some of its topic words. The same options always give the same output.
struct PlantedBenchmark {
    Corpus corpus;
    std::vector<ClaimRecord> claims;
    /// The paraphrase sentence of each claim, aligned with `claims`.
    std::vector<std::string> planted_sentences;
};

PlantedBenchmark make_planted_benchmark(const PlantedOptions& options = {});

} // namespace claimcheck
