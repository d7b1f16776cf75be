#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/claim.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/gateway.hpp"
#include "claimcheck/pipeline.hpp"

namespace claimcheck {

enum class Dataset { scifact, pubmedqa, healthfc, covert, custom };

std::string_view to_string(Dataset dataset);
Dataset dataset_from_string(std::string_view name);

enum class GoldLabel { supported, refuted, nei };

struct ClaimRecord {
    std::string claim_id;
    std::string text;
    GoldLabel gold_label = GoldLabel::supported;
    std::optional<std::vector<std::string>> gold_evidence;
    Dataset dataset = Dataset::custom;
    /// Documents known to hold the evidence; used for recall@k when present.
    std::vector<std::string> relevant_doc_ids;

    Claim claim() const { return Claim{claim_id, text}; }
    /// Throws Error for NEI records.
    Label binary_label() const;
};

/// Maps a label string to a gold label. Accepts the canonical names
/// (supported/refuted/nei, any case) plus each dataset's native vocabulary
/// (PubMedQA yes/no/maybe, SciFact SUPPORT/CONTRADICT, CoVert SUPPORTS/REFUTES/
/// NOT ENOUGH INFO). Throws FormatError naming `record_id` otherwise.
GoldLabel parse_gold_label(Dataset dataset, std::string_view label, std::string_view record_id);

/// Reads canonical dataset JSONL ({claim_id, text, label, evidence?, doc_ids?})
/// and drops NEI records.
std::vector<ClaimRecord> load_dataset(Dataset dataset, const std::filesystem::path& path);
std::vector<ClaimRecord> load_dataset(Dataset dataset, std::istream& in);

/// Same as load_dataset but keeps NEI records.
std::vector<ClaimRecord> read_dataset_jsonl(Dataset dataset, std::istream& in);

void write_dataset_jsonl(std::ostream& out, std::span<const ClaimRecord> records);

std::vector<ClaimRecord> remove_nei(std::vector<ClaimRecord> records);

/// Native release adapters. Each returns every record including NEI; pass the
/// result through remove_nei(). Field assumptions are listed in the README.
struct NativeSources {
    /// Claim files (SciFact: claims_*.jsonl, PubMedQA: ori_pqal.json,
    /// HealthFC: the annotated CSV, CoVert: the annotation JSONL).
    std::vector<std::filesystem::path> claims;
    /// SciFact only: corpus.jsonl, used to resolve gold evidence sentences.
    std::optional<std::filesystem::path> corpus;
};

std::vector<ClaimRecord> load_native_dataset(Dataset dataset, const NativeSources& sources);

// ---------------------------------------------------------------------------
// Metrics

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
    friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;       ///< binary F1, SUPPORTED positive
    double f1_macro = 0.0; ///< mean of both per-class F1 scores
    Confusion confusion;
};

/// SUPPORTED is the positive class; any ratio with a zero denominator is 0.
/// Throws Error on length mismatch or empty input.
Metrics compute_metrics(std::span<const Label> predictions, std::span<const Label> golds);

// ---------------------------------------------------------------------------
// Reports

enum class EmptyEvidencePolicy { refuted, supported };

std::string_view to_string(EmptyEvidencePolicy policy);
EmptyEvidencePolicy empty_policy_from_string(std::string_view name);

struct ReportRow {
    std::string dataset;
    std::string source;    ///< pubmed, wikipedia, web, gold, ...
    std::string retriever; ///< bm25, dense, google, gold
    std::size_t k = 0;
    std::size_t j = 0;
    std::string mode;
    Metrics metrics;
    std::size_t n_claims = 0;
    std::size_t skipped = 0;     ///< records excluded (e.g. no gold evidence)
    std::size_t no_evidence = 0; ///< counted under the empty-evidence policy
    std::optional<double> recall_at_k;

    nlohmann::json to_json() const;
};

struct EvalReport {
    nlohmann::json config = nlohmann::json::object();
    std::vector<ReportRow> rows;

    nlohmann::json to_json() const;
    /// Aligned text table; metric columns in percent.
    std::string to_table() const;
    void append(const EvalReport& other);
};

struct EvalOptions {
    PipelineOptions pipeline;
    std::string source_name = "corpus";
    EmptyEvidencePolicy empty_policy = EmptyEvidencePolicy::refuted;
    /// When set, one JSON per claim is written under a per-configuration subdirectory.
    std::optional<std::filesystem::path> artifacts_dir;
    std::size_t threads = 1;
};

/// Closed-domain baseline: concat verdict over each record's gold evidence. One row
/// per dataset present. Records without gold evidence are skipped and counted.
/// Throws Error on an empty record list.
EvalReport run_gold_evidence_eval(std::span<const ClaimRecord> records, const NliPredictor& nli,
                                  const EvalOptions& options = {});

/// Full retrieve → select → verdict pipeline, one report row. Per-claim failures are
/// logged and counted under the empty-evidence policy; gateway outages and
/// index/corpus mismatches abort the run.
EvalReport run_open_domain_eval(std::span<const ClaimRecord> records, const Retriever& retriever,
                                const Corpus& corpus, const SentenceScorer& scorer,
                                const NliPredictor& nli, const EvalOptions& options);

/// Web-search variant: snippets are concatenated as evidence in the order returned.
EvalReport run_web_eval(std::span<const ClaimRecord> records, const SnippetSource& snippets,
                        const NliPredictor& nli, const EvalOptions& options);

/// Fraction of records with relevance data whose relevant document appears in the
/// top-k of `retriever`; nullopt when no record carries relevance data.
std::optional<double> recall_at_k(std::span<const ClaimRecord> records, const Retriever& retriever,
                                  std::size_t k);

} // namespace claimcheck
