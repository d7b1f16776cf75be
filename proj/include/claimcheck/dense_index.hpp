#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/errors.hpp"
#include "claimcheck/sparse_index.hpp"

namespace claimcheck {

class Embedder;

/// A dense vector plus the id of the embedder that produced it (empty when unknown).
struct Embedding {
    std::vector<float> values;
    std::string embedder_id;

    std::size_t dim() const { return values.size(); }
    /// True for the all-zero vector returned for token-less input.
    bool is_null() const;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

double l2_norm(std::span<const float> v);

/// Scales to unit length. Throws DimensionError for an empty or zero vector.
void normalize(std::span<float> v);

/// (u·v)/(|u||v|), clamped to [-1, 1]. Throws DimensionError on mismatch or zero norm.
double cosine_similarity(std::span<const float> u, std::span<const float> v);
double cosine_similarity(const Embedding& u, const Embedding& v);

/// Row-major matrix of unit-norm float32 embeddings with exact brute-force search.
class DenseIndex {
public:
    DenseIndex() = default;
    DenseIndex(std::size_t dim, std::string embedder_id);

    /// Normalizes and appends a row. Throws DimensionError on bad dim or zero vector.
    void add(std::string doc_id, std::span<const float> vector);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return doc_ids_.size(); }
    const std::string& embedder_id() const { return embedder_id_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    std::span<const float> row(std::size_t i) const;

    /// Exact top-k by cosine similarity, ties by doc_id ascending. k larger than
    /// size() returns every row. Throws EmbedderMismatchError when the query carries
    /// a different embedder id, DimensionError on dim mismatch.
    std::vector<ScoredDocument> retrieve(const Embedding& query, std::size_t k) const;

    /// Header (magic, version, dim, count, embedder_id), doc_id table, then the
    /// row-major float32 array. Round-trips bit-exactly.
    void save(std::ostream& out) const;
    static DenseIndex load(std::istream& in);

    void save(const std::filesystem::path& path) const;
    static DenseIndex load(const std::filesystem::path& path);

    friend bool operator==(const DenseIndex&, const DenseIndex&) = default;

private:
    std::size_t dim_ = 0;
    std::string embedder_id_;
    std::vector<std::string> doc_ids_;
    std::vector<float> matrix_;
};

struct DenseBuildOptions {
    /// Body tokens (whitespace-separated) appended to the title.
    std::size_t window = 256;
    std::size_t batch_size = 64;
    /// Batches in flight at once; results are reassembled in corpus order.
    std::size_t parallel_batches = 1;
    /// When set, completed rows are saved here if the embedder fails, and a
    /// matching checkpoint is resumed from on the next build.
    std::optional<std::filesystem::path> checkpoint;
};

/// Thrown when the embedder fails mid-build; `rows_done` rows were checkpointed.
class DenseBuildError : public Error {
public:
    DenseBuildError(const std::string& what, std::size_t rows_done)
        : Error(what), rows_done_(rows_done) {}
    std::size_t rows_done() const noexcept { return rows_done_; }

private:
    std::size_t rows_done_;
};

/// Title plus the first `window` whitespace tokens of the body.
std::string embedding_text(const Document& doc, std::size_t window);

DenseIndex build_dense_index(const Corpus& corpus, const Embedder& embedder,
                             const DenseBuildOptions& options = {});

std::vector<ScoredDocument> retrieve_dense(const DenseIndex& index, const Embedding& claim_embedding,
                                           std::size_t k);

} // namespace claimcheck
