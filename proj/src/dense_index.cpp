#include "claimcheck/dense_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include "binary_io.hpp"
#include "claimcheck/errors.hpp"
#include "claimcheck/gateway.hpp"

namespace claimcheck {

namespace {

constexpr std::string_view kMagic{"CCDENSE\0", 8};
constexpr std::uint32_t kVersion = 1;

void check_dims(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " +
                             std::to_string(b));
    }
}

} // namespace

bool Embedding::is_null() const {
    return std::all_of(values.begin(), values.end(), [](float x) { return x == 0.0F; });
}

double l2_norm(std::span<const float> v) {
    double sum = 0.0;
    for (const float x : v) {
        sum += static_cast<double>(x) * static_cast<double>(x);
    }
    return std::sqrt(sum);
}

void normalize(std::span<float> v) {
    const double norm = l2_norm(v);
    if (v.empty() || norm == 0.0 || !std::isfinite(norm)) {
        throw DimensionError("cannot normalize an empty, zero or non-finite vector");
    }
    for (float& x : v) {
        x = static_cast<float>(static_cast<double>(x) / norm);
    }
}

double cosine_similarity(std::span<const float> u, std::span<const float> v) {
    check_dims(u.size(), v.size());
    const double nu = l2_norm(u);
    const double nv = l2_norm(v);
    if (nu == 0.0 || nv == 0.0) {
        throw DimensionError("cosine similarity of a zero vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<double>(u[i]) * static_cast<double>(v[i]);
    }
    return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

double cosine_similarity(const Embedding& u, const Embedding& v) {
    return cosine_similarity(std::span<const float>(u.values), std::span<const float>(v.values));
}

DenseIndex::DenseIndex(std::size_t dim, std::string embedder_id)
    : dim_(dim), embedder_id_(std::move(embedder_id)) {
    if (dim_ == 0) {
        throw DimensionError("dense index dim must be positive");
    }
    if (embedder_id_.empty()) {
        throw ConfigError("dense index requires an embedder id");
    }
}

void DenseIndex::add(std::string doc_id, std::span<const float> vector) {
    check_dims(vector.size(), dim_);
    std::vector<float> row(vector.begin(), vector.end());
    normalize(row);
    doc_ids_.push_back(std::move(doc_id));
    matrix_.insert(matrix_.end(), row.begin(), row.end());
}

std::span<const float> DenseIndex::row(std::size_t i) const {
    return std::span<const float>(matrix_).subspan(i * dim_, dim_);
}

std::vector<ScoredDocument> DenseIndex::retrieve(const Embedding& query, std::size_t k) const {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    if (!query.embedder_id.empty() && query.embedder_id != embedder_id_) {
        throw EmbedderMismatchError("index built with '" + embedder_id_ + "', query from '" +
                                    query.embedder_id + "'");
    }
    check_dims(query.dim(), dim_);
    const double norm = l2_norm(query.values);
    if (norm == 0.0) {
        throw DimensionError("query embedding is the zero vector");
    }
    std::vector<double> unit(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        unit[j] = static_cast<double>(query.values[j]) / norm;
    }

    std::vector<double> scores(size());
    for (std::size_t i = 0; i < size(); ++i) {
        const float* r = matrix_.data() + i * dim_;
        double dot = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            dot += static_cast<double>(r[j]) * unit[j];
        }
        scores[i] = std::clamp(dot, -1.0, 1.0);
    }

    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto keep = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (scores[a] != scores[b]) {
                              return scores[a] > scores[b];
                          }
                          return doc_ids_[a] < doc_ids_[b];
                      });
    std::vector<ScoredDocument> results;
    results.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        results.push_back(ScoredDocument{doc_ids_[order[i]], scores[order[i]], i + 1});
    }
    return results;
}

void DenseIndex::save(std::ostream& out) const {
    out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
    detail::write_uint<std::uint32_t>(out, kVersion);
    detail::write_uint<std::uint32_t>(out, static_cast<std::uint32_t>(dim_));
    detail::write_uint<std::uint64_t>(out, doc_ids_.size());
    detail::write_string(out, embedder_id_);
    for (const auto& id : doc_ids_) {
        detail::write_string(out, id);
    }
    for (const float x : matrix_) {
        detail::write_f32(out, x);
    }
    if (!out) {
        throw Error("failed to write dense index");
    }
}

DenseIndex DenseIndex::load(std::istream& in) {
    detail::expect_magic(in, kMagic);
    const auto version = detail::read_uint<std::uint32_t>(in);
    if (version != kVersion) {
        throw FormatError("unsupported dense index version " + std::to_string(version));
    }
    const auto dim = detail::read_uint<std::uint32_t>(in);
    const auto count = detail::read_uint<std::uint64_t>(in);
    DenseIndex index(dim, detail::read_string(in));
    index.doc_ids_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        index.doc_ids_.push_back(detail::read_string(in));
    }
    index.matrix_.resize(count * dim);
    for (float& x : index.matrix_) {
        x = detail::read_f32(in);
    }
    return index;
}

void DenseIndex::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    save(out);
}

DenseIndex DenseIndex::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    return load(in);
}

std::string embedding_text(const Document& doc, std::size_t window) {
    std::string text = doc.title;
    std::istringstream words(doc.body);
    std::string word;
    for (std::size_t taken = 0; taken < window && words >> word; ++taken) {
        if (!text.empty()) {
            text.push_back(' ');
        }
        text += word;
    }
    return text;
}

namespace {

DenseIndex resume_or_start(const Corpus& corpus, const Embedder& embedder,
                           const DenseBuildOptions& options) {
    if (!options.checkpoint || !std::filesystem::exists(*options.checkpoint)) {
        return DenseIndex(embedder.dim(), embedder.id());
    }
    auto partial = DenseIndex::load(*options.checkpoint);
    if (partial.embedder_id() != embedder.id() || partial.dim() != embedder.dim() ||
        partial.size() > corpus.size()) {
        throw ConfigError("checkpoint '" + options.checkpoint->string() +
                          "' does not match this embedder/corpus");
    }
    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (partial.doc_ids()[i] != corpus.documents()[i].doc_id) {
            throw ConfigError("checkpoint '" + options.checkpoint->string() +
                              "' was built from a different corpus");
        }
    }
    return partial;
}

} // namespace

DenseIndex build_dense_index(const Corpus& corpus, const Embedder& embedder,
                             const DenseBuildOptions& options) {
    if (options.batch_size == 0) {
        throw ConfigError("batch size must be positive");
    }
    DenseIndex index = resume_or_start(corpus, embedder, options);
    const auto& docs = corpus.documents();
    const std::size_t lanes = std::max<std::size_t>(1, options.parallel_batches);

    std::size_t next = index.size();
    while (next < docs.size()) {
        // One wave of up to `lanes` batches; results are appended in corpus order.
        std::vector<std::pair<std::size_t, std::size_t>> spans;
        for (std::size_t lane = 0; lane < lanes && next < docs.size(); ++lane) {
            const auto end = std::min(docs.size(), next + options.batch_size);
            spans.emplace_back(next, end);
            next = end;
        }
        std::vector<std::future<std::vector<Embedding>>> pending;
        for (const auto& [begin, end] : spans) {
            std::vector<std::string> texts;
            for (std::size_t i = begin; i < end; ++i) {
                texts.push_back(embedding_text(docs[i], options.window));
            }
            pending.push_back(std::async(lanes == 1 ? std::launch::deferred : std::launch::async,
                                         [&embedder, texts = std::move(texts)] {
                                             return embed(embedder, texts);
                                         }));
        }
        for (std::size_t b = 0; b < spans.size(); ++b) {
            std::vector<Embedding> vectors;
            try {
                vectors = pending[b].get();
            } catch (const Error& e) {
                // Later futures in the wave are abandoned; their rows will be recomputed.
                for (std::size_t rest = b + 1; rest < spans.size(); ++rest) {
                    pending[rest].wait();
                }
                if (options.checkpoint) {
                    index.save(*options.checkpoint);
                }
                throw DenseBuildError(std::string("embedder failed: ") + e.what(), index.size());
            }
            const auto begin = spans[b].first;
            for (std::size_t i = 0; i < vectors.size(); ++i) {
                if (vectors[i].is_null()) {
                    throw Error("document '" + docs[begin + i].doc_id +
                                "' has no embeddable tokens");
                }
                index.add(docs[begin + i].doc_id, vectors[i].values);
            }
        }
    }
    if (options.checkpoint) {
        std::filesystem::remove(*options.checkpoint);
    }
    return index;
}

std::vector<ScoredDocument> retrieve_dense(const DenseIndex& index, const Embedding& claim_embedding,
                                           std::size_t k) {
    return index.retrieve(claim_embedding, k);
}

} // namespace claimcheck
