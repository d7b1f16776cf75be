#include "claimcheck/sparse_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "binary_io.hpp"
#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

constexpr std::string_view kMagic{"CCSPARSE", 8};
constexpr std::uint32_t kVersion = 1;

bool ranks_before(double score_a, std::uint32_t doc_a, double score_b, std::uint32_t doc_b) {
    if (score_a != score_b) {
        return score_a > score_b;
    }
    return doc_a < doc_b;
}

} // namespace

double bm25_idf(std::size_t doc_count, std::size_t doc_freq) {
    const auto n = static_cast<double>(doc_count);
    const auto df = static_cast<double>(doc_freq);
    return std::log1p((n - df + 0.5) / (df + 0.5));
}

double bm25_term_weight(double idf, std::uint32_t tf, std::uint32_t doc_length, double avg_length,
                        const Bm25Params& params) {
    const auto f = static_cast<double>(tf);
    const auto norm = 1.0 - params.b + params.b * static_cast<double>(doc_length) / avg_length;
    return idf * (f * (params.k1 + 1.0)) / (f + params.k1 * norm);
}

SparseIndex SparseIndex::build(const Corpus& corpus, Bm25Params params) {
    SparseIndex index;
    index.params_ = params;

    std::vector<const Document*> docs;
    docs.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        docs.push_back(&doc);
    }
    std::sort(docs.begin(), docs.end(),
              [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });

    index.doc_ids_.reserve(docs.size());
    index.lengths_.reserve(docs.size());
    std::uint64_t total_length = 0;
    for (std::uint32_t ordinal = 0; ordinal < docs.size(); ++ordinal) {
        const auto& doc = *docs[ordinal];
        auto terms = tokenize(doc.title + " " + doc.body);
        index.doc_ids_.push_back(doc.doc_id);
        index.lengths_.push_back(static_cast<std::uint32_t>(terms.size()));
        total_length += terms.size();

        std::sort(terms.begin(), terms.end());
        for (auto it = terms.begin(); it != terms.end();) {
            const auto run_end = std::find_if(it, terms.end(), [&](const Term& t) { return t != *it; });
            const auto tf = static_cast<std::uint32_t>(run_end - it);
            // Ordinals are visited in increasing order, so every list stays sorted.
            index.postings_[*it].push_back(Posting{ordinal, tf});
            it = run_end;
        }
    }
    index.avg_length_ =
        docs.empty() ? 0.0 : static_cast<double>(total_length) / static_cast<double>(docs.size());
    return index;
}

std::optional<std::uint32_t> SparseIndex::ordinal(std::string_view doc_id) const {
    const auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
    if (it == doc_ids_.end() || *it != doc_id) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - doc_ids_.begin());
}

std::span<const SparseIndex::Posting> SparseIndex::postings(std::string_view term) const {
    const auto it = postings_.find(std::string(term));
    if (it == postings_.end()) {
        return {};
    }
    return it->second;
}

double SparseIndex::score(std::string_view query, std::string_view doc_id) const {
    const auto doc = ordinal(doc_id);
    if (!doc) {
        throw UnknownDocumentError("doc_id '" + std::string(doc_id) + "' is not indexed");
    }
    // Terms are summed in lexicographic order; retrieve() accumulates in the same order.
    double total = 0.0;
    for (const auto& term : unique_terms(query)) {
        const auto list = postings(term);
        const auto hit = std::lower_bound(
            list.begin(), list.end(), *doc,
            [](const Posting& p, std::uint32_t target) { return p.doc < target; });
        if (hit == list.end() || hit->doc != *doc) {
            continue;
        }
        const double idf = bm25_idf(document_count(), list.size());
        total += bm25_term_weight(idf, hit->tf, lengths_[*doc], avg_length_, params_);
    }
    return total;
}

std::vector<ScoredDocument> SparseIndex::retrieve(std::string_view query, std::size_t k) const {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    std::vector<double> accumulator(document_count(), 0.0);
    std::vector<std::uint32_t> touched;
    for (const auto& term : unique_terms(query)) {
        const auto list = postings(term);
        if (list.empty()) {
            continue;
        }
        const double idf = bm25_idf(document_count(), list.size());
        for (const auto& posting : list) {
            if (accumulator[posting.doc] == 0.0) {
                touched.push_back(posting.doc);
            }
            accumulator[posting.doc] +=
                bm25_term_weight(idf, posting.tf, lengths_[posting.doc], avg_length_, params_);
        }
    }

    const auto before = [&](std::uint32_t a, std::uint32_t b) {
        return ranks_before(accumulator[a], a, accumulator[b], b);
    };
    const auto keep = std::min(k, touched.size());
    std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(keep),
                      touched.end(), before);

    std::vector<ScoredDocument> results;
    results.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto doc = touched[i];
        results.push_back(ScoredDocument{doc_ids_[doc], accumulator[doc], i + 1});
    }
    return results;
}

void SparseIndex::save(std::ostream& out) const {
    out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
    detail::write_uint<std::uint32_t>(out, kVersion);
    detail::write_f64(out, params_.k1);
    detail::write_f64(out, params_.b);
    detail::write_f64(out, avg_length_);
    detail::write_uint<std::uint64_t>(out, doc_ids_.size());
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        detail::write_string(out, doc_ids_[i]);
        detail::write_uint<std::uint32_t>(out, lengths_[i]);
    }
    // Sorted term order makes the file byte-identical across rebuilds.
    std::vector<const std::pair<const Term, std::vector<Posting>>*> entries;
    entries.reserve(postings_.size());
    for (const auto& entry : postings_) {
        entries.push_back(&entry);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    detail::write_uint<std::uint64_t>(out, entries.size());
    for (const auto* entry : entries) {
        detail::write_string(out, entry->first);
        detail::write_uint<std::uint32_t>(out, static_cast<std::uint32_t>(entry->second.size()));
        for (const auto& posting : entry->second) {
            detail::write_uint<std::uint32_t>(out, posting.doc);
            detail::write_uint<std::uint32_t>(out, posting.tf);
        }
    }
    if (!out) {
        throw Error("failed to write sparse index");
    }
}

SparseIndex SparseIndex::load(std::istream& in) {
    detail::expect_magic(in, kMagic);
    const auto version = detail::read_uint<std::uint32_t>(in);
    if (version != kVersion) {
        throw FormatError("unsupported sparse index version " + std::to_string(version));
    }
    SparseIndex index;
    index.params_.k1 = detail::read_f64(in);
    index.params_.b = detail::read_f64(in);
    index.avg_length_ = detail::read_f64(in);
    const auto docs = detail::read_uint<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < docs; ++i) {
        index.doc_ids_.push_back(detail::read_string(in));
        index.lengths_.push_back(detail::read_uint<std::uint32_t>(in));
    }
    if (!std::is_sorted(index.doc_ids_.begin(), index.doc_ids_.end())) {
        throw FormatError("sparse index doc table is not sorted");
    }
    const auto terms = detail::read_uint<std::uint64_t>(in);
    index.postings_.reserve(terms);
    for (std::uint64_t t = 0; t < terms; ++t) {
        auto term = detail::read_string(in);
        const auto count = detail::read_uint<std::uint32_t>(in);
        std::vector<Posting> list;
        list.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            Posting posting;
            posting.doc = detail::read_uint<std::uint32_t>(in);
            posting.tf = detail::read_uint<std::uint32_t>(in);
            if (posting.doc >= docs || (!list.empty() && list.back().doc >= posting.doc)) {
                throw FormatError("corrupt postings list for term '" + term + "'");
            }
            list.push_back(posting);
        }
        index.postings_.emplace(std::move(term), std::move(list));
    }
    return index;
}

SparseIndex build_sparse_index(const Corpus& corpus, Bm25Params params) {
    return SparseIndex::build(corpus, params);
}

double bm25_score(const SparseIndex& index, const Claim& claim, std::string_view doc_id) {
    return index.score(claim.text, doc_id);
}

std::vector<ScoredDocument> retrieve_sparse(const SparseIndex& index, const Claim& claim,
                                            std::size_t k) {
    return index.retrieve(claim.text, k);
}

} // namespace claimcheck
