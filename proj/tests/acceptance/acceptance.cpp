// Acceptance gate. Prints one PASS/FAIL line per criterion; exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <boost/rational.hpp>

#include "claimcheck/benchmark.hpp"
#include "claimcheck/cli.hpp"
#include "claimcheck/dense_index.hpp"
#include "claimcheck/eval.hpp"
#include "claimcheck/pipeline.hpp"
#include "claimcheck/sparse_index.hpp"
#include "claimcheck/tokenizer.hpp"
#include "test_support.hpp"

using namespace claimcheck;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

/// Thrown by a check to report a failed criterion with a reason.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw Failure(message);
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double value, int digits = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << value;
    return out.str();
}

// ---------------------------------------------------------------------------
// BM25 against a score-everything oracle.

std::string bm25_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::size_t queries = 0;
    std::size_t compared = 0;
    for (int c = 0; c < 50; ++c) {
        const std::size_t n_docs = 1 + rng() % 1000;
        const std::size_t vocab = 1 + rng() % 500;
        // Skewed term draws so that document frequencies vary widely.
        const auto draw = [&] {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            return "t" + std::to_string(static_cast<std::size_t>(u * u * static_cast<double>(vocab)));
        };

        Corpus corpus;
        std::map<std::string, std::map<std::string, std::uint32_t>> tf; // doc -> term -> count
        std::map<std::string, std::size_t> length;
        for (std::size_t d = 0; d < n_docs; ++d) {
            const auto id = "doc-" + std::to_string(rng() % 1000000) + "-" + std::to_string(d);
            std::string body;
            const std::size_t len = rng() % 60;
            for (std::size_t t = 0; t < len; ++t) {
                const auto term = draw();
                body += term + " ";
                ++tf[id][term];
            }
            length[id] = len;
            corpus.add(Document{id, "", body, std::nullopt, Source::other});
        }
        std::map<std::string, std::size_t> df;
        double total_length = 0.0;
        for (const auto& [id, terms] : tf) {
            for (const auto& [term, count] : terms) {
                ++df[term];
            }
        }
        for (const auto& [id, len] : length) {
            total_length += static_cast<double>(len);
        }
        const double n = static_cast<double>(n_docs);
        const double avgdl = total_length / n;

        const auto index = build_sparse_index(corpus);
        for (int q = 0; q < 20; ++q) {
            std::string text;
            std::set<std::string> terms;
            const std::size_t len = 1 + rng() % 8;
            for (std::size_t t = 0; t < len; ++t) {
                // Occasionally a term outside the vocabulary.
                const auto term = rng() % 10 == 0 ? "zz" + std::to_string(rng() % 5) : draw();
                text += term + " ";
                terms.insert(term);
            }
            std::vector<std::pair<double, std::string>> expected;
            for (const auto& [id, counts] : tf) {
                double score = 0.0;
                bool matched = false;
                for (const auto& term : terms) {
                    const auto it = counts.find(term);
                    if (it == counts.end()) {
                        continue;
                    }
                    matched = true;
                    const double d = static_cast<double>(df[term]);
                    const double idf = std::log1p((n - d + 0.5) / (d + 0.5));
                    const double f = it->second;
                    const double norm = 1.0 - 0.75 + 0.75 * static_cast<double>(length[id]) / avgdl;
                    score += idf * (f * 2.2) / (f + 1.2 * norm);
                }
                if (matched) {
                    expected.emplace_back(score, id);
                }
            }
            std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            expected.resize(std::min<std::size_t>(10, expected.size()));

            const auto got = retrieve_sparse(index, Claim{"q", text}, 10);
            require(got.size() == expected.size(), "corpus " + std::to_string(c) + ": got " +
                                                       std::to_string(got.size()) + " hits, oracle " +
                                                       std::to_string(expected.size()));
            for (std::size_t i = 0; i < got.size(); ++i) {
                require(got[i].doc_id == expected[i].second,
                        "corpus " + std::to_string(c) + " rank " + std::to_string(i + 1) + ": " + got[i].doc_id +
                            " vs oracle " + expected[i].second);
                require(std::abs(got[i].score - expected[i].first) <= 1e-9,
                        "score differs by " + std::to_string(std::abs(got[i].score - expected[i].first)));
                ++compared;
            }
            ++queries;
        }
    }
    const double elapsed = seconds_since(start);
    require(elapsed < 30.0, "took " + fixed(elapsed) + " s (limit 30 s)");
    return "50 corpora, " + std::to_string(queries) + " claims, " + std::to_string(compared) + " ranked hits, " +
           fixed(elapsed) + " s";
}

// ---------------------------------------------------------------------------
// Dense search against exhaustive cosine.

std::string dense_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(202);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t dim = 256;
    const auto unit_vector = [&] {
        std::vector<float> v(dim);
        double norm = 0.0;
        std::vector<double> raw(dim);
        for (auto& x : raw) {
            x = normal(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = static_cast<float>(raw[i] / norm);
        }
        return v;
    };
    std::size_t queries = 0;
    for (const std::size_t rows : {10000, 4000, 1000, 37, 1}) {
        std::vector<std::vector<float>> matrix;
        DenseIndex index(dim, "oracle");
        for (std::size_t r = 0; r < rows; ++r) {
            matrix.push_back(unit_vector());
            index.add("row" + std::to_string(r), matrix.back());
        }
        for (int q = 0; q < 20; ++q) {
            // Half the queries sit close to a stored row.
            auto query = unit_vector();
            if (q % 2 == 0) {
                const auto& anchor = matrix[rng() % rows];
                for (std::size_t i = 0; i < dim; ++i) {
                    query[i] = anchor[i] + 0.05f * query[i];
                }
            }
            std::vector<std::pair<double, std::string>> expected;
            for (std::size_t r = 0; r < rows; ++r) {
                double dot = 0.0;
                double nq = 0.0;
                double nr = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    dot += static_cast<double>(query[i]) * matrix[r][i];
                    nq += static_cast<double>(query[i]) * query[i];
                    nr += static_cast<double>(matrix[r][i]) * matrix[r][i];
                }
                expected.emplace_back(dot / std::sqrt(nq * nr), "row" + std::to_string(r));
            }
            std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            const std::size_t k = q % 3 == 0 ? 20 : 10;
            const auto got = retrieve_dense(index, Embedding{query, "oracle"}, k);
            require(got.size() == std::min(k, rows), "wrong result count");
            for (std::size_t i = 0; i < got.size(); ++i) {
                require(got[i].doc_id == expected[i].second, std::to_string(rows) + " rows, rank " +
                                                                 std::to_string(i + 1) + ": " + got[i].doc_id +
                                                                 " vs oracle " + expected[i].second);
                require(std::abs(got[i].score - expected[i].first) <= 1e-6,
                        "score differs by " + std::to_string(std::abs(got[i].score - expected[i].first)));
            }
            ++queries;
        }
    }
    const double elapsed = seconds_since(start);
    require(elapsed < 30.0, "took " + fixed(elapsed) + " s (limit 30 s)");
    return "5 indexes up to 10000x256, " + std::to_string(queries) + " queries, " + fixed(elapsed) + " s";
}

// ---------------------------------------------------------------------------
// Planted evidence, full pipeline.

std::string planted_end_to_end() {
    const auto start = Clock::now();
    const auto bench = make_planted_benchmark();
    require(bench.claims.size() == 200, "expected 200 claims");
    require(bench.corpus.size() == 5200, "expected 5000 distractors plus 200 planted documents");

    for (std::size_t i = 0; i < bench.claims.size(); ++i) {
        const auto& claim = bench.claims[i];
        const auto& planted = bench.planted_sentences[i];
        const auto claim_terms = unique_terms(claim.text);
        const auto planted_terms = unique_terms(planted);
        std::size_t shared = 0;
        for (const auto& t : claim_terms) {
            shared += std::binary_search(planted_terms.begin(), planted_terms.end(), t) ? 1 : 0;
        }
        require(5 * shared >= 4 * claim_terms.size(), claim.claim_id + ": paraphrase shares under 80% of tokens");
        const bool negated = has_negation_cue(planted);
        require(negated == (claim.gold_label == GoldLabel::refuted),
                claim.claim_id + ": negation cue does not match the label");
        const auto* doc = bench.corpus.find(claim.relevant_doc_ids.at(0));
        require(doc != nullptr && doc->body.find(planted) != std::string::npos,
                claim.claim_id + ": planted sentence missing from its document");
    }

    const auto scorers = make_fallback_scorers();
    const auto sparse = build_sparse_index(bench.corpus);
    const auto dense = build_dense_index(bench.corpus, *scorers.embedder);
    const SparseRetriever bm25(sparse);
    const DenseRetriever vectors(dense, *scorers.embedder);
    std::string detail;
    for (const Retriever* retriever : {static_cast<const Retriever*>(&bm25), static_cast<const Retriever*>(&vectors)}) {
        EvalOptions options;
        options.source_name = "planted";
        const auto report = run_open_domain_eval(bench.claims, *retriever, bench.corpus, *scorers.sentence_scorer,
                                                 *scorers.nli, options);
        const auto& row = report.rows.at(0);
        const auto name = std::string(to_string(retriever->kind()));
        require(row.recall_at_k && *row.recall_at_k == 1.0,
                name + " recall@10 = " + (row.recall_at_k ? fixed(*row.recall_at_k, 3) : std::string("n/a")));
        require(row.metrics.f1 == 1.0, name + " F1 = " + fixed(row.metrics.f1, 4));
        detail += name + " recall@10=1.0 F1=1.0; ";
    }
    const double elapsed = seconds_since(start);
    require(elapsed < 120.0, "took " + fixed(elapsed) + " s (limit 120 s)");
    return detail + "5000 distractors + 200 claims, " + fixed(elapsed) + " s";
}

// ---------------------------------------------------------------------------
// Metrics against exact rational arithmetic.

using Rational = boost::rational<long long>;

Rational ratio(long long num, long long den) { return den == 0 ? Rational(0) : Rational(num, den); }

Rational harmonic(Rational p, Rational r) { return (p + r).numerator() == 0 ? Rational(0) : 2 * p * r / (p + r); }

std::string metrics_oracle() {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 200;
        // Vary the class balance, including degenerate all-one-class vectors.
        const double p_pred = (rng() % 11) / 10.0;
        const double p_gold = (rng() % 11) / 10.0;
        std::bernoulli_distribution pred_dist(p_pred);
        std::bernoulli_distribution gold_dist(p_gold);
        std::vector<Label> preds;
        std::vector<Label> golds;
        long long tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool p = pred_dist(rng);
            const bool g = gold_dist(rng);
            preds.push_back(p ? Label::supported : Label::refuted);
            golds.push_back(g ? Label::supported : Label::refuted);
            tp += p && g;
            fp += p && !g;
            fn += !p && g;
            tn += !p && !g;
        }
        const auto precision = ratio(tp, tp + fp);
        const auto recall = ratio(tp, tp + fn);
        const auto f1 = harmonic(precision, recall);
        const auto f1_negative = harmonic(ratio(tn, tn + fn), ratio(tn, tn + fp));
        const auto macro = (f1 + f1_negative) / 2;

        const auto m = compute_metrics(preds, golds);
        require(m.confusion == Confusion{static_cast<std::size_t>(tp), static_cast<std::size_t>(fp),
                                         static_cast<std::size_t>(fn), static_cast<std::size_t>(tn)},
                "confusion matrix differs on trial " + std::to_string(trial));
        const auto close = [](double got, Rational want) {
            return std::abs(got - boost::rational_cast<double>(want)) <= 1e-12;
        };
        require(close(m.precision, precision) && close(m.recall, recall) && close(m.f1, f1) &&
                    close(m.f1_macro, macro),
                "metric differs from the rational oracle on trial " + std::to_string(trial));
    }
    // TP=2, FP=1, FN=1, TN=1.
    const std::vector<Label> preds{Label::supported, Label::supported, Label::supported, Label::refuted, Label::refuted};
    const std::vector<Label> golds{Label::supported, Label::supported, Label::refuted, Label::supported, Label::refuted};
    const auto m = compute_metrics(preds, golds);
    require(m.confusion == Confusion{2, 1, 1, 1}, "hand case confusion");
    for (const double v : {m.precision, m.recall, m.f1}) {
        require(std::abs(v - 2.0 / 3.0) <= 1e-12, "hand case gives " + fixed(v, 6) + ", expected 2/3");
    }
    return "1000 random vectors match exact rationals; P=R=F1=2/3 on TP=2/FP=1/FN=1/TN=1";
}

// ---------------------------------------------------------------------------
// Dataset loaders against the published class counts.

struct ClassCounts {
    std::size_t supported = 0;
    std::size_t refuted = 0;
};

const std::map<Dataset, ClassCounts> kPublished = {
    {Dataset::scifact, {456, 237}},
    {Dataset::pubmedqa, {552, 338}},
    {Dataset::healthfc, {202, 125}},
    {Dataset::covert, {198, 66}},
};

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& extension) {
    std::vector<fs::path> out;
    if (fs::is_directory(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == extension) {
                out.push_back(entry.path());
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Expected layout under the dataset directory:
///   scifact/claims_train.jsonl, scifact/claims_dev.jsonl, scifact/corpus.jsonl
///   pubmedqa/ori_pqal.json
///   healthfc/*.csv
///   covert/*.jsonl
NativeSources sources_in(const fs::path& root, Dataset dataset) {
    NativeSources sources;
    switch (dataset) {
    case Dataset::scifact:
        sources.claims = {root / "scifact" / "claims_train.jsonl", root / "scifact" / "claims_dev.jsonl"};
        if (fs::exists(root / "scifact" / "corpus.jsonl")) {
            sources.corpus = root / "scifact" / "corpus.jsonl";
        }
        break;
    case Dataset::pubmedqa:
        sources.claims = {root / "pubmedqa" / "ori_pqal.json"};
        break;
    case Dataset::healthfc:
        sources.claims = files_with_extension(root / "healthfc", ".csv");
        break;
    case Dataset::covert:
        sources.claims = files_with_extension(root / "covert", ".jsonl");
        break;
    case Dataset::custom:
        break;
    }
    for (const auto& path : sources.claims) {
        require(fs::exists(path), "missing " + path.string());
    }
    require(!sources.claims.empty(), "no " + std::string(to_string(dataset)) + " files under " + root.string());
    return sources;
}

/// Writes native-format releases with the published class counts plus NEI records.
void write_release_fixtures(const fs::path& root) {
    using nlohmann::json;
    fs::create_directories(root / "scifact");
    fs::create_directories(root / "pubmedqa");
    fs::create_directories(root / "healthfc");
    fs::create_directories(root / "covert");

    {
        std::ofstream corpus(root / "scifact" / "corpus.jsonl");
        for (int d = 0; d < 50; ++d) {
            corpus << json{{"doc_id", 1000 + d}, {"title", "Doc"}, {"abstract", {"First.", "Second.", "Third."}}}.dump()
                   << '\n';
        }
        int id = 1;
        const auto write_split = [&](const fs::path& path, int supported, int refuted, int nei) {
            std::ofstream out(path);
            const auto claim = [&](json evidence) {
                out << json{{"id", id}, {"claim", "SciFact claim " + std::to_string(id)}, {"evidence", evidence},
                            {"cited_doc_ids", {1000 + id % 50}}}
                           .dump()
                    << '\n';
                ++id;
            };
            for (int i = 0; i < supported; ++i) {
                claim({{std::to_string(1000 + id % 50), {{{"sentences", {0, 2}}, {"label", "SUPPORT"}}}}});
            }
            for (int i = 0; i < refuted; ++i) {
                claim({{std::to_string(1000 + id % 50), {{{"sentences", {1}}, {"label", "CONTRADICT"}}}}});
            }
            for (int i = 0; i < nei; ++i) {
                claim(json::object());
            }
        };
        write_split(root / "scifact" / "claims_train.jsonl", 332, 173, 304);
        write_split(root / "scifact" / "claims_dev.jsonl", 124, 64, 112);
    }
    {
        json document = json::object();
        int pmid = 20000000;
        const auto add = [&](int count, const char* decision) {
            for (int i = 0; i < count; ++i, ++pmid) {
                document[std::to_string(pmid)] = {{"QUESTION", "Question " + std::to_string(pmid) + "?"},
                                                  {"CONTEXTS", {"Background.", "Results."}},
                                                  {"LABELS", {"BACKGROUND", "RESULTS"}},
                                                  {"final_decision", decision}};
            }
        };
        add(552, "yes");
        add(338, "no");
        add(110, "maybe");
        std::ofstream(root / "pubmedqa" / "ori_pqal.json") << document.dump();
    }
    {
        std::ofstream csv(root / "healthfc" / "healthFC_annotated.csv");
        csv << "en_claim,de_claim,en_explanation,label\n";
        int row = 0;
        const auto add = [&](int count, int label) {
            for (int i = 0; i < count; ++i, ++row) {
                csv << "\"Claim " << row << ", with a comma\",\"Behauptung " << row << "\",\"Explanation \"\"" << row
                    << "\"\"\"," << label << '\n';
            }
        };
        add(202, 0);
        add(423, 1);
        add(125, 2);
    }
    {
        std::ofstream out(root / "covert" / "CoVERT_FC_annotations.jsonl");
        int id = 0;
        const auto add = [&](int count, const char* label) {
            for (int i = 0; i < count; ++i, ++id) {
                out << json{{"id", "tweet" + std::to_string(id)},
                            {"claim", "Tweet claim " + std::to_string(id)},
                            {"label", label},
                            {"evidence", {{"https://example.org/" + std::to_string(id), "Evidence text."}}}}
                           .dump()
                    << '\n';
            }
        };
        add(198, "SUPPORTS");
        add(66, "REFUTES");
        add(36, "NOT ENOUGH INFO");
    }
}

std::string dataset_fidelity() {
    const char* env = std::getenv("CLAIMCHECK_DATASET_DIR");
    std::optional<testing_support::TempDir> generated;
    fs::path root;
    std::string origin;
    if (env != nullptr && *env != '\0') {
        root = env;
        origin = "releases from " + root.string();
    } else {
        generated.emplace();
        root = generated->path();
        write_release_fixtures(root);
        origin = "public releases not supplied (set CLAIMCHECK_DATASET_DIR); checked on generated native-format "
                 "files with the published class counts plus NEI records";
    }
    std::string detail;
    for (const auto& [dataset, want] : kPublished) {
        const auto records = remove_nei(load_native_dataset(dataset, sources_in(root, dataset)));
        ClassCounts got;
        for (const auto& r : records) {
            require(r.gold_label != GoldLabel::nei, "NEI record survived");
            (r.gold_label == GoldLabel::supported ? got.supported : got.refuted) += 1;
        }
        const auto name = std::string(to_string(dataset));
        require(got.supported == want.supported && got.refuted == want.refuted,
                name + " gives " + std::to_string(got.supported) + "/" + std::to_string(got.refuted) + ", expected " +
                    std::to_string(want.supported) + "/" + std::to_string(want.refuted));
        detail += name + " " + std::to_string(got.supported) + "/" + std::to_string(got.refuted) + " (" +
                  std::to_string(records.size()) + "); ";
    }
    return detail + origin;
}

// ---------------------------------------------------------------------------
// CLI-level sweep and determinism, on the planted benchmark.

struct PlantedFiles {
    testing_support::TempDir dir;
    std::string corpus;
    std::string claims;
};

const PlantedFiles& planted_files() {
    static const auto files = [] {
        auto f = std::make_unique<PlantedFiles>();
        f->corpus = (f->dir / "corpus.jsonl").string();
        f->claims = (f->dir / "claims.jsonl").string();
        const auto bench = make_planted_benchmark();
        std::ofstream corpus(f->corpus, std::ios::binary);
        write_jsonl(corpus, bench.corpus);
        std::ofstream claims(f->claims, std::ios::binary);
        write_dataset_jsonl(claims, bench.claims);
        return f;
    }();
    return *files;
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "claimcheck");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text != nullptr) {
        *err_text = err.str();
    }
    return code;
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

std::string sweep_plumbing() {
    const auto& files = planted_files();
    const auto report_path = (files.dir / "sweep.json").string();
    std::string err;
    const int code = run_cli({"evaluate", "--fallback", "--data", files.claims, "--corpus", files.corpus,
                              "--retriever", "bm25,dense", "--k", "1,3,5,10,20", "--j", "1,3,5,10,20", "--report",
                              report_path},
                             &err);
    require(code == 0, "evaluate exited " + std::to_string(code) + ": " + err);
    const auto report = read_json(report_path);
    const auto& rows = report.at("rows");
    require(rows.size() == 50, "expected 50 rows, got " + std::to_string(rows.size()));

    std::set<std::tuple<std::string, std::size_t, std::size_t>> seen;
    std::map<std::string, std::map<std::size_t, double>> recall; // retriever -> k -> recall@k
    for (const auto& row : rows) {
        const auto retriever = row.at("retriever").get<std::string>();
        const auto k = row.at("k").get<std::size_t>();
        const auto j = row.at("j").get<std::size_t>();
        require(seen.emplace(retriever, k, j).second, "duplicate row for " + retriever);
        require(!row.at("recall_at_k").is_null(), "row without recall@k");
        const double r = row.at("recall_at_k").get<double>();
        const auto [it, fresh] = recall[retriever].emplace(k, r);
        require(fresh || it->second == r, "recall@k differs across j");
    }
    std::string detail;
    for (const auto& [retriever, by_k] : recall) {
        double previous = -1.0;
        detail += retriever + " recall@{1,3,5,10,20}=";
        for (const auto& [k, r] : by_k) {
            require(r >= previous, retriever + " recall@k decreases at k=" + std::to_string(k));
            previous = r;
            detail += fixed(r, 3) + (k == 20 ? "; " : ",");
        }
    }
    require(run_cli({"evaluate", "--fallback", "--data", files.claims, "--corpus", files.corpus, "--k", "7"}) ==
                cli::kExitUsage,
            "k=7 was not rejected");
    return "50 rows (2 retrievers x 5 k x 5 j); " + detail + "k=7 rejected";
}

std::string determinism() {
    const auto& files = planted_files();
    const std::string binary = CLAIMCHECK_BINARY;
    std::vector<std::string> reports;
    for (int run = 0; run < 2; ++run) {
        const auto report = (files.dir / ("determinism" + std::to_string(run) + ".json")).string();
        const auto command = binary + " evaluate --fallback --data '" + files.claims + "' --corpus '" + files.corpus +
                             "' --retriever bm25,dense --k 10 --j 10 --threads " + std::to_string(run == 0 ? 1 : 4) +
                             " --report '" + report + "' > /dev/null 2>&1";
        const int status = std::system(command.c_str());
        require(status == 0, "evaluate run " + std::to_string(run + 1) + " failed with status " + std::to_string(status));
        reports.push_back(testing_support::read_file(report));
    }
    require(!reports[0].empty(), "empty report");
    require(reports[0] == reports[1], "reports differ");
    return "two evaluate processes (1 and 4 threads) wrote identical " + std::to_string(reports[0].size()) +
           "-byte reports";
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"bm25-oracle", bm25_oracle},
        {"dense-oracle", dense_oracle},
        {"planted-end-to-end", planted_end_to_end},
        {"metrics-oracle", metrics_oracle},
        {"dataset-fidelity", dataset_fidelity},
        {"kj-sweep", sweep_plumbing},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        try {
            const auto detail = check();
            std::cout << "PASS " << name << ": " << detail << std::endl;
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL " << name << ": " << e.what() << std::endl;
        }
    }
    return failures == 0 ? 0 : 1;
}
