#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "claimcheck/benchmark.hpp"
#include "claimcheck/errors.hpp"
#include "claimcheck/eval.hpp"
#include "test_support.hpp"

using namespace claimcheck;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

std::vector<Label> labels(const std::string& pattern) {
    std::vector<Label> out;
    for (const char c : pattern) {
        out.push_back(c == 'S' ? Label::supported : Label::refuted);
    }
    return out;
}

ClaimRecord record(const std::string& id, const std::string& text, GoldLabel label,
                   std::optional<std::vector<std::string>> evidence = std::nullopt,
                   Dataset dataset = Dataset::custom) {
    ClaimRecord r;
    r.claim_id = id;
    r.text = text;
    r.gold_label = label;
    r.gold_evidence = std::move(evidence);
    r.dataset = dataset;
    return r;
}

PlantedBenchmark small_benchmark() {
    PlantedOptions options;
    options.distractors = 300;
    options.claims = 20;
    options.seed = 7;
    return make_planted_benchmark(options);
}

} // namespace

// --- labels and loading -------------------------------------------------------

TEST(GoldLabels, NativeVocabularies) {
    EXPECT_EQ(parse_gold_label(Dataset::pubmedqa, "yes", "r"), GoldLabel::supported);
    EXPECT_EQ(parse_gold_label(Dataset::pubmedqa, "no", "r"), GoldLabel::refuted);
    EXPECT_EQ(parse_gold_label(Dataset::pubmedqa, "maybe", "r"), GoldLabel::nei);
    EXPECT_EQ(parse_gold_label(Dataset::scifact, "SUPPORT", "r"), GoldLabel::supported);
    EXPECT_EQ(parse_gold_label(Dataset::scifact, "CONTRADICT", "r"), GoldLabel::refuted);
    EXPECT_EQ(parse_gold_label(Dataset::covert, "NOT ENOUGH INFO", "r"), GoldLabel::nei);
    EXPECT_EQ(parse_gold_label(Dataset::covert, " Refutes ", "r"), GoldLabel::refuted);
    EXPECT_EQ(parse_gold_label(Dataset::healthfc, "2", "r"), GoldLabel::refuted);
    EXPECT_EQ(parse_gold_label(Dataset::healthfc, "1", "r"), GoldLabel::nei);
}

TEST(GoldLabels, UnknownLabelNamesRecord) {
    try {
        parse_gold_label(Dataset::scifact, "PARTIAL", "claim-42");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("claim-42"), std::string::npos);
    }
    EXPECT_THROW(parse_gold_label(Dataset::scifact, "2", "x"), FormatError);
}

TEST(CanonicalDataset, DropsNei) {
    std::istringstream in(
        R"({"claim_id": "a", "text": "Claim A", "label": "supported", "evidence": ["e1"]})" "\n"
        R"({"claim_id": 7, "text": "Claim B", "label": "nei"})" "\n"
        "\n"
        R"({"claim_id": "c", "text": "Claim C", "label": "REFUTED", "doc_ids": ["d1", "d2"]})" "\n");
    const auto records = load_dataset(Dataset::scifact, in);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].claim_id, "a");
    EXPECT_EQ(records[0].gold_evidence, (std::vector<std::string>{"e1"}));
    EXPECT_EQ(records[0].dataset, Dataset::scifact);
    EXPECT_EQ(records[1].gold_label, GoldLabel::refuted);
    EXPECT_FALSE(records[1].gold_evidence.has_value());
    EXPECT_EQ(records[1].relevant_doc_ids, (std::vector<std::string>{"d1", "d2"}));
    EXPECT_EQ(records[1].binary_label(), Label::refuted);
}

TEST(CanonicalDataset, OnlyNeiGivesEmptyList) {
    std::istringstream in(R"({"claim_id": "a", "text": "x", "label": "nei"})" "\n"
                          R"({"claim_id": "b", "text": "y", "label": "maybe"})" "\n");
    EXPECT_TRUE(load_dataset(Dataset::pubmedqa, in).empty());
}

TEST(CanonicalDataset, Errors) {
    std::istringstream bad_label(R"({"claim_id": "a", "text": "x", "label": "perhaps"})");
    EXPECT_THROW(load_dataset(Dataset::custom, bad_label), FormatError);
    std::istringstream bad_json("{\"claim_id\": \"a\", \"text\": \"x\", \"label\": \"nei\"}\n{oops\n");
    try {
        load_dataset(Dataset::custom, bad_json);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream duplicate(R"({"claim_id": "a", "text": "x", "label": "nei"})" "\n"
                                 R"({"claim_id": "a", "text": "y", "label": "nei"})" "\n");
    EXPECT_THROW(load_dataset(Dataset::custom, duplicate), Error);
    std::istringstream no_text(R"({"claim_id": "a", "text": "", "label": "supported"})");
    EXPECT_THROW(load_dataset(Dataset::custom, no_text), Error);
    EXPECT_THROW(load_dataset(Dataset::custom, std::filesystem::path("/nonexistent/file.jsonl")), Error);
}

TEST(CanonicalDataset, RoundTrip) {
    std::vector<ClaimRecord> records{record("x1", "First claim", GoldLabel::supported, std::vector<std::string>{"ev"}),
                                     record("x2", "Second \"quoted\" claim", GoldLabel::nei),
                                     record("x3", "Third", GoldLabel::refuted)};
    records[2].relevant_doc_ids = {"p-1"};
    std::ostringstream out;
    write_dataset_jsonl(out, records);
    std::istringstream in(out.str());
    const auto back = read_dataset_jsonl(Dataset::custom, in);
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back[i].claim_id, records[i].claim_id);
        EXPECT_EQ(back[i].text, records[i].text);
        EXPECT_EQ(back[i].gold_label, records[i].gold_label);
        EXPECT_EQ(back[i].gold_evidence, records[i].gold_evidence);
        EXPECT_EQ(back[i].relevant_doc_ids, records[i].relevant_doc_ids);
    }
    EXPECT_EQ(remove_nei(back).size(), 2u);
    EXPECT_THROW(back[1].binary_label(), Error);
}

TEST(DatasetNames, RoundTrip) {
    for (const auto d : {Dataset::scifact, Dataset::pubmedqa, Dataset::healthfc, Dataset::covert, Dataset::custom}) {
        EXPECT_EQ(dataset_from_string(to_string(d)), d);
    }
    EXPECT_THROW(dataset_from_string("fever"), ConfigError);
}

// --- native adapters ----------------------------------------------------------

TEST(NativeAdapters, SciFact) {
    TempDir dir;
    write_file(dir / "corpus.jsonl",
               R"({"doc_id": 11, "title": "T", "abstract": ["S0.", "S1.", "S2."]})" "\n"
               R"({"doc_id": 12, "title": "U", "abstract": ["U0.", "U1."]})" "\n");
    write_file(dir / "claims_train.jsonl",
               R"({"id": 1, "claim": "C1", "evidence": {"11": [{"sentences": [2, 0], "label": "SUPPORT"}]}, "cited_doc_ids": [11]})" "\n"
               R"({"id": 2, "claim": "C2", "evidence": {}, "cited_doc_ids": [12]})" "\n");
    write_file(dir / "claims_dev.jsonl",
               R"({"id": 3, "claim": "C3", "evidence": {"12": [{"sentences": [1], "label": "CONTRADICT"}], "11": [{"sentences": [1], "label": "CONTRADICT"}]}})" "\n");
    const auto all = load_native_dataset(
        Dataset::scifact, NativeSources{{dir / "claims_train.jsonl", dir / "claims_dev.jsonl"}, dir / "corpus.jsonl"});
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].claim_id, "1");
    EXPECT_EQ(all[0].gold_label, GoldLabel::supported);
    EXPECT_EQ(all[0].gold_evidence, (std::vector<std::string>{"S0.", "S2."}));
    EXPECT_EQ(all[0].relevant_doc_ids, (std::vector<std::string>{"11"}));
    EXPECT_EQ(all[1].gold_label, GoldLabel::nei);
    EXPECT_EQ(all[2].gold_label, GoldLabel::refuted);
    EXPECT_EQ(all[2].gold_evidence->size(), 2u);
    EXPECT_EQ(remove_nei(all).size(), 2u);
}

TEST(NativeAdapters, PubMedQA) {
    TempDir dir;
    write_file(dir / "ori_pqal.json", R"({
      "100": {"QUESTION": "Does A help?", "CONTEXTS": ["A helped.", "More."], "final_decision": "yes"},
      "101": {"QUESTION": "Does B help?", "CONTEXTS": ["B did not."], "final_decision": "no"},
      "102": {"QUESTION": "Does C help?", "CONTEXTS": [], "final_decision": "maybe"}
    })");
    const auto all = load_native_dataset(Dataset::pubmedqa, NativeSources{{dir / "ori_pqal.json"}, std::nullopt});
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].text, "Does A help?");
    EXPECT_EQ(all[0].gold_evidence, (std::vector<std::string>{"A helped.", "More."}));
    EXPECT_EQ(all[1].gold_label, GoldLabel::refuted);
    EXPECT_EQ(all[2].gold_label, GoldLabel::nei);
}

TEST(NativeAdapters, HealthFCCsv) {
    TempDir dir;
    write_file(dir / "healthfc.csv",
               "en_claim,label,en_explanation,extra\n"
               "\"Garlic lowers blood pressure, slightly\",0,\"Studies show \"\"small\"\" effects\",x\n"
               "Honey cures cough,1,Unclear,y\n"
               "\"Multi\nline claim\",2,No support,z\n");
    const auto all = load_native_dataset(Dataset::healthfc, NativeSources{{dir / "healthfc.csv"}, std::nullopt});
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].text, "Garlic lowers blood pressure, slightly");
    EXPECT_EQ(all[0].gold_evidence, (std::vector<std::string>{"Studies show \"small\" effects"}));
    EXPECT_EQ(all[0].gold_label, GoldLabel::supported);
    EXPECT_EQ(all[1].gold_label, GoldLabel::nei);
    EXPECT_EQ(all[2].text, "Multi\nline claim");
    EXPECT_EQ(all[2].gold_label, GoldLabel::refuted);

    write_file(dir / "bad.csv", "statement,score\nx,1\n");
    EXPECT_THROW(load_native_dataset(Dataset::healthfc, NativeSources{{dir / "bad.csv"}, std::nullopt}), FormatError);
}

TEST(NativeAdapters, CoVert) {
    TempDir dir;
    write_file(dir / "covert.jsonl",
               R"({"id": "t1", "claim": "Masks work", "label": "SUPPORTS", "evidence": [["https://x.org", "Masks reduce spread."]]})" "\n"
               R"({"id": "t2", "claim": "5G spreads it", "label": "REFUTES", "evidence": [{"text": "No link found."}]})" "\n"
               R"({"id": "t3", "claim": "Zinc helps", "label": "NOT ENOUGH INFO", "evidence": []})" "\n");
    const auto all = load_native_dataset(Dataset::covert, NativeSources{{dir / "covert.jsonl"}, std::nullopt});
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].gold_evidence, (std::vector<std::string>{"Masks reduce spread."}));
    EXPECT_EQ(all[1].gold_evidence, (std::vector<std::string>{"No link found."}));
    EXPECT_EQ(all[2].gold_label, GoldLabel::nei);
    EXPECT_THROW(load_native_dataset(Dataset::custom, NativeSources{{dir / "covert.jsonl"}, std::nullopt}), ConfigError);
}

// --- metrics ------------------------------------------------------------------

TEST(Metrics, PerfectPredictions) {
    const auto golds = labels("SSRRS");
    const auto m = compute_metrics(golds, golds);
    EXPECT_DOUBLE_EQ(m.precision, 1.0);
    EXPECT_DOUBLE_EQ(m.recall, 1.0);
    EXPECT_DOUBLE_EQ(m.f1, 1.0);
    EXPECT_DOUBLE_EQ(m.f1_macro, 1.0);
}

TEST(Metrics, TwoThirdsCase) {
    // TP=2, FP=1, FN=1, TN=1.
    const auto m = compute_metrics(labels("SSSRR"), labels("SSRSR"));
    EXPECT_EQ(m.confusion, (Confusion{2, 1, 1, 1}));
    EXPECT_NEAR(m.precision, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.recall, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-15);
    // Negative class: P = R = 1/2.
    EXPECT_NEAR(m.f1_macro, (2.0 / 3.0 + 0.5) / 2.0, 1e-15);
}

TEST(Metrics, ZeroDivisionIsZero) {
    const auto m = compute_metrics(labels("RRRR"), labels("SRSR"));
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.f1, 0.0);
    EXPECT_GT(m.f1_macro, 0.0);
    const auto none = compute_metrics(labels("RR"), labels("RR"));
    EXPECT_EQ(none.f1, 0.0);
    EXPECT_DOUBLE_EQ(none.f1_macro, 0.5);
}

TEST(Metrics, Errors) {
    EXPECT_THROW(compute_metrics(labels("SS"), labels("S")), Error);
    EXPECT_THROW(compute_metrics(labels(""), labels("")), Error);
}

TEST(Metrics, BoundsAndConfusionTotals) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        std::string p;
        std::string g;
        const auto n = 1 + rng() % 40;
        for (std::size_t t = 0; t < n; ++t) {
            p += (rng() & 1) != 0 ? 'S' : 'R';
            g += (rng() & 1) != 0 ? 'S' : 'R';
        }
        const auto m = compute_metrics(labels(p), labels(g));
        EXPECT_EQ(m.confusion.total(), n);
        for (const double v : {m.precision, m.recall, m.f1, m.f1_macro}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

// --- reports ------------------------------------------------------------------

TEST(Report, JsonAndTable) {
    EvalReport report;
    report.config = {{"k", 10}};
    ReportRow row;
    row.dataset = "scifact";
    row.source = "pubmed";
    row.retriever = "bm25";
    row.k = 10;
    row.j = 10;
    row.mode = "concat";
    row.n_claims = 5;
    row.metrics = compute_metrics(labels("SSSRR"), labels("SSRSR"));
    row.recall_at_k = 0.75;
    report.rows.push_back(row);
    ReportRow gold = row;
    gold.source = "gold";
    gold.retriever = "gold";
    gold.k = 0;
    gold.j = 0;
    gold.recall_at_k.reset();
    report.rows.push_back(gold);

    const auto json = report.to_json();
    EXPECT_EQ(json["config"]["k"], 10);
    ASSERT_EQ(json["rows"].size(), 2u);
    EXPECT_EQ(json["rows"][0]["confusion"]["tp"], 2);
    EXPECT_DOUBLE_EQ(json["rows"][0]["recall_at_k"].get<double>(), 0.75);
    EXPECT_TRUE(json["rows"][1]["recall_at_k"].is_null());

    EXPECT_EQ(report.to_table(),
              "Dataset  Source  Retriever   k   j  Mode    N  Precision  Recall    F1  F1 Macro  Recall@k\n"
              "scifact  pubmed  bm25       10  10  concat  5       66.7    66.7  66.7      58.3      75.0\n"
              "scifact  gold    gold        -   -  concat  5       66.7    66.7  66.7      58.3         -\n");
}

TEST(EmptyPolicy, Names) {
    EXPECT_EQ(empty_policy_from_string("refuted"), EmptyEvidencePolicy::refuted);
    EXPECT_EQ(empty_policy_from_string("supported"), EmptyEvidencePolicy::supported);
    EXPECT_THROW(empty_policy_from_string("strict"), ConfigError);
}

// --- runners ------------------------------------------------------------------

TEST(GoldEval, RestatedEvidenceScoresPerfectly) {
    std::vector<ClaimRecord> records{
        record("1", "Aspirin reduces fever in adults", GoldLabel::supported,
               std::vector<std::string>{"Aspirin reduces fever in adults."}, Dataset::scifact),
        record("2", "Vitamin C cures the common cold", GoldLabel::refuted,
               std::vector<std::string>{"No evidence that vitamin C cures the common cold."}, Dataset::scifact),
        record("3", "Coffee raises alertness", GoldLabel::supported,
               std::vector<std::string>{"Coffee raises alertness", "in most adults."}, Dataset::covert),
        record("4", "Garlic lowers blood pressure", GoldLabel::refuted, std::nullopt, Dataset::covert),
        record("5", "Honey soothes coughs", GoldLabel::refuted,
               std::vector<std::string>{"Honey never soothes coughs."}, Dataset::covert),
    };
    const auto report = run_gold_evidence_eval(records, HeuristicNli{});
    ASSERT_EQ(report.rows.size(), 2u);
    const auto& scifact = report.rows[0];
    EXPECT_EQ(scifact.dataset, "scifact");
    EXPECT_EQ(scifact.source, "gold");
    EXPECT_EQ(scifact.n_claims, 2u);
    EXPECT_DOUBLE_EQ(scifact.metrics.f1, 1.0);
    EXPECT_DOUBLE_EQ(scifact.metrics.f1_macro, 1.0);
    const auto& covert = report.rows[1];
    EXPECT_EQ(covert.dataset, "covert");
    EXPECT_EQ(covert.n_claims, 2u);
    EXPECT_EQ(covert.skipped, 1u);
    EXPECT_DOUBLE_EQ(covert.metrics.f1, 1.0);
}

TEST(GoldEval, Errors) {
    EXPECT_THROW(run_gold_evidence_eval(std::vector<ClaimRecord>{}, HeuristicNli{}), Error);
    std::vector<ClaimRecord> nei{record("1", "x", GoldLabel::nei, std::vector<std::string>{"x"})};
    EXPECT_THROW(run_gold_evidence_eval(nei, HeuristicNli{}), Error);
}

TEST(OpenDomainEval, PlantedBenchmarkBothRetrievers) {
    const auto bench = small_benchmark();
    ASSERT_EQ(bench.claims.size(), 20u);
    ASSERT_EQ(bench.corpus.size(), 320u);
    const auto scorers = make_fallback_scorers();
    const auto sparse = build_sparse_index(bench.corpus);
    const auto dense = build_dense_index(bench.corpus, *scorers.embedder);
    const SparseRetriever bm25(sparse);
    const DenseRetriever vectors(dense, *scorers.embedder);

    for (const Retriever* retriever : {static_cast<const Retriever*>(&bm25), static_cast<const Retriever*>(&vectors)}) {
        EvalOptions options;
        options.source_name = "planted";
        const auto report =
            run_open_domain_eval(bench.claims, *retriever, bench.corpus, *scorers.sentence_scorer, *scorers.nli, options);
        ASSERT_EQ(report.rows.size(), 1u);
        const auto& row = report.rows[0];
        EXPECT_EQ(row.source, "planted");
        EXPECT_EQ(row.retriever, std::string(to_string(retriever->kind())));
        EXPECT_EQ(row.k, 10u);
        EXPECT_EQ(row.j, 10u);
        EXPECT_EQ(row.n_claims, 20u);
        EXPECT_EQ(row.no_evidence, 0u);
        ASSERT_TRUE(row.recall_at_k.has_value());
        EXPECT_DOUBLE_EQ(*row.recall_at_k, 1.0);
        EXPECT_DOUBLE_EQ(row.metrics.f1, 1.0);
    }
}

TEST(OpenDomainEval, RecallAtKMonotone) {
    const auto bench = small_benchmark();
    const auto scorers = make_fallback_scorers();
    const auto dense = build_dense_index(bench.corpus, *scorers.embedder);
    const DenseRetriever retriever(dense, *scorers.embedder);
    double previous = 0.0;
    for (const std::size_t k : {1, 3, 5, 10, 20}) {
        const auto r = recall_at_k(bench.claims, retriever, k);
        ASSERT_TRUE(r.has_value());
        EXPECT_GE(*r, previous);
        previous = *r;
    }
    std::vector<ClaimRecord> no_relevance{record("x", "text", GoldLabel::supported)};
    EXPECT_FALSE(recall_at_k(no_relevance, retriever, 10).has_value());
}

TEST(OpenDomainEval, ThreadsAndArtifacts) {
    const auto bench = small_benchmark();
    const auto scorers = make_fallback_scorers();
    const auto sparse = build_sparse_index(bench.corpus);
    const SparseRetriever retriever(sparse);
    TempDir dir;

    EvalOptions serial;
    serial.pipeline.k = 5;
    serial.pipeline.j = 3;
    serial.pipeline.mode = VerdictMode::majority;
    serial.artifacts_dir = dir / "serial";
    EvalOptions parallel = serial;
    parallel.threads = 4;
    parallel.artifacts_dir = dir / "parallel";

    const auto a = run_open_domain_eval(bench.claims, retriever, bench.corpus, *scorers.sentence_scorer, *scorers.nli, serial);
    const auto b = run_open_domain_eval(bench.claims, retriever, bench.corpus, *scorers.sentence_scorer, *scorers.nli, parallel);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    EXPECT_EQ(a.rows[0].mode, "majority");

    const auto tag = "custom-corpus-bm25-k5-j3-majority";
    const auto first = dir / "serial" / tag / "c-0000.json";
    ASSERT_TRUE(std::filesystem::exists(first));
    const auto artifact = nlohmann::json::parse(testing_support::read_file(first));
    EXPECT_EQ(artifact["claim"]["claim_id"], "c-0000");
    EXPECT_TRUE(artifact.contains("retrieved"));
    EXPECT_TRUE(artifact.contains("evidence"));
    EXPECT_TRUE(artifact.contains("verdict"));
    EXPECT_TRUE(artifact.contains("gold_label"));
    EXPECT_EQ(testing_support::read_file(first), testing_support::read_file(dir / "parallel" / tag / "c-0000.json"));
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir / "serial" / tag)) {
        ++files;
    }
    EXPECT_EQ(files, 20u);
}

TEST(OpenDomainEval, EmptyEvidencePolicyDecides) {
    Corpus corpus;
    corpus.add(Document{"d1", "", "Completely unrelated words about astronomy and stars.", std::nullopt, Source::other});
    const auto sparse = build_sparse_index(corpus);
    const SparseRetriever retriever(sparse);
    std::vector<ClaimRecord> records{record("1", "zebra quokka", GoldLabel::supported),
                                     record("2", "okapi tapir", GoldLabel::refuted)};
    const auto scorers = make_fallback_scorers();
    EvalOptions options;
    auto report = run_open_domain_eval(records, retriever, corpus, *scorers.sentence_scorer, *scorers.nli, options);
    EXPECT_EQ(report.rows[0].no_evidence, 2u);
    EXPECT_EQ(report.rows[0].metrics.confusion, (Confusion{0, 0, 1, 1}));
    options.empty_policy = EmptyEvidencePolicy::supported;
    report = run_open_domain_eval(records, retriever, corpus, *scorers.sentence_scorer, *scorers.nli, options);
    EXPECT_EQ(report.rows[0].metrics.confusion, (Confusion{1, 1, 0, 0}));
}

TEST(WebEval, SnippetsFromFixture) {
    const nlohmann::json snippets = {
        {"1", {"Aspirin reduces fever in adults.", "Other text."}},
        {"2", {"There is no evidence that garlic cures colds."}},
    };
    const FixtureSnippets source(snippets);
    std::vector<ClaimRecord> records{record("1", "aspirin reduces fever in adults", GoldLabel::supported),
                                     record("2", "garlic cures colds", GoldLabel::refuted),
                                     record("3", "unlisted claim", GoldLabel::refuted)};
    const auto report = run_web_eval(records, source, HeuristicNli{}, EvalOptions{});
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_EQ(report.rows[0].source, "web");
    EXPECT_EQ(report.rows[0].retriever, "google");
    EXPECT_EQ(report.rows[0].no_evidence, 1u);
    EXPECT_DOUBLE_EQ(report.rows[0].metrics.f1, 1.0);
}

TEST(PlantedBenchmark, Deterministic) {
    const auto a = small_benchmark();
    const auto b = small_benchmark();
    EXPECT_EQ(a.corpus, b.corpus);
    EXPECT_EQ(a.planted_sentences, b.planted_sentences);
    PlantedOptions other;
    other.distractors = 300;
    other.claims = 20;
    other.seed = 8;
    EXPECT_NE(make_planted_benchmark(other).planted_sentences, a.planted_sentences);
    std::size_t refuted = 0;
    for (const auto& c : a.claims) {
        refuted += c.gold_label == GoldLabel::refuted ? 1 : 0;
        ASSERT_EQ(c.relevant_doc_ids.size(), 1u);
        EXPECT_NE(a.corpus.find(c.relevant_doc_ids[0]), nullptr);
    }
    EXPECT_EQ(refuted, 8u);
}
