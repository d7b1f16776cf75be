#include "claimcheck/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

std::string lower_trimmed(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    std::string out(text.substr(first, last - first + 1));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view gold_label_name(GoldLabel label) {
    switch (label) {
    case GoldLabel::supported: return "supported";
    case GoldLabel::refuted: return "refuted";
    case GoldLabel::nei: return "nei";
    }
    return "nei";
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) {
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

} // namespace

std::string_view to_string(Dataset dataset) {
    switch (dataset) {
    case Dataset::scifact: return "scifact";
    case Dataset::pubmedqa: return "pubmedqa";
    case Dataset::healthfc: return "healthfc";
    case Dataset::covert: return "covert";
    case Dataset::custom: return "custom";
    }
    return "custom";
}

Dataset dataset_from_string(std::string_view name) {
    const auto key = lower_trimmed(name);
    for (const auto dataset :
         {Dataset::scifact, Dataset::pubmedqa, Dataset::healthfc, Dataset::covert, Dataset::custom}) {
        if (key == to_string(dataset)) {
            return dataset;
        }
    }
    throw ConfigError("unknown dataset '" + std::string(name) + "'");
}

Label ClaimRecord::binary_label() const {
    switch (gold_label) {
    case GoldLabel::supported: return Label::supported;
    case GoldLabel::refuted: return Label::refuted;
    case GoldLabel::nei: break;
    }
    throw Error("claim '" + claim_id + "' is labelled NEI");
}

GoldLabel parse_gold_label(Dataset dataset, std::string_view label, std::string_view record_id) {
    const auto key = lower_trimmed(label);
    static const std::set<std::string> supported = {"supported", "support", "supports", "yes", "true"};
    static const std::set<std::string> refuted = {"refuted", "refute", "refutes", "contradict",
                                                  "contradicts", "no", "false"};
    static const std::set<std::string> nei = {"nei", "not enough info", "not enough information",
                                              "not_enough_info", "maybe", "notenoughinfo"};
    if (supported.count(key) != 0) {
        return GoldLabel::supported;
    }
    if (refuted.count(key) != 0) {
        return GoldLabel::refuted;
    }
    if (nei.count(key) != 0) {
        return GoldLabel::nei;
    }
    if (dataset == Dataset::healthfc) {
        // HealthFC release encodes verdicts as 0 supported, 1 not enough information, 2 refuted.
        if (key == "0") {
            return GoldLabel::supported;
        }
        if (key == "1") {
            return GoldLabel::nei;
        }
        if (key == "2") {
            return GoldLabel::refuted;
        }
    }
    throw FormatError("record '" + std::string(record_id) + "': unknown label '" + std::string(label) +
                      "'");
}

std::vector<ClaimRecord> read_dataset_jsonl(Dataset dataset, std::istream& in) {
    std::vector<ClaimRecord> records;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto fail = [&](const std::string& why) {
            throw ParseError("dataset line " + std::to_string(line_number) + ": " + why, line_number);
        };
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(e.what());
        }
        if (!value.is_object()) {
            fail("expected a JSON object");
        }
        ClaimRecord record;
        record.dataset = dataset;
        const auto id = value.find("claim_id");
        if (id == value.end() || !(id->is_string() || id->is_number_integer())) {
            fail("missing claim_id");
        }
        record.claim_id = id->is_string() ? id->get<std::string>() : std::to_string(id->get<long long>());
        const auto text = value.find("text");
        if (text == value.end() || !text->is_string() || text->get<std::string>().empty()) {
            fail("claim '" + record.claim_id + "' has no text");
        }
        record.text = text->get<std::string>();
        const auto label = value.find("label");
        if (label == value.end() || !(label->is_string() || label->is_number_integer())) {
            fail("claim '" + record.claim_id + "' has no label");
        }
        record.gold_label = parse_gold_label(
            dataset, label->is_string() ? label->get<std::string>() : std::to_string(label->get<long long>()),
            record.claim_id);
        if (const auto evidence = value.find("evidence"); evidence != value.end() && !evidence->is_null()) {
            if (!evidence->is_array()) {
                fail("claim '" + record.claim_id + "': evidence must be an array of strings");
            }
            std::vector<std::string> texts;
            for (const auto& item : *evidence) {
                if (!item.is_string()) {
                    fail("claim '" + record.claim_id + "': evidence must be an array of strings");
                }
                texts.push_back(item.get<std::string>());
            }
            record.gold_evidence = std::move(texts);
        }
        if (const auto docs = value.find("doc_ids"); docs != value.end() && docs->is_array()) {
            for (const auto& item : *docs) {
                record.relevant_doc_ids.push_back(item.is_string() ? item.get<std::string>() : item.dump());
            }
        }
        if (!seen.insert(record.claim_id).second) {
            fail("duplicate claim_id '" + record.claim_id + "'");
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<ClaimRecord> remove_nei(std::vector<ClaimRecord> records) {
    std::erase_if(records, [](const ClaimRecord& r) { return r.gold_label == GoldLabel::nei; });
    return records;
}

std::vector<ClaimRecord> load_dataset(Dataset dataset, std::istream& in) {
    return remove_nei(read_dataset_jsonl(dataset, in));
}

std::vector<ClaimRecord> load_dataset(Dataset dataset, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open dataset '" + path.string() + "'");
    }
    return load_dataset(dataset, in);
}

void write_dataset_jsonl(std::ostream& out, std::span<const ClaimRecord> records) {
    for (const auto& record : records) {
        nlohmann::json value = {{"claim_id", record.claim_id},
                                {"text", record.text},
                                {"label", gold_label_name(record.gold_label)}};
        if (record.gold_evidence) {
            value["evidence"] = *record.gold_evidence;
        }
        if (!record.relevant_doc_ids.empty()) {
            value["doc_ids"] = record.relevant_doc_ids;
        }
        out << value.dump() << '\n';
    }
}

Metrics compute_metrics(std::span<const Label> predictions, std::span<const Label> golds) {
    if (predictions.size() != golds.size()) {
        throw Error("got " + std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(golds.size()) + " gold labels");
    }
    if (golds.empty()) {
        throw Error("no labels to score");
    }
    Metrics m;
    for (std::size_t i = 0; i < golds.size(); ++i) {
        const bool predicted = predictions[i] == Label::supported;
        const bool actual = golds[i] == Label::supported;
        if (predicted && actual) {
            ++m.confusion.tp;
        } else if (predicted) {
            ++m.confusion.fp;
        } else if (actual) {
            ++m.confusion.fn;
        } else {
            ++m.confusion.tn;
        }
    }
    const auto& c = m.confusion;
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.recall = ratio(c.tp, c.tp + c.fn);
    m.f1 = harmonic(m.precision, m.recall);
    const double negative_f1 = harmonic(ratio(c.tn, c.tn + c.fn), ratio(c.tn, c.tn + c.fp));
    m.f1_macro = (m.f1 + negative_f1) / 2.0;
    return m;
}

std::string_view to_string(EmptyEvidencePolicy policy) {
    return policy == EmptyEvidencePolicy::refuted ? "refuted" : "supported";
}

EmptyEvidencePolicy empty_policy_from_string(std::string_view name) {
    const auto key = lower_trimmed(name);
    if (key == "refuted") {
        return EmptyEvidencePolicy::refuted;
    }
    if (key == "supported") {
        return EmptyEvidencePolicy::supported;
    }
    throw ConfigError("unknown empty-evidence policy '" + std::string(name) + "'");
}

nlohmann::json ReportRow::to_json() const {
    const auto& c = metrics.confusion;
    return {
        {"dataset", dataset},
        {"source", source},
        {"retriever", retriever},
        {"k", k},
        {"j", j},
        {"mode", mode},
        {"n_claims", n_claims},
        {"skipped", skipped},
        {"no_evidence", no_evidence},
        {"precision", metrics.precision},
        {"recall", metrics.recall},
        {"f1", metrics.f1},
        {"f1_macro", metrics.f1_macro},
        {"confusion", {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}}},
        {"recall_at_k", recall_at_k ? nlohmann::json(*recall_at_k) : nlohmann::json(nullptr)},
    };
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json out_rows = nlohmann::json::array();
    for (const auto& row : rows) {
        out_rows.push_back(row.to_json());
    }
    return {{"config", config}, {"rows", out_rows}};
}

std::string EvalReport::to_table() const {
    const std::vector<std::string> header = {"Dataset", "Source",    "Retriever", "k",        "j",
                                             "Mode",    "N",         "Precision", "Recall",   "F1",
                                             "F1 Macro", "Recall@k"};
    std::vector<std::vector<std::string>> cells = {header};
    const auto percent = [](double value) {
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.1f", value * 100.0);
        return std::string(buffer);
    };
    const auto count = [](std::size_t value) { return value == 0 ? std::string("-") : std::to_string(value); };
    for (const auto& row : rows) {
        cells.push_back({row.dataset, row.source, row.retriever, count(row.k), count(row.j), row.mode,
                         std::to_string(row.n_claims), percent(row.metrics.precision),
                         percent(row.metrics.recall), percent(row.metrics.f1),
                         percent(row.metrics.f1_macro),
                         row.recall_at_k ? percent(*row.recall_at_k) : std::string("-")});
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            widths[i] = std::max(widths[i], line[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            // Text columns left-aligned, numbers right-aligned.
            const bool numeric = i >= 3 && i != 5;
            const auto pad = std::string(widths[i] - line[i].size(), ' ');
            out << (i == 0 ? "" : "  ") << (numeric ? pad + line[i] : line[i] + pad);
        }
        out << '\n';
    }
    std::string table = out.str();
    // Drop trailing spaces left by a left-aligned last column.
    std::string trimmed;
    std::istringstream lines(table);
    for (std::string line; std::getline(lines, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        trimmed += line + '\n';
    }
    return trimmed;
}

void EvalReport::append(const EvalReport& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

std::string sanitize(std::string_view name) {
    std::string out;
    for (const char c : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.';
        out += keep ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") {
        out = "_" + out;
    }
    return out;
}

std::string dataset_label(std::span<const ClaimRecord> records) {
    std::set<Dataset> present;
    for (const auto& record : records) {
        present.insert(record.dataset);
    }
    return present.size() == 1 ? std::string(to_string(*present.begin())) : std::string("mixed");
}

/// Prediction, gold label and whether the empty-evidence policy decided it.
struct Scored {
    Label predicted;
    bool no_evidence;
};

Scored score_outcome(const ClaimOutcome& outcome, EmptyEvidencePolicy policy) {
    if (outcome.verdict) {
        return {outcome.verdict->label, false};
    }
    return {policy == EmptyEvidencePolicy::refuted ? Label::refuted : Label::supported, true};
}

/// Indices of `records` in claim_id order.
std::vector<std::size_t> claim_order(std::span<const ClaimRecord> records) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].claim_id < records[b].claim_id;
    });
    return order;
}

template <typename Fn>
std::vector<ClaimOutcome> run_all(std::span<const ClaimRecord> records, std::size_t threads, Fn&& fn) {
    std::vector<std::optional<ClaimOutcome>> slots(records.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, records.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < records.size(); ++i) {
            slots[i] = fn(records[i]);
        }
    } else {
        std::vector<std::future<void>> futures;
        for (std::size_t w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < records.size(); i += workers) {
                    slots[i] = fn(records[i]);
                }
            }));
        }
        for (auto& f : futures) {
            f.get();
        }
    }
    std::vector<ClaimOutcome> outcomes;
    outcomes.reserve(slots.size());
    for (auto& slot : slots) {
        outcomes.push_back(std::move(*slot));
    }
    return outcomes;
}

std::string row_tag(const ReportRow& row) {
    std::string tag = row.dataset + "-" + row.source + "-" + row.retriever;
    if (row.k != 0) {
        tag += "-k" + std::to_string(row.k);
    }
    if (row.j != 0) {
        tag += "-j" + std::to_string(row.j);
    }
    return sanitize(tag + "-" + row.mode);
}

void write_artifacts(const std::filesystem::path& root, const ReportRow& row,
                     std::span<const ClaimRecord> records, std::span<const ClaimOutcome> outcomes,
                     std::span<const std::size_t> order) {
    const auto dir = root / row_tag(row);
    std::filesystem::create_directories(dir);
    for (const auto i : order) {
        auto payload = outcomes[i].to_json();
        payload["gold_label"] = gold_label_name(records[i].gold_label);
        const auto path = dir / (sanitize(records[i].claim_id) + ".json");
        std::ofstream out(path, std::ios::binary);
        out << payload.dump(2) << '\n';
        if (!out) {
            throw Error("cannot write artifact '" + path.string() + "'");
        }
    }
}

/// Reduces outcomes in claim_id order into a report row.
void finish_row(ReportRow& row, std::span<const ClaimRecord> records,
                std::span<const ClaimOutcome> outcomes, const EvalOptions& options) {
    const auto order = claim_order(records);
    std::vector<Label> predictions;
    std::vector<Label> golds;
    for (const auto i : order) {
        const auto scored = score_outcome(outcomes[i], options.empty_policy);
        predictions.push_back(scored.predicted);
        golds.push_back(records[i].binary_label());
        row.no_evidence += scored.no_evidence ? 1 : 0;
    }
    row.n_claims = golds.size();
    row.metrics = compute_metrics(predictions, golds);
    if (options.artifacts_dir) {
        write_artifacts(*options.artifacts_dir, row, records, outcomes, order);
    }
}

void require_binary(std::span<const ClaimRecord> records) {
    if (records.empty()) {
        throw Error("no claims to evaluate");
    }
    for (const auto& record : records) {
        if (record.gold_label == GoldLabel::nei) {
            throw Error("claim '" + record.claim_id + "' is labelled NEI; filter NEI records first");
        }
    }
}

} // namespace

EvalReport run_gold_evidence_eval(std::span<const ClaimRecord> records, const NliPredictor& nli,
                                  const EvalOptions& options) {
    require_binary(records);
    std::map<Dataset, std::vector<ClaimRecord>> by_dataset;
    std::map<Dataset, std::size_t> skipped;
    for (const auto& record : records) {
        if (!record.gold_evidence || record.gold_evidence->empty()) {
            ++skipped[record.dataset];
            by_dataset.try_emplace(record.dataset);
            continue;
        }
        by_dataset[record.dataset].push_back(record);
    }
    EvalReport report;
    for (const auto& [dataset, subset] : by_dataset) {
        ReportRow row;
        row.dataset = std::string(to_string(dataset));
        row.source = "gold";
        row.retriever = "gold";
        row.mode = std::string(to_string(VerdictMode::concat));
        row.skipped = skipped[dataset];
        if (subset.empty()) {
            std::cerr << "warning: no " << row.dataset << " claim carries gold evidence\n";
            report.rows.push_back(row);
            continue;
        }
        const auto outcomes = run_all(subset, options.threads, [&](const ClaimRecord& record) {
            return run_claim_with_texts(record.claim(), *record.gold_evidence, nli);
        });
        finish_row(row, subset, outcomes, options);
        report.rows.push_back(std::move(row));
    }
    return report;
}

EvalReport run_open_domain_eval(std::span<const ClaimRecord> records, const Retriever& retriever,
                                const Corpus& corpus, const SentenceScorer& scorer,
                                const NliPredictor& nli, const EvalOptions& options) {
    require_binary(records);
    const auto& pipeline = options.pipeline;
    const auto outcomes = run_all(records, options.threads, [&](const ClaimRecord& record) {
        return run_claim(record.claim(), retriever, corpus, scorer, nli, pipeline);
    });

    ReportRow row;
    row.dataset = dataset_label(records);
    row.source = options.source_name;
    row.retriever = std::string(to_string(retriever.kind()));
    row.k = pipeline.k;
    row.j = pipeline.j;
    row.mode = std::string(to_string(pipeline.mode));

    std::size_t with_relevance = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& relevant = records[i].relevant_doc_ids;
        if (relevant.empty()) {
            continue;
        }
        ++with_relevance;
        const bool found = std::any_of(outcomes[i].retrieved.begin(), outcomes[i].retrieved.end(),
                                       [&](const ScoredDocument& hit) {
                                           return std::find(relevant.begin(), relevant.end(),
                                                            hit.doc_id) != relevant.end();
                                       });
        hits += found ? 1 : 0;
    }
    if (with_relevance != 0) {
        row.recall_at_k = ratio(hits, with_relevance);
    }
    finish_row(row, records, outcomes, options);
    EvalReport report;
    report.rows.push_back(std::move(row));
    return report;
}

EvalReport run_web_eval(std::span<const ClaimRecord> records, const SnippetSource& snippets,
                        const NliPredictor& nli, const EvalOptions& options) {
    require_binary(records);
    const auto outcomes = run_all(records, options.threads, [&](const ClaimRecord& record) {
        const auto claim = record.claim();
        return run_claim_with_texts(claim, snippets.snippets(claim), nli);
    });
    ReportRow row;
    row.dataset = dataset_label(records);
    row.source = "web";
    row.retriever = "google";
    row.mode = std::string(to_string(VerdictMode::concat));
    finish_row(row, records, outcomes, options);
    EvalReport report;
    report.rows.push_back(std::move(row));
    return report;
}

std::optional<double> recall_at_k(std::span<const ClaimRecord> records, const Retriever& retriever,
                                  std::size_t k) {
    std::size_t with_relevance = 0;
    std::size_t hits = 0;
    for (const auto& record : records) {
        if (record.relevant_doc_ids.empty()) {
            continue;
        }
        ++with_relevance;
        for (const auto& hit : retriever.retrieve(record.claim(), k)) {
            if (std::find(record.relevant_doc_ids.begin(), record.relevant_doc_ids.end(), hit.doc_id) !=
                record.relevant_doc_ids.end()) {
                ++hits;
                break;
            }
        }
    }
    if (with_relevance == 0) {
        return std::nullopt;
    }
    return ratio(hits, with_relevance);
}

} // namespace claimcheck
