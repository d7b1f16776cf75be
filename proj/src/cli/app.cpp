#include "claimcheck/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/dense_index.hpp"
#include "claimcheck/errors.hpp"
#include "claimcheck/eval.hpp"
#include "claimcheck/gateway.hpp"
#include "claimcheck/gateway_server.hpp"
#include "claimcheck/pipeline.hpp"
#include "claimcheck/sparse_index.hpp"

namespace claimcheck::cli {

namespace {

using nlohmann::json;

/// Bad flags or configuration: exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

constexpr const char* kGatewayEnv = "CLAIMCHECK_GATEWAY";
constexpr const char* kGatewayTokenEnv = "CLAIMCHECK_GATEWAY_TOKEN";
const std::set<std::size_t> kSweepValues = {1, 3, 5, 10, 20};

// ---------------------------------------------------------------------------
// Configuration: flags > config file > defaults.

class Config {
public:
    void load(const std::string& path) {
        if (path.empty()) {
            return;
        }
        std::ifstream in(path);
        if (!in) {
            throw UsageError("cannot open config file '" + path + "'");
        }
        try {
            file_ = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("config file '" + path + "': " + e.what());
        }
        if (!file_.is_object()) {
            throw UsageError("config file must hold a JSON object");
        }
        static const std::set<std::string> known = {
            "gateway", "retriever", "k", "j", "verdict_mode", "bm25", "dense", "allow_any_k",
            "threads", "empty_policy", "source_name"};
        for (const auto& [key, value] : file_.items()) {
            if (known.count(key) == 0) {
                throw UsageError("unknown config key '" + key + "'");
            }
        }
    }

    template <typename T>
    T pick(const CLI::Option* flag, const T& flag_value, const std::string& pointer, T fallback) const {
        if (flag != nullptr && flag->count() > 0) {
            return flag_value;
        }
        const json::json_pointer ptr(pointer);
        if (file_.contains(ptr)) {
            try {
                return file_.at(ptr).get<T>();
            } catch (const json::exception& e) {
                throw UsageError("config value " + pointer + ": " + e.what());
            }
        }
        return fallback;
    }

    /// A list flag that also accepts a scalar in the config file.
    template <typename T>
    std::vector<T> pick_list(const CLI::Option* flag, const std::vector<T>& flag_value,
                             const std::string& pointer, std::vector<T> fallback) const {
        if (flag != nullptr && flag->count() > 0) {
            return flag_value;
        }
        const json::json_pointer ptr(pointer);
        if (file_.contains(ptr)) {
            const auto& value = file_.at(ptr);
            try {
                return value.is_array() ? value.get<std::vector<T>>() : std::vector<T>{value.get<T>()};
            } catch (const json::exception& e) {
                throw UsageError("config value " + pointer + ": " + e.what());
            }
        }
        return fallback;
    }

private:
    json file_ = json::object();
};

struct GatewayFlags {
    std::string endpoint;
    bool fallback = false;
    CLI::Option* endpoint_opt = nullptr;
    CLI::Option* fallback_opt = nullptr;

    void add_to(CLI::App& app) {
        endpoint_opt = app.add_option("--gateway", endpoint,
                                      "Gateway endpoint URL, or 'fallback' for the offline scorers");
        fallback_opt = app.add_flag("--fallback", fallback, "Use the offline fallback scorers");
    }

    /// "fallback", an endpoint URL, or nullopt when nothing is configured.
    std::optional<std::string> resolve(const Config& config) const {
        if (fallback) {
            return std::string("fallback");
        }
        auto chosen = config.pick<std::string>(endpoint_opt, endpoint, "/gateway", "");
        if (chosen.empty()) {
            if (const char* env = std::getenv(kGatewayEnv); env != nullptr) {
                chosen = env;
            }
        }
        if (chosen.empty()) {
            return std::nullopt;
        }
        return chosen;
    }
};

Scorers connect(const std::optional<std::string>& gateway) {
    if (!gateway) {
        throw Error(std::string("no gateway configured: pass --gateway URL or --fallback, or set ") +
                    kGatewayEnv);
    }
    if (*gateway == "fallback") {
        return make_fallback_scorers();
    }
    GatewayOptions options;
    options.endpoint = *gateway;
    if (const char* token = std::getenv(kGatewayTokenEnv); token != nullptr && *token != '\0') {
        options.bearer_token = token;
    }
    return make_remote_scorers(options);
}

json scorer_ids(const Scorers& scorers) {
    return {{"embedder", scorers.embedder->id()},
            {"similarity", scorers.sentence_scorer->id()},
            {"nli", scorers.nli->id()}};
}

void check_sweep_value(const char* name, std::size_t value, bool allow_any) {
    if (value == 0) {
        throw UsageError(std::string(name) + " must be at least 1");
    }
    if (!allow_any && kSweepValues.count(value) == 0) {
        throw UsageError(std::string(name) + "=" + std::to_string(value) +
                         " is outside {1,3,5,10,20}; pass --allow-any-k to override");
    }
}

// ---------------------------------------------------------------------------
// Files.

Corpus read_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open corpus '" + path + "'");
    }
    return parse_jsonl(in, ParseMode::strict);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
}

enum class IndexFile { sparse, dense };

IndexFile sniff_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open index '" + path + "'");
    }
    char magic[8] = {};
    in.read(magic, sizeof magic);
    const std::string_view head(magic, static_cast<std::size_t>(in.gcount()));
    if (head == std::string_view("CCSPARSE", 8)) {
        return IndexFile::sparse;
    }
    if (head == std::string_view("CCDENSE\0", 8)) {
        return IndexFile::dense;
    }
    throw FormatError("'" + path + "' is not a claimcheck index");
}

SparseIndex load_sparse(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open index '" + path + "'");
    }
    return SparseIndex::load(in);
}

std::string corpus_source_name(const Corpus& corpus) {
    std::set<Source> sources;
    for (const auto& doc : corpus.documents()) {
        sources.insert(doc.source);
    }
    if (sources.size() == 1 && *sources.begin() != Source::other) {
        return std::string(to_string(*sources.begin()));
    }
    return "corpus";
}

/// Indexes for the requested retrievers: loaded from files when given, otherwise built.
struct IndexSet {
    std::optional<SparseIndex> sparse;
    std::optional<DenseIndex> dense;
};

struct IndexFlags {
    double k1 = 1.2;
    double b = 0.75;
    std::size_t window = 256;
    std::size_t batch = 64;
    CLI::Option* k1_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* window_opt = nullptr;
    CLI::Option* batch_opt = nullptr;

    void add_to(CLI::App& app) {
        k1_opt = app.add_option("--k1", k1, "BM25 term-frequency saturation");
        b_opt = app.add_option("--b", b, "BM25 length normalization");
        window_opt = app.add_option("--window", window, "Body tokens embedded per document");
        batch_opt = app.add_option("--batch", batch, "Documents per embedding request");
    }

    Bm25Params bm25(const Config& config) const {
        return {config.pick<double>(k1_opt, k1, "/bm25/k1", 1.2),
                config.pick<double>(b_opt, b, "/bm25/b", 0.75)};
    }

    DenseBuildOptions dense(const Config& config) const {
        DenseBuildOptions options;
        options.window = config.pick<std::size_t>(window_opt, window, "/dense/window", 256);
        options.batch_size = config.pick<std::size_t>(batch_opt, batch, "/dense/batch", 64);
        return options;
    }
};

IndexSet load_indexes(const std::vector<std::string>& paths) {
    IndexSet set;
    for (const auto& path : paths) {
        if (sniff_index(path) == IndexFile::sparse) {
            set.sparse = load_sparse(path);
        } else {
            set.dense = DenseIndex::load(std::filesystem::path(path));
        }
    }
    return set;
}

std::unique_ptr<Retriever> make_retriever(RetrieverKind kind, IndexSet& indexes, const Corpus& corpus,
                                          const Scorers& scorers, const IndexFlags& flags,
                                          const Config& config, std::ostream& err) {
    if (kind == RetrieverKind::bm25) {
        if (!indexes.sparse) {
            err << "note: no sparse index given; building one in memory\n";
            indexes.sparse = SparseIndex::build(corpus, flags.bm25(config));
        }
        return std::make_unique<SparseRetriever>(*indexes.sparse);
    }
    if (!indexes.dense) {
        err << "note: no dense index given; building one in memory\n";
        indexes.dense = build_dense_index(corpus, *scorers.embedder, flags.dense(config));
    }
    return std::make_unique<DenseRetriever>(*indexes.dense, *scorers.embedder);
}

// ---------------------------------------------------------------------------
// Commands.

struct IngestArgs {
    std::string format;
    std::string input;
    std::string output;
    std::string stats;
    std::string filters = "all";
    std::string source;
    bool strict = false;
};

std::set<std::string> parse_filters(const std::string& list) {
    std::set<std::string> rules;
    if (list.empty() || list == "none") {
        return rules;
    }
    if (list == "all") {
        const auto& all = all_filter_rules();
        return {all.begin(), all.end()};
    }
    std::stringstream stream(list);
    for (std::string rule; std::getline(stream, rule, ',');) {
        if (!rule.empty()) {
            rules.insert(rule);
        }
    }
    const auto& all = all_filter_rules();
    for (const auto& rule : rules) {
        if (std::find(all.begin(), all.end(), rule) == all.end()) {
            throw UsageError("unknown filter '" + rule + "'");
        }
    }
    return rules;
}

int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err) {
    const auto rules = parse_filters(args.filters);
    std::ifstream in(args.input, std::ios::binary);
    if (!in) {
        throw Error("cannot open input '" + args.input + "'");
    }
    if (in.peek() == std::ifstream::traits_type::eof()) {
        err << "warning: '" << args.input << "' is empty; writing an empty corpus\n";
    }
    Corpus corpus;
    if (args.format == "jsonl") {
        const auto source = args.source.empty() ? Source::other : source_from_string(args.source);
        corpus = parse_jsonl(in, args.strict ? ParseMode::strict : ParseMode::lenient, source);
    } else if (args.format == "medline-xml") {
        corpus = parse_medline_xml(in);
    } else {
        corpus = parse_mediawiki_xml(in);
    }
    if (!rules.empty()) {
        corpus = apply_filters(corpus, rules);
    }
    std::ofstream output(args.output, std::ios::binary);
    write_jsonl(output, corpus);
    if (!output) {
        throw Error("cannot write '" + args.output + "'");
    }
    const auto stats = corpus.stats().to_json().dump(2) + "\n";
    if (!args.stats.empty()) {
        write_text(args.stats, stats);
    }
    out << stats;
    return kExitOk;
}

struct IndexArgs {
    std::string kind;
    std::string corpus;
    std::string output;
    std::string checkpoint;
    std::size_t parallel = 1;
    std::string config;
    GatewayFlags gateway;
    IndexFlags index;
};

int cmd_index(const IndexArgs& args, std::ostream& out) {
    Config config;
    config.load(args.config);
    const auto corpus = read_corpus(args.corpus);
    json summary = {{"kind", args.kind}, {"documents", corpus.size()}, {"output", args.output}};
    if (args.kind == "sparse") {
        const auto params = args.index.bm25(config);
        const auto index = SparseIndex::build(corpus, params);
        std::ofstream file(args.output, std::ios::binary);
        index.save(file);
        if (!file) {
            throw Error("cannot write '" + args.output + "'");
        }
        summary["bm25"] = {{"k1", params.k1}, {"b", params.b}};
        summary["terms"] = index.term_count();
    } else {
        const auto scorers = connect(args.gateway.resolve(config));
        auto options = args.index.dense(config);
        options.parallel_batches = std::max<std::size_t>(1, args.parallel);
        if (!args.checkpoint.empty()) {
            options.checkpoint = args.checkpoint;
        }
        const auto index = build_dense_index(corpus, *scorers.embedder, options);
        index.save(std::filesystem::path(args.output));
        summary["embedder_id"] = index.embedder_id();
        summary["dim"] = index.dim();
        summary["window"] = options.window;
    }
    out << summary.dump(2) << '\n';
    return kExitOk;
}

struct PipelineFlags {
    std::vector<std::string> retriever = {"bm25"};
    std::vector<std::size_t> k = {10};
    std::vector<std::size_t> j = {10};
    std::string mode = "concat";
    bool allow_any_k = false;
    CLI::Option* retriever_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* j_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
    CLI::Option* allow_opt = nullptr;
};

struct VerifyArgs {
    std::string claim;
    std::string claim_id = "claim";
    std::string snippets;
    std::string corpus;
    std::vector<std::string> index;
    std::string on_empty = "strict";
    std::string config;
    GatewayFlags gateway;
    IndexFlags index_flags;
    PipelineFlags pipeline;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    Config config;
    config.load(args.config);
    if (args.claim.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw UsageError("--claim must not be empty");
    }
    const bool allow_any = config.pick<bool>(args.pipeline.allow_opt, args.pipeline.allow_any_k,
                                             "/allow_any_k", false);
    const auto k = config.pick_list<std::size_t>(args.pipeline.k_opt, args.pipeline.k, "/k", {10});
    const auto j = config.pick_list<std::size_t>(args.pipeline.j_opt, args.pipeline.j, "/j", {10});
    if (k.size() != 1 || j.size() != 1) {
        throw UsageError("verify takes a single k and j");
    }
    check_sweep_value("k", k.front(), allow_any);
    check_sweep_value("j", j.front(), allow_any);
    const auto scorers = connect(args.gateway.resolve(config));
    const Claim claim{args.claim_id, args.claim};

    ClaimOutcome outcome;
    if (!args.snippets.empty()) {
        outcome = run_claim_with_texts(claim, FixtureSnippets(std::filesystem::path(args.snippets)).snippets(claim),
                                       *scorers.nli);
    } else {
        if (args.corpus.empty()) {
            throw UsageError("verify needs --corpus (or --snippets)");
        }
        const auto corpus = read_corpus(args.corpus);
        auto indexes = load_indexes(args.index);
        PipelineOptions options;
        options.k = k.front();
        options.j = j.front();
        options.mode = verdict_mode_from_string(
            config.pick<std::string>(args.pipeline.mode_opt, args.pipeline.mode, "/verdict_mode", "concat"));
        const auto kinds = config.pick_list<std::string>(args.pipeline.retriever_opt, args.pipeline.retriever,
                                                         "/retriever", {"bm25"});
        if (kinds.size() != 1) {
            throw UsageError("verify takes a single retriever");
        }
        const auto retriever = make_retriever(retriever_kind_from_string(kinds.front()), indexes, corpus,
                                              scorers, args.index_flags, config, err);
        outcome = run_claim(claim, *retriever, corpus, *scorers.sentence_scorer, *scorers.nli, options);
    }

    auto payload = outcome.to_json();
    if (outcome.verdict) {
        out << payload.dump(2) << '\n';
        return kExitOk;
    }
    if (args.on_empty == "strict") {
        out << payload.dump(2) << '\n';
        err << "NO_EVIDENCE: nothing was retrieved for this claim\n";
        return kExitFailure;
    }
    payload["policy_label"] = args.on_empty == "supported" ? "SUPPORTED" : "REFUTED";
    out << payload.dump(2) << '\n';
    return kExitOk;
}

struct EvaluateArgs {
    std::string dataset = "custom";
    std::vector<std::string> data;
    bool native = false;
    std::string native_corpus;
    std::string mode = "open";
    std::string corpus;
    std::vector<std::string> index;
    std::string report;
    std::string artifacts;
    std::string snippets;
    bool google = false;
    std::size_t threads = 1;
    std::string empty_policy = "refuted";
    std::string source_name;
    std::string config;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* empty_opt = nullptr;
    CLI::Option* source_opt = nullptr;
    GatewayFlags gateway;
    IndexFlags index_flags;
    PipelineFlags pipeline;
};

std::vector<ClaimRecord> read_records(const EvaluateArgs& args, Dataset dataset) {
    if (args.data.empty()) {
        throw UsageError("evaluate needs --data");
    }
    if (args.native) {
        NativeSources sources;
        for (const auto& path : args.data) {
            sources.claims.emplace_back(path);
        }
        if (!args.native_corpus.empty()) {
            sources.corpus = args.native_corpus;
        }
        return remove_nei(load_native_dataset(dataset, sources));
    }
    std::vector<ClaimRecord> records;
    std::set<std::string> ids;
    for (const auto& path : args.data) {
        for (auto& record : load_dataset(dataset, std::filesystem::path(path))) {
            if (!ids.insert(record.claim_id).second) {
                throw FormatError("duplicate claim_id '" + record.claim_id + "' across --data files");
            }
            records.push_back(std::move(record));
        }
    }
    return records;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    Config config;
    config.load(args.config);
    const auto dataset = dataset_from_string(args.dataset);
    const auto& p = args.pipeline;
    const bool allow_any = config.pick<bool>(p.allow_opt, p.allow_any_k, "/allow_any_k", false);
    const auto ks = config.pick_list<std::size_t>(p.k_opt, p.k, "/k", {10});
    const auto js = config.pick_list<std::size_t>(p.j_opt, p.j, "/j", {10});
    for (const auto k : ks) {
        check_sweep_value("k", k, allow_any);
    }
    for (const auto j : js) {
        check_sweep_value("j", j, allow_any);
    }
    std::vector<std::string> retriever_names =
        config.pick_list<std::string>(p.retriever_opt, p.retriever, "/retriever", {"bm25"});
    std::vector<RetrieverKind> retrievers;
    for (const auto& name : retriever_names) {
        retrievers.push_back(retriever_kind_from_string(name));
    }
    const auto mode = verdict_mode_from_string(
        config.pick<std::string>(p.mode_opt, p.mode, "/verdict_mode", "concat"));

    EvalOptions options;
    options.threads = std::max<std::size_t>(1, config.pick<std::size_t>(args.threads_opt, args.threads, "/threads", 1));
    options.empty_policy = empty_policy_from_string(
        config.pick<std::string>(args.empty_opt, args.empty_policy, "/empty_policy", "refuted"));
    if (!args.artifacts.empty()) {
        options.artifacts_dir = args.artifacts;
    }

    const auto records = read_records(args, dataset);
    if (records.empty()) {
        throw Error("dataset holds no SUPPORTED or REFUTED claims");
    }
    const auto scorers = connect(args.gateway.resolve(config));

    EvalReport report;
    json effective = {
        {"dataset", to_string(dataset)},
        {"data", args.data},
        {"claims", records.size()},
        {"mode", args.mode},
        {"verdict_mode", to_string(mode)},
        {"empty_policy", to_string(options.empty_policy)},
        {"scorers", scorer_ids(scorers)},
    };

    if (args.mode == "gold") {
        report = run_gold_evidence_eval(records, *scorers.nli, options);
    } else if (args.mode == "web") {
        std::unique_ptr<SnippetSource> source;
        if (!args.snippets.empty()) {
            source = std::make_unique<FixtureSnippets>(std::filesystem::path(args.snippets));
            effective["snippets"] = args.snippets;
        } else if (args.google) {
            source = std::make_unique<GoogleSearchClient>(GoogleSearchClient::from_environment());
            effective["snippets"] = "google";
        } else {
            throw UsageError("web mode needs --snippets FILE or --google");
        }
        report = run_web_eval(records, *source, *scorers.nli, options);
    } else {
        if (args.corpus.empty()) {
            throw UsageError("open mode needs --corpus");
        }
        const auto corpus = read_corpus(args.corpus);
        auto indexes = load_indexes(args.index);
        options.source_name = config.pick<std::string>(args.source_opt, args.source_name, "/source_name",
                                                       corpus_source_name(corpus));
        const auto bm25 = args.index_flags.bm25(config);
        effective["corpus"] = args.corpus;
        effective["source_name"] = options.source_name;
        effective["retrievers"] = retriever_names;
        effective["k"] = ks;
        effective["j"] = js;
        effective["bm25"] = {{"k1", bm25.k1}, {"b", bm25.b}};
        effective["dense"] = {{"window", args.index_flags.dense(config).window}};
        for (const auto kind : retrievers) {
            const auto retriever =
                make_retriever(kind, indexes, corpus, scorers, args.index_flags, config, err);
            for (const auto k : ks) {
                for (const auto j : js) {
                    options.pipeline.k = k;
                    options.pipeline.j = j;
                    options.pipeline.mode = mode;
                    report.append(run_open_domain_eval(records, *retriever, corpus, *scorers.sentence_scorer,
                                                       *scorers.nli, options));
                }
            }
        }
    }
    report.config = effective;
    if (!args.report.empty()) {
        write_text(args.report, report.to_json().dump(2) + "\n");
    }
    out << report.to_table();
    return kExitOk;
}

struct ServeInfoArgs {
    bool conformance = false;
    std::string config;
    GatewayFlags gateway;
};

int cmd_serve_info(const ServeInfoArgs& args, std::ostream& out) {
    Config config;
    config.load(args.config);
    const auto gateway = args.gateway.resolve(config);
    if (!gateway) {
        throw Error(std::string("no gateway configured: pass --gateway URL or --fallback, or set ") +
                    kGatewayEnv);
    }
    json payload;
    std::unique_ptr<GatewayServer> local;
    GatewayOptions options;
    if (*gateway == "fallback") {
        payload["gateway"] = "fallback";
        local = std::make_unique<GatewayServer>(make_fallback_scorers(), fallback_info());
        local->start();
        options.endpoint = local->endpoint();
    } else {
        payload["gateway"] = *gateway;
        options.endpoint = *gateway;
        if (const char* token = std::getenv(kGatewayTokenEnv); token != nullptr && *token != '\0') {
            options.bearer_token = token;
        }
    }
    const GatewayClient client(options);
    payload["info"] = client.get("/v1/info");
    bool ok = true;
    if (args.conformance) {
        json checks = json::array();
        for (const auto& check : run_conformance(client)) {
            checks.push_back({{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
            ok = ok && check.passed;
        }
        payload["conformance"] = checks;
    }
    out << payload.dump(2) << '\n';
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
    CLI::App app{"Open-domain claim verification: ingest, index, verify, evaluate", "claimcheck"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Convert a corpus dump to canonical JSONL");
    ingest_cmd->add_option("--format", ingest.format, "Input format")
        ->required()
        ->check(CLI::IsMember({"jsonl", "medline-xml", "mediawiki-xml"}));
    ingest_cmd->add_option("--input", ingest.input, "Input file")->required();
    ingest_cmd->add_option("--output", ingest.output, "Canonical JSONL output")->required();
    ingest_cmd->add_option("--stats", ingest.stats, "Also write ingest statistics here");
    ingest_cmd->add_option("--filters", ingest.filters,
                           "Comma list of no_abstract,non_english,unfinished_abstract; 'all' or 'none'");
    ingest_cmd->add_option("--source", ingest.source, "Source tag for JSONL documents without one")
        ->check(CLI::IsMember({"pubmed", "wikipedia", "other"}));
    ingest_cmd->add_flag("--strict", ingest.strict, "Fail on the first malformed JSONL line");

    IndexArgs index;
    auto* index_cmd = app.add_subcommand("index", "Build a sparse or dense index over a corpus");
    index_cmd->add_option("--kind", index.kind, "Index kind")
        ->required()
        ->check(CLI::IsMember({"sparse", "dense"}));
    index_cmd->add_option("--corpus", index.corpus, "Canonical JSONL corpus")->required();
    index_cmd->add_option("--output", index.output, "Index file")->required();
    index_cmd->add_option("--checkpoint", index.checkpoint, "Dense build checkpoint for resuming");
    index_cmd->add_option("--parallel", index.parallel, "Embedding batches in flight");
    index_cmd->add_option("--config", index.config, "JSON config file");
    index.gateway.add_to(*index_cmd);
    index.index.add_to(*index_cmd);

    const auto add_pipeline = [](CLI::App& cmd, PipelineFlags& flags) {
        flags.retriever_opt = cmd.add_option("--retriever", flags.retriever, "bm25, dense or both")->delimiter(',');
        flags.k_opt = cmd.add_option("--k", flags.k, "Documents retrieved")->delimiter(',');
        flags.j_opt = cmd.add_option("--j", flags.j, "Evidence sentences kept")->delimiter(',');
        flags.mode_opt = cmd.add_option("--verdict", flags.mode, "concat or majority")
                             ->check(CLI::IsMember({"concat", "majority"}));
        flags.allow_opt = cmd.add_flag("--allow-any-k", flags.allow_any_k, "Accept k, j outside {1,3,5,10,20}");
    };

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Verify one claim");
    verify_cmd->add_option("--claim", verify.claim, "Claim text")->required();
    verify_cmd->add_option("--claim-id", verify.claim_id, "Claim id used in the output");
    verify_cmd->add_option("--snippets", verify.snippets, "JSON snippets file; skips retrieval");
    verify_cmd->add_option("--corpus", verify.corpus, "Canonical JSONL corpus");
    verify_cmd->add_option("--index", verify.index, "Index file(s); built in memory when absent");
    verify_cmd->add_option("--on-empty", verify.on_empty, "strict (exit 1), refuted or supported")
        ->check(CLI::IsMember({"strict", "refuted", "supported"}));
    verify_cmd->add_option("--config", verify.config, "JSON config file");
    verify.gateway.add_to(*verify_cmd);
    verify.index_flags.add_to(*verify_cmd);
    add_pipeline(*verify_cmd, verify.pipeline);

    EvaluateArgs evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a dataset and write a report");
    eval_cmd->add_option("--dataset", evaluate.dataset, "scifact, pubmedqa, healthfc, covert or custom")
        ->check(CLI::IsMember({"scifact", "pubmedqa", "healthfc", "covert", "custom"}));
    eval_cmd->add_option("--data", evaluate.data, "Dataset file(s)");
    eval_cmd->add_flag("--native", evaluate.native, "Read the dataset's own release format");
    eval_cmd->add_option("--native-corpus", evaluate.native_corpus, "SciFact corpus.jsonl for gold evidence");
    eval_cmd->add_option("--mode", evaluate.mode, "gold, open or web")
        ->check(CLI::IsMember({"gold", "open", "web"}));
    eval_cmd->add_option("--corpus", evaluate.corpus, "Canonical JSONL corpus (open mode)");
    eval_cmd->add_option("--index", evaluate.index, "Index file(s); built in memory when absent");
    eval_cmd->add_option("--report", evaluate.report, "Write the JSON report here");
    eval_cmd->add_option("--artifacts", evaluate.artifacts, "Per-claim artifact directory");
    eval_cmd->add_option("--snippets", evaluate.snippets, "Snippets file (web mode)");
    eval_cmd->add_flag("--google", evaluate.google, "Live Custom Search (web mode)");
    evaluate.threads_opt = eval_cmd->add_option("--threads", evaluate.threads, "Claims evaluated in parallel");
    evaluate.empty_opt = eval_cmd->add_option("--empty-policy", evaluate.empty_policy,
                                              "Label counted for claims without evidence")
                             ->check(CLI::IsMember({"refuted", "supported"}));
    evaluate.source_opt = eval_cmd->add_option("--source-name", evaluate.source_name, "Source column label");
    eval_cmd->add_option("--config", evaluate.config, "JSON config file");
    evaluate.gateway.add_to(*eval_cmd);
    evaluate.index_flags.add_to(*eval_cmd);
    add_pipeline(*eval_cmd, evaluate.pipeline);

    ServeInfoArgs serve;
    auto* serve_cmd = app.add_subcommand("serve-info", "Show gateway info, optionally run the conformance suite");
    serve_cmd->add_flag("--conformance", serve.conformance, "Run the protocol conformance suite");
    serve_cmd->add_option("--config", serve.config, "JSON config file");
    serve.gateway.add_to(*serve_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest_cmd) {
            return cmd_ingest(ingest, out, err);
        }
        if (*index_cmd) {
            return cmd_index(index, out);
        }
        if (*verify_cmd) {
            return cmd_verify(verify, out, err);
        }
        if (*eval_cmd) {
            return cmd_evaluate(evaluate, out, err);
        }
        return cmd_serve_info(serve, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace claimcheck::cli
