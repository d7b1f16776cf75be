#include "claimcheck/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <ostream>

#include "claimcheck/errors.hpp"
#include "claimcheck/tokenizer.hpp"

namespace claimcheck {

namespace {

// Fixed 50-word English stopword list for the language heuristic.
constexpr std::array<std::string_view, 50> kEnglishStopwords = {
    "a",    "all",   "an",    "and",  "are",  "as",   "at",    "be",    "been", "but",
    "by",   "can",   "for",   "from", "had",  "has",  "have",  "he",    "her",  "his",
    "i",    "if",    "in",    "is",   "it",   "more", "no",    "not",   "of",   "on",
    "one",  "or",    "so",    "that", "the",  "their", "there", "they", "this", "to",
    "was",  "we",    "were",  "when", "which", "who",  "will",  "with", "would", "you",
};

constexpr double kEnglishStopwordRatio = 0.03;

std::string required_string(const nlohmann::json& object, const char* key) {
    const auto it = object.find(key);
    if (it == object.end() || !it->is_string()) {
        throw FormatError(std::string("missing or non-string key '") + key + "'");
    }
    return it->get<std::string>();
}

Document document_from_json(const nlohmann::json& object, Source default_source) {
    if (!object.is_object()) {
        throw FormatError("line is not a JSON object");
    }
    Document doc;
    doc.doc_id = required_string(object, "doc_id");
    if (doc.doc_id.empty()) {
        throw FormatError("empty doc_id");
    }
    doc.title = required_string(object, "title");
    doc.body = required_string(object, "body");
    doc.source = default_source;
    if (const auto it = object.find("language"); it != object.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw FormatError("non-string language");
        }
        doc.language = it->get<std::string>();
    }
    if (const auto it = object.find("source"); it != object.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw FormatError("non-string source");
        }
        doc.source = source_from_string(it->get<std::string>());
    }
    return doc;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

bool fails_rule(std::string_view rule, const Document& doc) {
    if (rule == kRuleNoAbstract) {
        return is_blank(doc.body);
    }
    if (rule == kRuleNonEnglish) {
        return !is_english(doc);
    }
    return looks_unfinished(doc.body);
}

} // namespace

std::string_view to_string(Source source) {
    switch (source) {
    case Source::pubmed:
        return "pubmed";
    case Source::wikipedia:
        return "wikipedia";
    case Source::other:
        break;
    }
    return "other";
}

Source source_from_string(std::string_view name) {
    if (name == "pubmed") {
        return Source::pubmed;
    }
    if (name == "wikipedia") {
        return Source::wikipedia;
    }
    if (name == "other") {
        return Source::other;
    }
    throw FormatError("unknown source '" + std::string(name) + "'");
}

std::size_t CorpusStats::total_dropped() const {
    std::size_t total = 0;
    for (const auto& [reason, count] : dropped) {
        total += count;
    }
    return total;
}

nlohmann::json CorpusStats::to_json() const {
    nlohmann::json drops = nlohmann::json::object();
    for (const auto& [reason, count] : dropped) {
        drops[reason] = count;
    }
    return {{"raw", raw}, {"kept", kept}, {"dropped", drops}};
}

void Corpus::add(Document doc) {
    if (doc.doc_id.empty()) {
        throw FormatError("document with empty doc_id");
    }
    if (positions_.count(doc.doc_id) != 0) {
        throw DuplicateDocumentError("duplicate doc_id '" + doc.doc_id + "'");
    }
    positions_.emplace(doc.doc_id, documents_.size());
    documents_.push_back(std::move(doc));
    ++stats_.raw;
    ++stats_.kept;
}

void Corpus::count_dropped(const std::string& reason) {
    ++stats_.raw;
    ++stats_.dropped[reason];
}

const Document* Corpus::find(std::string_view doc_id) const {
    const auto it = positions_.find(std::string(doc_id));
    return it == positions_.end() ? nullptr : &documents_[it->second];
}

const std::vector<std::string>& all_filter_rules() {
    static const std::vector<std::string> rules = {
        std::string(kRuleNoAbstract), std::string(kRuleNonEnglish), std::string(kRuleUnfinished)};
    return rules;
}

Corpus parse_jsonl(std::istream& in, ParseMode mode, Source default_source) {
    Corpus corpus(default_source);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_blank(line)) {
            continue;
        }
        Document doc;
        try {
            doc = document_from_json(nlohmann::json::parse(line), default_source);
        } catch (const std::exception& e) {
            if (mode == ParseMode::strict) {
                throw ParseError("line " + std::to_string(line_number) + ": " + e.what(),
                                 line_number);
            }
            corpus.count_dropped(std::string(kDropMalformed));
            continue;
        }
        corpus.add(std::move(doc));
    }
    return corpus;
}

nlohmann::json document_to_json(const Document& doc) {
    nlohmann::json object = {
        {"doc_id", doc.doc_id},
        {"title", doc.title},
        {"body", doc.body},
        {"source", to_string(doc.source)},
    };
    if (doc.language) {
        object["language"] = *doc.language;
    }
    return object;
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& doc : corpus.documents()) {
        out << document_to_json(doc).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
            << '\n';
    }
}

bool is_english(const Document& doc) {
    if (doc.language) {
        return *doc.language == "en";
    }
    const auto terms = tokenize(doc.body);
    if (terms.empty()) {
        return true;
    }
    const auto hits = std::count_if(terms.begin(), terms.end(), [](const Term& t) {
        return std::find(kEnglishStopwords.begin(), kEnglishStopwords.end(), t) !=
               kEnglishStopwords.end();
    });
    return static_cast<double>(hits) >= kEnglishStopwordRatio * static_cast<double>(terms.size());
}

bool looks_unfinished(std::string_view body) {
    const auto last = body.find_last_not_of(" \t\r\n\f\v");
    if (last == std::string_view::npos) {
        return false;
    }
    constexpr std::string_view terminals = ".!?\")]";
    return terminals.find(body[last]) == std::string_view::npos;
}

Corpus apply_filters(const Corpus& corpus, const std::set<std::string>& rules) {
    for (const auto& rule : rules) {
        const auto& known = all_filter_rules();
        if (std::find(known.begin(), known.end(), rule) == known.end()) {
            throw ConfigError("unknown filter rule '" + rule + "'");
        }
    }
    Corpus out(corpus.source());
    out.stats_ = corpus.stats();
    out.stats_.kept = 0;
    for (const auto& doc : corpus.documents()) {
        const std::string* failed = nullptr;
        for (const auto& rule : all_filter_rules()) {
            if (rules.count(rule) != 0 && fails_rule(rule, doc)) {
                failed = &rule;
                break;
            }
        }
        if (failed != nullptr) {
            ++out.stats_.dropped[*failed];
            continue;
        }
        out.positions_.emplace(doc.doc_id, out.documents_.size());
        out.documents_.push_back(doc);
        ++out.stats_.kept;
    }
    return out;
}

} // namespace claimcheck
