#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace claimcheck {

enum class Source { pubmed, wikipedia, other };

std::string_view to_string(Source source);
Source source_from_string(std::string_view name);

struct Document {
    std::string doc_id;
    std::string title;
    std::string body;
    std::optional<std::string> language; // ISO-639-1
    Source source = Source::other;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Counts carried along with a corpus. `raw` is fixed at ingest time; each drop
/// is attributed to exactly one reason, so raw == kept + sum(dropped).
struct CorpusStats {
    std::size_t raw = 0;
    std::size_t kept = 0;
    std::map<std::string, std::size_t> dropped;

    std::size_t total_dropped() const;
    nlohmann::json to_json() const;

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// An ordered, id-unique document collection. Immutable once built; safe for concurrent reads.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(Source source) : source_(source) {}

    /// Appends a document and counts it as kept. Throws DuplicateDocumentError.
    void add(Document doc);

    /// Records an input unit that was rejected before becoming a document.
    void count_dropped(const std::string& reason);

    const std::vector<Document>& documents() const { return documents_; }
    const CorpusStats& stats() const { return stats_; }
    Source source() const { return source_; }
    std::size_t size() const { return documents_.size(); }
    bool empty() const { return documents_.empty(); }

    /// nullptr when absent.
    const Document* find(std::string_view doc_id) const;

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.source_ == b.source_ && a.documents_ == b.documents_ && a.stats_ == b.stats_;
    }

private:
    friend Corpus apply_filters(const Corpus&, const std::set<std::string>&);

    Source source_ = Source::other;
    std::vector<Document> documents_;
    std::unordered_map<std::string, std::size_t> positions_;
    CorpusStats stats_;
};

struct Sentence {
    std::string doc_id;
    std::size_t index = 0;
    std::string text;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class ParseMode { lenient, strict };

// Drop-reason keys used in CorpusStats::dropped.
inline constexpr std::string_view kDropMalformed = "malformed";
inline constexpr std::string_view kDropEmptyBody = "empty_body";
inline constexpr std::string_view kDropMissingPmid = "missing_pmid";

// Filter rule names.
inline constexpr std::string_view kRuleNoAbstract = "no_abstract";
inline constexpr std::string_view kRuleNonEnglish = "non_english";
inline constexpr std::string_view kRuleUnfinished = "unfinished_abstract";

/// All filter rules in their canonical evaluation order.
const std::vector<std::string>& all_filter_rules();

/// Reads canonical JSONL (one Document object per line). Blank lines are ignored.
/// Malformed lines are counted under "malformed" in lenient mode; strict mode
/// throws ParseError with the 1-based line number. Duplicate ids always throw.
Corpus parse_jsonl(std::istream& in, ParseMode mode = ParseMode::lenient,
                   Source default_source = Source::other);

void write_jsonl(std::ostream& out, const Corpus& corpus);
nlohmann::json document_to_json(const Document& doc);

/// Imports a MediaWiki XML export. Only main-namespace, non-redirect pages become
/// documents; pages whose stripped text is empty are counted under "empty_body".
Corpus parse_mediawiki_xml(std::istream& in);

/// Imports MEDLINE citation XML (PubmedArticleSet or MedlineCitationSet).
/// Body is the space-joined AbstractText sections; language is mapped to ISO-639-1.
Corpus parse_medline_xml(std::istream& in);

/// Reduces wikitext markup to visible plaintext.
std::string strip_wikitext(std::string_view wikitext);

/// Removes documents failing any enabled rule. Drops are attributed to the first
/// failing rule in canonical order, so the result does not depend on rule order.
/// Idempotent. Throws ConfigError on an unknown rule name.
Corpus apply_filters(const Corpus& corpus, const std::set<std::string>& rules);

/// Language metadata when present, otherwise the stopword-ratio heuristic.
bool is_english(const Document& doc);
bool looks_unfinished(std::string_view body);

/// Abbreviation-aware sentence splitting. Each sentence is a trimmed, contiguous
/// substring of the body. Empty body gives an empty list.
std::vector<Sentence> segment_sentences(const Document& doc);

} // namespace claimcheck
