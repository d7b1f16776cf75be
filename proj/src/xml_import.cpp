// Streaming importers for MediaWiki exports and MEDLINE citation XML.

#include <array>
#include <cctype>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <expat.h>

#include "claimcheck/corpus.hpp"
#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending = false;
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending) {
            out.push_back(' ');
            pending = false;
        }
        out.push_back(c);
    }
    return out;
}

/// SAX driver: subclasses see element paths and accumulated character data.
class SaxReader {
public:
    SaxReader() : parser_(XML_ParserCreate("UTF-8"), &XML_ParserFree) {
        XML_SetUserData(parser_.get(), this);
        XML_SetElementHandler(parser_.get(), &SaxReader::on_start, &SaxReader::on_end);
        XML_SetCharacterDataHandler(parser_.get(), &SaxReader::on_text);
    }
    virtual ~SaxReader() = default;

    SaxReader(const SaxReader&) = delete;
    SaxReader& operator=(const SaxReader&) = delete;

    void run(std::istream& in) {
        std::array<char, 1 << 16> buffer{};
        bool any_input = false;
        for (;;) {
            in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
            const auto got = static_cast<int>(in.gcount());
            const bool last = got == 0 || !in;
            any_input = any_input || got > 0;
            if (!any_input && last) {
                return; // empty stream: no documents
            }
            if (XML_Parse(parser_.get(), buffer.data(), got, last ? 1 : 0) == XML_STATUS_ERROR) {
                fail();
            }
            if (last) {
                return;
            }
        }
    }

protected:
    virtual void start(const std::string& name, const char** attributes) = 0;
    virtual void end(const std::string& name, std::string text) = 0;

    /// Whether character data (including that of child elements) is collected for `element`.
    virtual bool captures(const std::string& element) const = 0;

    const std::vector<std::string>& path() const { return path_; }

    bool parent_is(std::string_view name) const {
        return path_.size() >= 2 && path_[path_.size() - 2] == name;
    }

    bool inside(std::string_view name) const {
        for (const auto& element : path_) {
            if (element == name) {
                return true;
            }
        }
        return false;
    }

private:
    [[noreturn]] void fail() {
        const auto offset = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser_.get()));
        const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_.get()));
        throw ParseError("malformed XML at line " + std::to_string(line) + ", offset " + std::to_string(offset) + ": " +
                             XML_ErrorString(XML_GetErrorCode(parser_.get())),
                         line, offset);
    }

    static void on_start(void* self, const XML_Char* name, const XML_Char** attributes) {
        auto& reader = *static_cast<SaxReader*>(self);
        reader.path_.emplace_back(name);
        reader.texts_.emplace_back();
        reader.start(reader.path_.back(), attributes);
    }

    static void on_end(void* self, const XML_Char* name) {
        auto& reader = *static_cast<SaxReader*>(self);
        std::string text = std::move(reader.texts_.back());
        reader.texts_.pop_back();
        reader.end(name, std::move(text));
        reader.path_.pop_back();
    }

    static void on_text(void* self, const XML_Char* data, int length) {
        auto& reader = *static_cast<SaxReader*>(self);
        // Text under inline markup (<i>, <sup>) also belongs to the enclosing captured element.
        for (std::size_t i = 0; i < reader.path_.size(); ++i) {
            if (reader.captures(reader.path_[i])) {
                reader.texts_[i].append(data, static_cast<std::size_t>(length));
            }
        }
    }

    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser_;
    std::vector<std::string> path_;
    std::vector<std::string> texts_;
};

const char* find_attribute(const char** attributes, std::string_view key) {
    for (auto** it = attributes; it != nullptr && *it != nullptr; it += 2) {
        if (key == it[0]) {
            return it[1];
        }
    }
    return nullptr;
}

bool starts_with_redirect(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return false;
    }
    constexpr std::string_view marker = "#redirect";
    if (text.size() - first < marker.size()) {
        return false;
    }
    for (std::size_t i = 0; i < marker.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[first + i])) != marker[i]) {
            return false;
        }
    }
    return true;
}

class MediaWikiReader final : public SaxReader {
public:
    Corpus corpus{Source::wikipedia};

protected:
    void start(const std::string& name, const char** attributes) override {
        if (name == "mediawiki") {
            if (const char* lang = find_attribute(attributes, "xml:lang")) {
                language_ = lang;
            }
        } else if (name == "page") {
            page_ = Page{};
        } else if (name == "redirect" && parent_is("page")) {
            page_.redirect = true;
        }
    }

    void end(const std::string& name, std::string text) override {
        if (!inside("page")) {
            return;
        }
        if (name == "title" && parent_is("page")) {
            page_.title = collapse_whitespace(text);
        } else if (name == "ns" && parent_is("page")) {
            page_.ns = collapse_whitespace(text);
        } else if (name == "id" && parent_is("page")) {
            page_.id = collapse_whitespace(text);
        } else if (name == "text" && parent_is("revision")) {
            page_.text = std::move(text);
        } else if (name == "page") {
            finish_page();
        }
    }

    bool captures(const std::string& element) const override {
        return element == "title" || element == "ns" || element == "id" || element == "text";
    }

private:
    struct Page {
        std::string title;
        std::string ns;
        std::string id;
        std::string text;
        bool redirect = false;
    };

    void finish_page() {
        if ((!page_.ns.empty() && page_.ns != "0") || page_.redirect ||
            starts_with_redirect(page_.text)) {
            return;
        }
        if (page_.id.empty()) {
            corpus.count_dropped(std::string(kDropMalformed));
            return;
        }
        Document doc;
        doc.doc_id = page_.id;
        doc.title = page_.title;
        doc.body = strip_wikitext(page_.text);
        doc.source = Source::wikipedia;
        if (!language_.empty()) {
            doc.language = language_;
        }
        if (doc.body.empty()) {
            corpus.count_dropped(std::string(kDropEmptyBody));
            return;
        }
        corpus.add(std::move(doc));
    }

    std::string language_;
    Page page_;
};

std::string iso639_1(std::string_view medline_code) {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"eng", "en"}, {"ger", "de"}, {"deu", "de"}, {"fre", "fr"}, {"fra", "fr"},
        {"spa", "es"}, {"ita", "it"}, {"jpn", "ja"}, {"rus", "ru"}, {"chi", "zh"},
        {"zho", "zh"}, {"por", "pt"}, {"dut", "nl"}, {"nld", "nl"}, {"pol", "pl"},
        {"cze", "cs"}, {"ces", "cs"}, {"swe", "sv"}, {"dan", "da"}, {"nor", "no"},
        {"fin", "fi"}, {"hun", "hu"}, {"kor", "ko"}, {"tur", "tr"}, {"heb", "he"},
        {"gre", "el"}, {"ell", "el"}, {"ara", "ar"}, {"per", "fa"}, {"fas", "fa"},
        {"ukr", "uk"}, {"rum", "ro"}, {"ron", "ro"}, {"hrv", "hr"}, {"srp", "sr"},
        {"slv", "sl"}, {"slo", "sk"}, {"slk", "sk"}, {"bul", "bg"}, {"lit", "lt"},
    };
    std::string code;
    for (const char c : medline_code) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            code.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (const auto it = table.find(code); it != table.end()) {
        return it->second;
    }
    return code;
}

class MedlineReader final : public SaxReader {
public:
    Corpus corpus{Source::pubmed};

protected:
    void start(const std::string& name, const char**) override {
        if (name == "MedlineCitation") {
            citation_ = Citation{};
        }
    }

    void end(const std::string& name, std::string text) override {
        if (!inside("MedlineCitation")) {
            return;
        }
        if (name == "PMID" && parent_is("MedlineCitation")) {
            citation_.pmid = collapse_whitespace(text);
        } else if (name == "ArticleTitle" && parent_is("Article")) {
            citation_.title = collapse_whitespace(text);
        } else if (name == "AbstractText" && parent_is("Abstract") && in_article_abstract()) {
            auto section = collapse_whitespace(text);
            if (!section.empty()) {
                citation_.sections.push_back(std::move(section));
            }
        } else if (name == "Language" && parent_is("Article") && citation_.language.empty()) {
            citation_.language = iso639_1(text);
        } else if (name == "MedlineCitation") {
            finish_citation();
        }
    }

    bool captures(const std::string& element) const override {
        return element == "PMID" || element == "ArticleTitle" || element == "AbstractText" ||
               element == "Language";
    }

private:
    struct Citation {
        std::string pmid;
        std::string title;
        std::vector<std::string> sections;
        std::string language;
    };

    bool in_article_abstract() const {
        const auto& p = path();
        return p.size() >= 3 && p[p.size() - 3] == "Article";
    }

    void finish_citation() {
        if (citation_.pmid.empty()) {
            corpus.count_dropped(std::string(kDropMissingPmid));
            return;
        }
        Document doc;
        doc.doc_id = citation_.pmid;
        doc.title = citation_.title;
        for (const auto& section : citation_.sections) {
            if (!doc.body.empty()) {
                doc.body.push_back(' ');
            }
            doc.body += section;
        }
        if (!citation_.language.empty() && citation_.language != "und") {
            doc.language = citation_.language;
        }
        doc.source = Source::pubmed;
        corpus.add(std::move(doc));
    }

    Citation citation_;
};

} // namespace

Corpus parse_mediawiki_xml(std::istream& in) {
    MediaWikiReader reader;
    reader.run(in);
    return std::move(reader.corpus);
}

Corpus parse_medline_xml(std::istream& in) {
    MedlineReader reader;
    reader.run(in);
    return std::move(reader.corpus);
}

} // namespace claimcheck
