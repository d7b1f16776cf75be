// Native release formats of the four datasets, mapped onto ClaimRecord.

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "claimcheck/errors.hpp"
#include "claimcheck/eval.hpp"

namespace claimcheck {

namespace {

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    return in;
}

template <typename Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
    auto in = open(path);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what(), number);
        }
        fn(value, number);
    }
}

std::string id_string(const nlohmann::json& value) {
    return value.is_string() ? value.get<std::string>() : value.dump();
}

std::string string_field(const nlohmann::json& object, std::initializer_list<const char*> names) {
    for (const char* name : names) {
        const auto it = object.find(name);
        if (it != object.end() && it->is_string()) {
            return it->get<std::string>();
        }
    }
    return {};
}

void collect_texts(const nlohmann::json& value, std::vector<std::string>& out) {
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        if (!text.empty() && text.rfind("http", 0) != 0) {
            out.push_back(text);
        }
    } else if (value.is_array()) {
        for (const auto& item : value) {
            collect_texts(item, out);
        }
    } else if (value.is_object()) {
        const auto text = string_field(value, {"text", "sentence", "snippet"});
        if (!text.empty()) {
            out.push_back(text);
        }
    }
}

std::vector<ClaimRecord> load_scifact(const NativeSources& sources) {
    std::map<std::string, std::vector<std::string>> abstracts;
    if (sources.corpus) {
        for_each_json_line(*sources.corpus, [&](const nlohmann::json& doc, std::size_t) {
            std::vector<std::string> sentences;
            for (const auto& s : doc.value("abstract", nlohmann::json::array())) {
                sentences.push_back(s.get<std::string>());
            }
            abstracts[id_string(doc.at("doc_id"))] = std::move(sentences);
        });
    }
    std::vector<ClaimRecord> records;
    std::set<std::string> seen;
    for (const auto& path : sources.claims) {
        for_each_json_line(path, [&](const nlohmann::json& row, std::size_t number) {
            ClaimRecord record;
            record.dataset = Dataset::scifact;
            record.claim_id = id_string(row.at("id"));
            record.text = string_field(row, {"claim"});
            if (record.text.empty()) {
                throw ParseError(path.string() + ":" + std::to_string(number) + ": claim without text",
                                 number);
            }
            const auto evidence = row.value("evidence", nlohmann::json::object());
            if (evidence.empty()) {
                record.gold_label = GoldLabel::nei;
            } else {
                // Labels agree across rationales in the release; the first one decides.
                const auto& first = evidence.begin().value();
                record.gold_label = parse_gold_label(Dataset::scifact,
                                                     first.at(0).at("label").get<std::string>(),
                                                     record.claim_id);
                std::vector<std::string> texts;
                for (const auto& [doc_id, rationales] : evidence.items()) {
                    record.relevant_doc_ids.push_back(doc_id);
                    const auto it = abstracts.find(doc_id);
                    if (it == abstracts.end()) {
                        continue;
                    }
                    std::set<std::size_t> indices;
                    for (const auto& rationale : rationales) {
                        for (const auto& s : rationale.at("sentences")) {
                            indices.insert(s.get<std::size_t>());
                        }
                    }
                    for (const auto i : indices) {
                        if (i < it->second.size()) {
                            texts.push_back(it->second[i]);
                        }
                    }
                }
                if (!texts.empty()) {
                    record.gold_evidence = std::move(texts);
                }
            }
            if (!seen.insert(record.claim_id).second) {
                throw FormatError("duplicate SciFact claim id '" + record.claim_id + "'");
            }
            records.push_back(std::move(record));
        });
    }
    return records;
}

std::vector<ClaimRecord> load_pubmedqa(const NativeSources& sources) {
    std::vector<ClaimRecord> records;
    for (const auto& path : sources.claims) {
        auto in = open(path);
        nlohmann::json document;
        try {
            document = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
        for (const auto& [pmid, entry] : document.items()) {
            ClaimRecord record;
            record.dataset = Dataset::pubmedqa;
            record.claim_id = pmid;
            record.text = string_field(entry, {"QUESTION", "question"});
            if (record.text.empty()) {
                throw FormatError("PubMedQA entry '" + pmid + "' has no QUESTION");
            }
            record.gold_label = parse_gold_label(
                Dataset::pubmedqa, string_field(entry, {"final_decision"}), record.claim_id);
            std::vector<std::string> contexts;
            collect_texts(entry.value("CONTEXTS", nlohmann::json::array()), contexts);
            if (!contexts.empty()) {
                record.gold_evidence = std::move(contexts);
            }
            record.relevant_doc_ids.push_back(pmid);
            records.push_back(std::move(record));
        }
    }
    return records;
}

/// RFC 4180: comma separated, double-quoted fields may hold commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    char c;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in.peek() == '\n') {
                in.get();
            }
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw FormatError("unterminated quoted CSV field");
    }
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ClaimRecord> load_healthfc(const NativeSources& sources) {
    std::vector<ClaimRecord> records;
    for (const auto& path : sources.claims) {
        auto in = open(path);
        const auto rows = parse_csv(in);
        if (rows.empty()) {
            continue;
        }
        const auto& header = rows.front();
        const auto column = [&](std::initializer_list<const char*> names) -> std::optional<std::size_t> {
            for (const char* name : names) {
                for (std::size_t i = 0; i < header.size(); ++i) {
                    if (header[i] == name) {
                        return i;
                    }
                }
            }
            return std::nullopt;
        };
        const auto claim_col = column({"en_claim", "claim"});
        const auto label_col = column({"label", "verdict"});
        if (!claim_col || !label_col) {
            throw FormatError(path.string() + ": HealthFC CSV needs en_claim and label columns");
        }
        const auto id_col = column({"claim_id", "id"});
        const auto evidence_col = column({"en_explanation", "explanation"});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() == 1 && row[0].empty()) {
                continue;
            }
            const auto cell = [&](std::optional<std::size_t> col) {
                return col && *col < row.size() ? row[*col] : std::string();
            };
            ClaimRecord record;
            record.dataset = Dataset::healthfc;
            record.claim_id = id_col ? cell(id_col) : std::to_string(r - 1);
            record.text = cell(claim_col);
            if (record.text.empty()) {
                throw FormatError(path.string() + ": row " + std::to_string(r) + " has no claim");
            }
            record.gold_label = parse_gold_label(Dataset::healthfc, cell(label_col), record.claim_id);
            if (const auto explanation = cell(evidence_col); !explanation.empty()) {
                record.gold_evidence = std::vector<std::string>{explanation};
            }
            records.push_back(std::move(record));
        }
    }
    return records;
}

std::vector<ClaimRecord> load_covert(const NativeSources& sources) {
    std::vector<ClaimRecord> records;
    for (const auto& path : sources.claims) {
        for_each_json_line(path, [&](const nlohmann::json& row, std::size_t number) {
            ClaimRecord record;
            record.dataset = Dataset::covert;
            const auto id = row.find("id");
            record.claim_id = id != row.end() ? id_string(*id) : std::to_string(number);
            record.text = string_field(row, {"claim", "text"});
            if (record.text.empty()) {
                throw ParseError(path.string() + ":" + std::to_string(number) + ": claim without text",
                                 number);
            }
            record.gold_label =
                parse_gold_label(Dataset::covert, string_field(row, {"label"}), record.claim_id);
            std::vector<std::string> texts;
            collect_texts(row.value("evidence", nlohmann::json::array()), texts);
            if (!texts.empty()) {
                record.gold_evidence = std::move(texts);
            }
            records.push_back(std::move(record));
        });
    }
    return records;
}

} // namespace

std::vector<ClaimRecord> load_native_dataset(Dataset dataset, const NativeSources& sources) {
    if (sources.claims.empty()) {
        throw ConfigError("no dataset files given");
    }
    try {
        switch (dataset) {
        case Dataset::scifact: return load_scifact(sources);
        case Dataset::pubmedqa: return load_pubmedqa(sources);
        case Dataset::healthfc: return load_healthfc(sources);
        case Dataset::covert: return load_covert(sources);
        case Dataset::custom: break;
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string(to_string(dataset)) + " release: " + e.what());
    }
    throw ConfigError("the custom dataset has no native format; use canonical JSONL");
}

} // namespace claimcheck
