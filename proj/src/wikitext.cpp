#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

namespace {

bool starts_with_ci(std::string_view text, std::string_view prefix) {
    if (text.size() < prefix.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

std::size_t find_ci(std::string_view text, std::string_view needle, std::size_t from) {
    for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
        if (starts_with_ci(text.substr(i), needle)) {
            return i;
        }
    }
    return std::string_view::npos;
}

// Removes open...close spans, innermost first, until none remain.
std::string remove_innermost(std::string text, std::string_view open, std::string_view close) {
    for (;;) {
        const auto end = text.find(close);
        if (end == std::string::npos) {
            return text;
        }
        const auto begin = text.rfind(open, end);
        if (begin == std::string::npos) {
            // Stray closer; drop it so the loop makes progress.
            text.erase(end, close.size());
            continue;
        }
        text.erase(begin, end + close.size() - begin);
    }
}

std::string remove_comments(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        const auto begin = text.find("<!--", pos);
        if (begin == std::string_view::npos) {
            out.append(text.substr(pos));
            return out;
        }
        out.append(text.substr(pos, begin - pos));
        const auto end = text.find("-->", begin + 4);
        if (end == std::string_view::npos) {
            return out;
        }
        pos = end + 3;
    }
}

std::string remove_refs(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        const auto begin = find_ci(text, "<ref", pos);
        if (begin == std::string_view::npos) {
            out.append(text.substr(pos));
            return out;
        }
        const char after = begin + 4 < text.size() ? text[begin + 4] : '\0';
        if (after != '>' && after != ' ' && after != '/' && after != '\t' && after != '\n') {
            // e.g. <references/>; leave for the generic tag pass.
            out.append(text.substr(pos, begin + 4 - pos));
            pos = begin + 4;
            continue;
        }
        out.append(text.substr(pos, begin - pos));
        const auto tag_end = text.find('>', begin);
        if (tag_end == std::string_view::npos) {
            return out;
        }
        if (text[tag_end - 1] == '/') {
            pos = tag_end + 1;
            continue;
        }
        const auto close = find_ci(text, "</ref>", tag_end);
        if (close == std::string_view::npos) {
            return out;
        }
        pos = close + 6;
    }
}

bool is_dropped_link_target(std::string_view inner) {
    const auto trimmed = inner.substr(std::min(inner.find_first_not_of(" :"), inner.size()));
    return starts_with_ci(trimmed, "file:") || starts_with_ci(trimmed, "image:") ||
           starts_with_ci(trimmed, "category:");
}

std::string rewrite_internal_links(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto begin = text.find("[[", pos);
        if (begin == std::string_view::npos) {
            break;
        }
        // Matching ]] with nesting (file captions can contain links).
        std::size_t depth = 0;
        std::size_t i = begin;
        std::size_t end = std::string_view::npos;
        while (i + 1 < text.size()) {
            if (text.compare(i, 2, "[[") == 0) {
                ++depth;
                i += 2;
            } else if (text.compare(i, 2, "]]") == 0) {
                if (--depth == 0) {
                    end = i;
                    break;
                }
                i += 2;
            } else {
                ++i;
            }
        }
        if (end == std::string_view::npos) {
            break;
        }
        out.append(text.substr(pos, begin - pos));
        const auto inner = text.substr(begin + 2, end - begin - 2);
        if (!is_dropped_link_target(inner)) {
            const auto bar = inner.rfind('|');
            out.append(rewrite_internal_links(bar == std::string_view::npos ? inner
                                                                            : inner.substr(bar + 1)));
        }
        pos = end + 2;
    }
    out.append(text.substr(pos));
    return out;
}

std::string rewrite_external_links(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        const auto begin = text.find('[', pos);
        if (begin == std::string_view::npos) {
            out.append(text.substr(pos));
            return out;
        }
        const auto rest = text.substr(begin + 1);
        const bool is_url = starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") ||
                            starts_with_ci(rest, "//");
        const auto end = text.find(']', begin);
        if (!is_url || end == std::string_view::npos) {
            out.append(text.substr(pos, begin + 1 - pos));
            pos = begin + 1;
            continue;
        }
        out.append(text.substr(pos, begin - pos));
        const auto inner = text.substr(begin + 1, end - begin - 1);
        if (const auto space = inner.find(' '); space != std::string_view::npos) {
            out.append(inner.substr(space + 1));
        }
        pos = end + 1;
    }
}

std::string remove_tags(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '<' && i + 1 < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '/')) {
            const auto close = text.find('>', i);
            if (close != std::string_view::npos) {
                i = close;
                out.push_back(' ');
                continue;
            }
        }
        out.push_back(text[i]);
    }
    return out;
}

std::string strip_line_markup(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos, end - pos);
        // Section headings: == Title ==
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] == '=') {
            const auto open = line.find_first_not_of('=', first);
            const auto close = line.find_last_not_of("= \t\r");
            line = open == std::string_view::npos || close < open
                       ? std::string_view{}
                       : line.substr(open, close + 1 - open);
        } else if (first != std::string_view::npos &&
                   std::string_view("*#:;").find(line[first]) != std::string_view::npos) {
            const auto body = line.find_first_not_of("*#:; \t", first);
            line = body == std::string_view::npos ? std::string_view{} : line.substr(body);
        }
        out.append(line);
        out.push_back('\n');
        pos = end + 1;
    }
    return out;
}

std::string erase_all(std::string text, std::string_view needle) {
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos)) {
        text.erase(pos, needle.size());
    }
    return text;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string strip_wikitext(std::string_view wikitext) {
    std::string text = remove_comments(wikitext);
    text = remove_refs(text);
    text = remove_innermost(std::move(text), "{{", "}}");
    text = remove_innermost(std::move(text), "{|", "|}");
    text = rewrite_internal_links(text);
    text = rewrite_external_links(text);
    text = remove_tags(text);
    text = erase_all(std::move(text), "'''");
    text = erase_all(std::move(text), "''");
    text = strip_line_markup(text);
    return collapse_whitespace(text);
}

} // namespace claimcheck
