#include "claimcheck/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

constexpr std::size_t kTopicWords = 12;
constexpr std::size_t kClaimTopicWords = 8;
constexpr std::size_t kFillerWords = 1500;

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        // Fisher-Yates with our own draw, so output does not depend on the standard library.
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// Distinct consonant-vowel pseudo-words of three syllables.
    std::vector<std::string> words(std::size_t count, std::set<std::string>& used) {
        static constexpr std::string_view consonants = "bdfgklmprstvz";
        static constexpr std::string_view vowels = "aeiou";
        std::vector<std::string> out;
        while (out.size() < count) {
            std::string word;
            for (int s = 0; s < 3; ++s) {
                word += consonants[below(consonants.size())];
                word += vowels[below(vowels.size())];
            }
            if (used.insert(word).second) {
                out.push_back(std::move(word));
            }
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

std::string sentence(std::vector<std::string> tokens) {
    std::string out;
    for (const auto& token : tokens) {
        out += (out.empty() ? "" : " ") + token;
    }
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out + ".";
}

std::string padded(std::size_t value, int width) {
    auto text = std::to_string(value);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(text.size()))), '0') +
           text;
}

} // namespace

PlantedBenchmark make_planted_benchmark(const PlantedOptions& options) {
    if (options.claims == 0) {
        throw ConfigError("planted benchmark needs at least one claim");
    }
    if (options.refuted_fraction < 0.0 || options.refuted_fraction > 1.0) {
        throw ConfigError("refuted_fraction must lie in [0, 1]");
    }
    Generator gen(options.seed);
    std::set<std::string> used;
    const auto filler = gen.words(kFillerWords, used);
    std::vector<std::vector<std::string>> topics;
    for (std::size_t c = 0; c < options.claims; ++c) {
        topics.push_back(gen.words(kTopicWords, used));
    }
    const auto filler_tokens = [&](std::size_t count) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(filler[gen.below(filler.size())]);
        }
        return out;
    };

    std::vector<bool> refuted(options.claims, false);
    {
        std::vector<std::size_t> order(options.claims);
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        gen.shuffle(order);
        const auto n_refuted =
            static_cast<std::size_t>(std::llround(options.refuted_fraction * static_cast<double>(options.claims)));
        for (std::size_t i = 0; i < n_refuted; ++i) {
            refuted[order[i]] = true;
        }
    }

    PlantedBenchmark out;
    const int width = options.claims > 9999 ? static_cast<int>(std::to_string(options.claims).size()) : 4;
    for (std::size_t c = 0; c < options.claims; ++c) {
        const auto& topic = topics[c];
        const auto tag = padded(c, width);
        std::vector<std::string> tokens = {"qx" + tag + "a", "qx" + tag + "b"};
        tokens.insert(tokens.end(), topic.begin(), topic.begin() + kClaimTopicWords);
        gen.shuffle(tokens);

        // Paraphrase: one topic word swapped for an unused one, order reshuffled.
        auto paraphrase = tokens;
        for (auto& token : paraphrase) {
            if (token.rfind("qx", 0) != 0) {
                token = topic[kClaimTopicWords];
                break;
            }
        }
        gen.shuffle(paraphrase);
        std::string planted = sentence(paraphrase);
        if (refuted[c]) {
            paraphrase.insert(paraphrase.begin(), {"no", "evidence", "that"});
            planted = sentence(paraphrase);
        }

        std::vector<std::string> body = {sentence(filler_tokens(9)), sentence(filler_tokens(11))};
        body.insert(body.begin() + static_cast<std::ptrdiff_t>(gen.below(body.size() + 1)), planted);
        std::string text;
        for (const auto& s : body) {
            text += (text.empty() ? "" : " ") + s;
        }
        Document doc;
        doc.doc_id = "p-" + tag;
        doc.title = sentence(filler_tokens(3));
        doc.title.pop_back();
        doc.body = std::move(text);
        out.corpus.add(std::move(doc));

        ClaimRecord record;
        record.claim_id = "c-" + tag;
        record.text = sentence(tokens);
        record.gold_label = refuted[c] ? GoldLabel::refuted : GoldLabel::supported;
        record.gold_evidence = std::vector<std::string>{planted};
        record.relevant_doc_ids = {"p-" + tag};
        out.claims.push_back(std::move(record));
        out.planted_sentences.push_back(std::move(planted));
    }

    // Distractors cycle through the topics; every sentence mixes two topic words into filler.
    const int doc_width = std::max<int>(5, static_cast<int>(std::to_string(options.distractors).size()));
    for (std::size_t d = 0; d < options.distractors; ++d) {
        const auto& topic = topics[d % options.claims];
        std::string text;
        const std::size_t sentences = 3 + gen.below(3);
        for (std::size_t s = 0; s < sentences; ++s) {
            auto tokens = filler_tokens(6 + gen.below(5));
            tokens.push_back(topic[gen.below(topic.size())]);
            tokens.push_back(topic[gen.below(topic.size())]);
            gen.shuffle(tokens);
            text += (text.empty() ? "" : " ") + sentence(std::move(tokens));
        }
        Document doc;
        doc.doc_id = "d-" + padded(d, doc_width);
        doc.title = sentence(filler_tokens(3));
        doc.title.pop_back();
        doc.body = std::move(text);
        out.corpus.add(std::move(doc));
    }
    return out;
}

} // namespace claimcheck
