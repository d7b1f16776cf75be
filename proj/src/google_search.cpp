#include <cstdlib>

#include <httplib.h>

#include "claimcheck/errors.hpp"
#include "claimcheck/pipeline.hpp"

namespace claimcheck {

GoogleSearchClient::GoogleSearchClient(std::string api_key, std::string engine_id, std::size_t count)
    : api_key_(std::move(api_key)), engine_id_(std::move(engine_id)), count_(count) {
    if (count_ == 0 || count_ > 10) {
        throw ConfigError("the Custom Search API returns between 1 and 10 results per request");
    }
}

GoogleSearchClient GoogleSearchClient::from_environment() {
    const char* key = std::getenv("GOOGLE_API_KEY");
    const char* engine = std::getenv("GOOGLE_CSE_ID");
    if (key == nullptr || engine == nullptr || *key == '\0' || *engine == '\0') {
        throw ConfigError("GOOGLE_API_KEY and GOOGLE_CSE_ID must be set for live web search");
    }
    return GoogleSearchClient(key, engine);
}

std::vector<std::string> GoogleSearchClient::parse_response(const nlohmann::json& response) {
    std::vector<std::string> out;
    if (!response.is_object() || !response.contains("items")) {
        return out;
    }
    for (const auto& item : response["items"]) {
        if (item.contains("snippet") && item["snippet"].is_string()) {
            out.push_back(item["snippet"].get<std::string>());
        }
    }
    return out;
}

std::vector<std::string> GoogleSearchClient::snippets(const Claim& claim) const {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    httplib::Client client("https://www.googleapis.com");
    const httplib::Params params = {
        {"key", api_key_}, {"cx", engine_id_}, {"q", claim.text}, {"num", std::to_string(count_)}};
    const auto result = client.Get("/customsearch/v1", params, httplib::Headers{});
    if (!result) {
        throw RetryableError("no response from the Custom Search API");
    }
    if (result->status != 200) {
        throw ProtocolError("Custom Search API returned HTTP " + std::to_string(result->status));
    }
    return parse_response(nlohmann::json::parse(result->body));
#else
    (void)claim;
    throw ConfigError("live web search needs a build with OpenSSL");
#endif
}

} // namespace claimcheck
