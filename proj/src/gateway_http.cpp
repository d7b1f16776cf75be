// HTTP+JSON gateway client, remote scorers and the protocol conformance suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include <httplib.h>

#include "claimcheck/errors.hpp"
#include "claimcheck/gateway.hpp"

namespace claimcheck {

namespace {

struct RawResponse {
    int status = 0;
    std::string body;
};

httplib::Client make_http_client(const GatewayOptions& options) {
    httplib::Client client(options.endpoint);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    if (options.bearer_token) {
        client.set_bearer_token_auth(*options.bearer_token);
    }
    return client;
}

// One attempt. An empty optional means the request never got an HTTP answer.
std::optional<RawResponse> send_once(const GatewayOptions& options, const std::string& method,
                                     const std::string& path, const std::string* body) {
    auto client = make_http_client(options);
    httplib::Result result = method == "GET"
                                 ? client.Get(path)
                                 : client.Post(path, body != nullptr ? *body : std::string(),
                                               "application/json");
    if (!result) {
        return std::nullopt;
    }
    return RawResponse{result->status, result->body};
}

std::string error_message(const RawResponse& response) {
    try {
        const auto parsed = nlohmann::json::parse(response.body);
        if (parsed.is_object() && parsed.contains("error") && parsed["error"].is_string()) {
            return parsed["error"].get<std::string>();
        }
    } catch (const nlohmann::json::exception&) {
    }
    return response.body.substr(0, 200);
}

bool is_transient(int status) { return status == 429 || status >= 500; }

const nlohmann::json& require_field(const nlohmann::json& object, const char* key,
                                    const char* endpoint) {
    if (!object.is_object() || !object.contains(key)) {
        throw ProtocolError(std::string(endpoint) + ": response lacks '" + key + "'");
    }
    return object.at(key);
}

double as_number(const nlohmann::json& value, const char* endpoint) {
    if (!value.is_number()) {
        throw ProtocolError(std::string(endpoint) + ": expected a number");
    }
    return value.get<double>();
}

template <typename Item, typename Result>
std::vector<Result> in_batches(std::span<const Item> items, std::size_t max_batch,
                               const std::function<std::vector<Result>(std::span<const Item>)>& call) {
    std::vector<Result> out;
    out.reserve(items.size());
    const std::size_t step = std::max<std::size_t>(1, max_batch);
    for (std::size_t begin = 0; begin < items.size(); begin += step) {
        auto part = call(items.subspan(begin, std::min(step, items.size() - begin)));
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

} // namespace

GatewayClient::GatewayClient(GatewayOptions options) : options_(std::move(options)) {
    if (options_.endpoint.empty()) {
        throw ConfigError("gateway endpoint must not be empty");
    }
    if (options_.retry.attempts < 1) {
        throw ConfigError("retry attempts must be at least 1");
    }
}

nlohmann::json GatewayClient::get(const std::string& path) const {
    return request("GET", path, nullptr);
}

nlohmann::json GatewayClient::post(const std::string& path, const nlohmann::json& body) const {
    return request("POST", path, &body);
}

nlohmann::json GatewayClient::request(const std::string& method, const std::string& path,
                                      const nlohmann::json* body) const {
    const std::string payload = body != nullptr ? body->dump() : std::string();
    std::string last_failure;
    auto backoff = options_.retry.initial_backoff;
    for (int attempt = 1; attempt <= options_.retry.attempts; ++attempt) {
        const auto response = send_once(options_, method, path, body != nullptr ? &payload : nullptr);
        if (!response) {
            last_failure = "no response from " + options_.endpoint + path;
        } else if (is_transient(response->status)) {
            last_failure = "HTTP " + std::to_string(response->status) + " from " + path + ": " +
                           error_message(*response);
        } else if (response->status < 200 || response->status >= 300) {
            throw ProtocolError("HTTP " + std::to_string(response->status) + " from " + path +
                                ": " + error_message(*response));
        } else {
            try {
                return nlohmann::json::parse(response->body);
            } catch (const nlohmann::json::exception&) {
                throw ProtocolError(path + ": response body is not JSON");
            }
        }
        if (attempt < options_.retry.attempts) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
    }
    throw RetryableError(last_failure + " (after " + std::to_string(options_.retry.attempts) +
                         " attempts)");
}

RemoteEmbedder::RemoteEmbedder(std::shared_ptr<const GatewayClient> client)
    : client_(std::move(client)) {
    const auto info = client_->get("/v1/info");
    const auto& id = require_field(info, "embedder_id", "/v1/info");
    const auto& dim = require_field(info, "dim", "/v1/info");
    if (!id.is_string() || id.get<std::string>().empty() || !dim.is_number_integer() ||
        dim.get<long long>() <= 0) {
        throw ProtocolError("/v1/info: invalid embedder_id or dim");
    }
    id_ = id.get<std::string>();
    dim_ = dim.get<std::size_t>();
}

std::vector<Embedding> RemoteEmbedder::embed(std::span<const std::string> texts) const {
    return in_batches<std::string, Embedding>(
        texts, client_->options().max_batch, [this](std::span<const std::string> batch) {
            const auto response =
                client_->post("/v1/embed", {{"texts", std::vector<std::string>(batch.begin(), batch.end())}});
            const auto& dim = require_field(response, "dim", "/v1/embed");
            if (!dim.is_number_integer() || dim.get<std::size_t>() != dim_) {
                throw ProtocolError("/v1/embed: dim differs from /v1/info");
            }
            const auto& vectors = require_field(response, "vectors", "/v1/embed");
            if (!vectors.is_array() || vectors.size() != batch.size()) {
                throw ProtocolError("/v1/embed: vector count differs from request");
            }
            std::vector<Embedding> out;
            for (const auto& row : vectors) {
                if (!row.is_array() || row.size() != dim_) {
                    throw ProtocolError("/v1/embed: vector length differs from dim");
                }
                Embedding embedding;
                embedding.embedder_id = id_;
                for (const auto& x : row) {
                    embedding.values.push_back(static_cast<float>(as_number(x, "/v1/embed")));
                }
                if (!embedding.is_null()) {
                    normalize(embedding.values);
                }
                out.push_back(std::move(embedding));
            }
            return out;
        });
}

std::vector<double> RemoteScorer::score(std::string_view claim,
                                        std::span<const std::string> sentences) const {
    return in_batches<std::string, double>(
        sentences, client_->options().max_batch, [&](std::span<const std::string> batch) {
            const auto response = client_->post(
                "/v1/similarity",
                {{"claim", claim}, {"sentences", std::vector<std::string>(batch.begin(), batch.end())}});
            const auto& scores = require_field(response, "scores", "/v1/similarity");
            if (!scores.is_array() || scores.size() != batch.size()) {
                throw ProtocolError("/v1/similarity: score count differs from request");
            }
            std::vector<double> out;
            for (const auto& s : scores) {
                out.push_back(as_number(s, "/v1/similarity"));
            }
            return out;
        });
}

std::vector<NliScores> RemoteNli::predict(std::span<const NliPair> pairs) const {
    return in_batches<NliPair, NliScores>(
        pairs, client_->options().max_batch, [this](std::span<const NliPair> batch) {
            nlohmann::json request_pairs = nlohmann::json::array();
            for (const auto& pair : batch) {
                request_pairs.push_back({{"premise", pair.premise}, {"hypothesis", pair.hypothesis}});
            }
            const auto response = client_->post("/v1/nli", {{"pairs", request_pairs}});
            const auto& labels = require_field(response, "labels", "/v1/nli");
            if (!labels.is_array() || labels.size() != batch.size()) {
                throw ProtocolError("/v1/nli: label count differs from request");
            }
            std::vector<NliScores> out;
            for (const auto& label : labels) {
                out.push_back(NliScores{
                    as_number(require_field(label, "entailment", "/v1/nli"), "/v1/nli"),
                    as_number(require_field(label, "neutral", "/v1/nli"), "/v1/nli"),
                    as_number(require_field(label, "contradiction", "/v1/nli"), "/v1/nli"),
                });
            }
            return out;
        });
}

Scorers make_remote_scorers(const GatewayOptions& options) {
    auto client = std::make_shared<const GatewayClient>(options);
    return Scorers{std::make_shared<RemoteEmbedder>(client), std::make_shared<RemoteScorer>(client),
                   std::make_shared<RemoteNli>(client)};
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kNormTolerance = 1e-5;
constexpr double kSumTolerance = 1e-6;
constexpr double kRepeatTolerance = 1e-6;

const std::vector<std::string> kProbeTexts = {
    "Vitamin C supplementation reduces the duration of the common cold.",
    "Aspirin lowers the risk of heart attack in adults.",
    "Regular coffee consumption increases the risk of heart disease.",
};

class Checklist {
public:
    void run(const std::string& name, const std::function<std::string()>& check) {
        ConformanceCheck result{name, false, {}};
        try {
            result.detail = check();
            result.passed = result.detail.empty();
        } catch (const std::exception& e) {
            result.detail = e.what();
        }
        checks_.push_back(std::move(result));
    }
    std::vector<ConformanceCheck> take() { return std::move(checks_); }

private:
    std::vector<ConformanceCheck> checks_;
};

bool close_rows(const nlohmann::json& a, const nlohmann::json& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].get<double>() - b[i].get<double>()) > kRepeatTolerance) {
            return false;
        }
    }
    return true;
}

std::string check_vectors(const nlohmann::json& response, std::size_t dim, std::size_t count) {
    if (!response.contains("dim") || response["dim"] != dim) {
        return "/v1/embed dim differs from /v1/info";
    }
    const auto& vectors = response.at("vectors");
    if (!vectors.is_array() || vectors.size() != count) {
        return "/v1/embed returned the wrong number of vectors";
    }
    for (const auto& row : vectors) {
        if (!row.is_array() || row.size() != dim) {
            return "vector length differs from declared dim";
        }
        double sum = 0.0;
        for (const auto& x : row) {
            sum += x.get<double>() * x.get<double>();
        }
        if (std::abs(std::sqrt(sum) - 1.0) >= kNormTolerance) {
            return "embedding is not unit-norm";
        }
    }
    return {};
}

std::string check_labels(const nlohmann::json& labels, std::size_t count) {
    if (!labels.is_array() || labels.size() != count) {
        return "/v1/nli returned the wrong number of labels";
    }
    for (const auto& label : labels) {
        const double e = label.at("entailment").get<double>();
        const double n = label.at("neutral").get<double>();
        const double c = label.at("contradiction").get<double>();
        if (e < 0.0 || n < 0.0 || c < 0.0 || std::abs(e + n + c - 1.0) > kSumTolerance) {
            return "NLI triple is not a probability distribution";
        }
    }
    return {};
}

} // namespace

std::vector<ConformanceCheck> run_conformance(const GatewayClient& client) {
    Checklist list;
    nlohmann::json info;
    std::size_t dim = 0;

    list.run("info_schema", [&]() -> std::string {
        info = client.get("/v1/info");
        if (!info.is_object() || !info.contains("embedder_id") || !info["embedder_id"].is_string() ||
            info["embedder_id"].get<std::string>().empty()) {
            return "missing embedder_id";
        }
        if (!info.contains("dim") || !info["dim"].is_number_integer() || info["dim"].get<long long>() <= 0) {
            return "missing or non-positive dim";
        }
        if (!info.contains("models") || !info["models"].is_object()) {
            return "missing models object";
        }
        dim = info["dim"].get<std::size_t>();
        return {};
    });

    list.run("embed_dim_and_unit_norm", [&]() -> std::string {
        return check_vectors(client.post("/v1/embed", {{"texts", kProbeTexts}}), dim, kProbeTexts.size());
    });

    list.run("embed_order_preserved", [&]() -> std::string {
        auto reversed = kProbeTexts;
        std::reverse(reversed.begin(), reversed.end());
        const auto forward = client.post("/v1/embed", {{"texts", kProbeTexts}}).at("vectors");
        const auto backward = client.post("/v1/embed", {{"texts", reversed}}).at("vectors");
        for (std::size_t i = 0; i < kProbeTexts.size(); ++i) {
            if (!close_rows(forward[i], backward[kProbeTexts.size() - 1 - i])) {
                return "reordering the batch changed a vector";
            }
        }
        return {};
    });

    list.run("embed_batched_equals_single", [&]() -> std::string {
        const auto batch = client.post("/v1/embed", {{"texts", kProbeTexts}}).at("vectors");
        for (std::size_t i = 0; i < kProbeTexts.size(); ++i) {
            const auto single =
                client.post("/v1/embed", {{"texts", {kProbeTexts[i]}}}).at("vectors").at(0);
            if (!close_rows(batch[i], single)) {
                return "batched and single embeddings differ";
            }
        }
        return {};
    });

    list.run("similarity_bounds_and_order", [&]() -> std::string {
        const std::string claim = kProbeTexts[0];
        const auto scores =
            client.post("/v1/similarity", {{"claim", claim}, {"sentences", kProbeTexts}}).at("scores");
        if (!scores.is_array() || scores.size() != kProbeTexts.size()) {
            return "wrong number of scores";
        }
        for (const auto& s : scores) {
            if (!s.is_number() || s.get<double>() < 0.0 || s.get<double>() > 1.0) {
                return "score outside [0, 1]";
            }
        }
        auto reversed = kProbeTexts;
        std::reverse(reversed.begin(), reversed.end());
        const auto back =
            client.post("/v1/similarity", {{"claim", claim}, {"sentences", reversed}}).at("scores");
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (std::abs(scores[i].get<double>() - back[scores.size() - 1 - i].get<double>()) >
                kRepeatTolerance) {
                return "reordering sentences changed a score";
            }
        }
        return {};
    });

    list.run("nli_distribution", [&]() -> std::string {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& premise : kProbeTexts) {
            pairs.push_back({{"premise", premise}, {"hypothesis", kProbeTexts[1]}});
        }
        return check_labels(client.post("/v1/nli", {{"pairs", pairs}}).at("labels"), pairs.size());
    });

    list.run("nli_self_entailment", [&]() -> std::string {
        const auto& x = kProbeTexts[2];
        const auto label =
            client.post("/v1/nli", {{"pairs", {{{"premise", x}, {"hypothesis", x}}}}}).at("labels").at(0);
        const double e = label.at("entailment").get<double>();
        if (e < label.at("neutral").get<double>() || e < label.at("contradiction").get<double>()) {
            return "entailment is not the argmax for identical premise and hypothesis";
        }
        return {};
    });

    list.run("deterministic_repeat", [&]() -> std::string {
        const auto first = client.post("/v1/embed", {{"texts", kProbeTexts}});
        const auto second = client.post("/v1/embed", {{"texts", kProbeTexts}});
        return first == second ? std::string() : "identical requests gave different responses";
    });

    list.run("error_shape", [&]() -> std::string {
        const std::string bogus = R"({"unexpected": true})";
        const auto response = send_once(client.options(), "POST", "/v1/embed", &bogus);
        if (!response) {
            return "no response";
        }
        if (response->status >= 200 && response->status < 300) {
            return "malformed request was accepted";
        }
        const auto parsed = nlohmann::json::parse(response->body, nullptr, false);
        if (!parsed.is_object() || !parsed.contains("error") || !parsed["error"].is_string()) {
            return "error body lacks an 'error' string";
        }
        return {};
    });

    return list.take();
}

} // namespace claimcheck
