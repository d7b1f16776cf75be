#include "claimcheck/gateway_server.hpp"

#include <thread>

#include <httplib.h>

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

class HttpError : public std::runtime_error {
public:
    HttpError(int status, const std::string& what) : std::runtime_error(what), status(status) {}
    int status;
};

std::vector<std::string> string_list(const nlohmann::json& body, const char* key) {
    if (!body.is_object() || !body.contains(key) || !body[key].is_array()) {
        throw HttpError(400, std::string("'") + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : body[key]) {
        if (!item.is_string()) {
            throw HttpError(400, std::string("'") + key + "' must be an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

struct GatewayServer::Impl {
    Scorers scorers;
    nlohmann::json info;
    Options options;
    httplib::Server server;
    std::thread thread;
    int bound_port = -1;

    void check_batch(std::size_t n) const {
        if (n == 0) {
            throw HttpError(400, "empty batch");
        }
        if (n > options.max_batch) {
            throw HttpError(413, "batch of " + std::to_string(n) + " exceeds max_batch " +
                                     std::to_string(options.max_batch));
        }
    }

    nlohmann::json embed(const nlohmann::json& body) const {
        const auto texts = string_list(body, "texts");
        check_batch(texts.size());
        nlohmann::json vectors = nlohmann::json::array();
        for (const auto& e : scorers.embedder->embed(texts)) {
            vectors.push_back(e.values);
        }
        return {{"dim", scorers.embedder->dim()}, {"vectors", vectors}};
    }

    nlohmann::json similarity(const nlohmann::json& body) const {
        if (!body.is_object() || !body.contains("claim") || !body["claim"].is_string()) {
            throw HttpError(400, "'claim' must be a string");
        }
        const auto sentences = string_list(body, "sentences");
        check_batch(sentences.size());
        return {{"scores", scorers.sentence_scorer->score(body["claim"].get<std::string>(), sentences)}};
    }

    nlohmann::json nli(const nlohmann::json& body) const {
        if (!body.is_object() || !body.contains("pairs") || !body["pairs"].is_array()) {
            throw HttpError(400, "'pairs' must be an array");
        }
        std::vector<NliPair> pairs;
        for (const auto& item : body["pairs"]) {
            if (!item.is_object() || !item.contains("premise") || !item.contains("hypothesis") ||
                !item["premise"].is_string() || !item["hypothesis"].is_string()) {
                throw HttpError(400, "each pair needs string 'premise' and 'hypothesis'");
            }
            pairs.push_back({item["premise"].get<std::string>(), item["hypothesis"].get<std::string>()});
        }
        check_batch(pairs.size());
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& s : scorers.nli->predict(pairs)) {
            labels.push_back({{"entailment", s.entailment}, {"neutral", s.neutral}, {"contradiction", s.contradiction}});
        }
        return {{"labels", labels}};
    }

    bool authorized(const httplib::Request& req) const {
        return !options.bearer_token ||
               req.get_header_value("Authorization") == "Bearer " + *options.bearer_token;
    }

    template <typename Fn>
    httplib::Server::Handler wrap(Fn fn) {
        return [this, fn](const httplib::Request& req, httplib::Response& res) {
            const auto reply = [&](int status, const nlohmann::json& payload) {
                res.status = status;
                res.set_content(payload.dump(), "application/json");
            };
            if (!authorized(req)) {
                reply(401, {{"error", "missing or wrong bearer token"}});
                return;
            }
            try {
                nlohmann::json body;
                if (req.method == "POST") {
                    body = nlohmann::json::parse(req.body);
                }
                reply(200, fn(body));
            } catch (const HttpError& e) {
                reply(e.status, {{"error", e.what()}});
            } catch (const nlohmann::json::exception& e) {
                reply(400, {{"error", std::string("bad request body: ") + e.what()}});
            } catch (const std::exception& e) {
                reply(500, {{"error", e.what()}});
            }
        };
    }
};

GatewayServer::GatewayServer(Scorers scorers, nlohmann::json info, Options options)
    : impl_(std::make_unique<Impl>()) {
    if (!scorers.embedder || !scorers.sentence_scorer || !scorers.nli) {
        throw ConfigError("gateway server needs all three scorers");
    }
    if (options.max_batch == 0) {
        throw ConfigError("max_batch must be at least 1");
    }
    impl_->scorers = std::move(scorers);
    impl_->info = std::move(info);
    impl_->options = std::move(options);
    auto& server = impl_->server;
    Impl* self = impl_.get();
    server.Get("/v1/info", self->wrap([self](const nlohmann::json&) { return self->info; }));
    server.Post("/v1/embed", self->wrap([self](const nlohmann::json& b) { return self->embed(b); }));
    server.Post("/v1/similarity",
                self->wrap([self](const nlohmann::json& b) { return self->similarity(b); }));
    server.Post("/v1/nli", self->wrap([self](const nlohmann::json& b) { return self->nli(b); }));
    const auto not_found = [](const httplib::Request& req, httplib::Response& res) {
        if (res.status == 404 && res.body.empty()) {
            res.set_content(nlohmann::json{{"error", "no route for " + req.path}}.dump(),
                            "application/json");
        }
    };
    server.set_error_handler(not_found);
}

GatewayServer::~GatewayServer() { stop(); }

void GatewayServer::start() {
    if (impl_->thread.joinable()) {
        return;
    }
    auto& server = impl_->server;
    const auto& options = impl_->options;
    impl_->bound_port = options.port == 0 ? server.bind_to_any_port(options.host)
                                          : (server.bind_to_port(options.host, options.port)
                                                 ? options.port
                                                 : -1);
    if (impl_->bound_port < 0) {
        throw Error("cannot bind gateway server to " + options.host + ":" + std::to_string(options.port));
    }
    impl_->thread = std::thread([&server] { server.listen_after_bind(); });
    server.wait_until_ready();
}

void GatewayServer::stop() {
    if (impl_ && impl_->thread.joinable()) {
        impl_->server.stop();
        impl_->thread.join();
    }
}

int GatewayServer::port() const { return impl_->bound_port; }

std::string GatewayServer::endpoint() const {
    return "http://" + impl_->options.host + ":" + std::to_string(impl_->bound_port);
}

} // namespace claimcheck
