#pragma once

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "claimcheck/gateway.hpp"

namespace claimcheck {

/// Serves the gateway HTTP+JSON protocol from in-process scorers. Used to host the
/// fallback scorers for conformance runs and as a test double.
class GatewayServer {
public:
    struct Options {
        std::string host = "127.0.0.1";
        int port = 0; ///< 0 picks a free port
        std::size_t max_batch = 64;
        std::optional<std::string> bearer_token;
    };

    GatewayServer(Scorers scorers, nlohmann::json info, Options options);
    explicit GatewayServer(Scorers scorers, nlohmann::json info)
        : GatewayServer(std::move(scorers), std::move(info), Options{}) {}
    ~GatewayServer();

    GatewayServer(const GatewayServer&) = delete;
    GatewayServer& operator=(const GatewayServer&) = delete;

    /// Binds and serves on a background thread; returns once requests are accepted.
    void start();
    void stop();

    int port() const;
    std::string endpoint() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace claimcheck
