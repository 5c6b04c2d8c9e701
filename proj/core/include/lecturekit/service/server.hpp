#pragma once

#include "lecturekit/common/time.hpp"
#include "lecturekit/content/model.hpp"
#include "lecturekit/session/session.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lecturekit::service
{

struct RouteInfo
{
    std::string method;
    std::string path;
};

/// Every endpoint the server answers, in registration order.
const std::vector<RouteInfo>& routeTable();

struct ServerOptions
{
    std::filesystem::path bundleDir;
    std::string host{"127.0.0.1"};
    /// 0 picks a free port.
    int port{0};
    /// Offline providers for text, speech and image search.
    bool mock{false};
    /// Simulated seconds per real second for speech and break timers.
    double timeScale{1.0};
    int tickMs{50};
    /// Session metadata and JSON-lines logs; defaults to <bundleDir>/.sessions.
    std::optional<std::filesystem::path> sessionDir;
    std::string corsOrigin{"*"};
    WallClock wallClock;
    /// Overrides provider construction (tests inject scripted mocks here).
    std::function<session::SessionServices()> services;
};

/// HTTP + server-sent-event facade over bundles and sessions.
class Server
{
  public:
    explicit Server(ServerOptions options);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and starts serving on background threads; returns the bound port.
    int start();
    /// Blocks until stop() is called.
    void wait();
    void stop();

    int port() const;
    std::size_t bundleCount() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace lecturekit::service
