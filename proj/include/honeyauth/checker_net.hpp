#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <list>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include "honeyauth/honeychecker.hpp"

namespace honeyauth {

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 7070;

    // "host:port" or ":port"
    static Endpoint parse(std::string_view text);
    std::string str() const;
};

// Default bind address for the checker: HC_BIND if set, else 127.0.0.1:7070.
Endpoint default_checker_endpoint();

struct CheckerServerOptions {
    std::size_t max_connections = 64;
    std::size_t max_line = 256;
    // Sees every raw request line. Used for wire-level auditing in tests.
    std::function<void(std::string_view)> observer;
};

// TCP front end for a CheckerIndex. Each connection gets its own thread;
// requests on a connection are answered in order.
class CheckerServer {
public:
    explicit CheckerServer(CheckerIndex& index, CheckerServerOptions options = {});
    ~CheckerServer();

    CheckerServer(const CheckerServer&) = delete;
    CheckerServer& operator=(const CheckerServer&) = delete;

    // Binds and starts accepting. Port 0 picks an ephemeral port.
    void start(const Endpoint& bind);
    std::uint16_t port() const { return port_; }
    void stop();

private:
    struct Connection {
        int fd;
        std::thread thread;
        std::atomic<bool> done{false};
    };

    void accept_loop();
    void serve(Connection& conn);
    void reap_locked(bool all);

    CheckerIndex& index_;
    CheckerServerOptions options_;
    int listen_fd_ = -1;
    int wake_pipe_[2] = {-1, -1};
    std::uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::thread acceptor_;
    std::mutex mutex_;
    std::list<Connection> connections_;
    std::atomic<std::size_t> active_{0};
};

// What the auth gate needs from the honeychecker.
class CheckerClient {
public:
    virtual ~CheckerClient() = default;
    virtual CheckVerdict check(std::string_view uid, std::size_t index) = 0;
};

// Line-protocol client over one persistent connection, reconnecting once on
// failure. Throws CheckerUnavailable when the service cannot be reached and
// CheckerError for ERR replies.
class TcpCheckerClient : public CheckerClient {
public:
    explicit TcpCheckerClient(Endpoint endpoint, std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));
    ~TcpCheckerClient() override;

    CheckVerdict check(std::string_view uid, std::size_t index) override;
    void set(std::string_view uid, std::size_t k, std::size_t index);
    void remove(std::string_view uid);
    bool ping();

    // Raw request/response, response trimmed of padding.
    std::string request(std::string_view line);

private:
    void connect_locked();
    void close_locked();
    std::string exchange_locked(std::string_view line);

    Endpoint endpoint_;
    std::chrono::milliseconds timeout_;
    std::mutex mutex_;
    int fd_ = -1;
    std::string buffer_;
};

}  // namespace honeyauth
