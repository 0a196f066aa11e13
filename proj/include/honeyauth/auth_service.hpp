#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "honeyauth/authgate.hpp"
#include "honeyauth/checker_net.hpp"

namespace httplib {
class Server;
}

namespace honeyauth {

// {"uid": "...", "password": "...", "context": {"ip_reputation": 0.1,
//  "geo_anomaly": 0, "device_mismatch": false, "history_anomaly": 0}}
// context and each of its keys are optional. Throws ParseError.
LoginRequest parse_login_request(std::string_view body);

// HTTP/1.1 POST /login in front of an AuthGate. Replies with
// login_response_json; malformed bodies get 400 with the same denied shape.
class AuthService {
public:
    explicit AuthService(AuthGate& gate);
    ~AuthService();
    AuthService(const AuthService&) = delete;
    AuthService& operator=(const AuthService&) = delete;

    // Binds (port 0 picks a free port) and serves on a background thread.
    void start(const Endpoint& bind);
    std::uint16_t port() const { return port_; }
    void stop();

private:
    AuthGate& gate_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::uint16_t port_ = 0;
};

}  // namespace honeyauth
