#include "honeyauth/auth_service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "honeyauth/errors.hpp"

namespace honeyauth {

namespace {

double unit_field(const nlohmann::json& ctx, const char* key) {
    if (!ctx.contains(key)) return 0.0;
    const auto& v = ctx[key];
    if (!v.is_number()) throw ParseError(0, std::string("context.") + key + " must be a number");
    return v.get<double>();
}

}  // namespace

LoginRequest parse_login_request(std::string_view body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("login body is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(0, "login body must be an object");
    if (!j.contains("uid") || !j["uid"].is_string()) throw ParseError(0, "uid must be a string");
    if (!j.contains("password") || !j["password"].is_string()) throw ParseError(0, "password must be a string");
    LoginRequest req;
    req.uid = j["uid"].get<std::string>();
    req.password = j["password"].get<std::string>();
    if (j.contains("context") && !j["context"].is_null()) {
        const auto& ctx = j["context"];
        if (!ctx.is_object()) throw ParseError(0, "context must be an object");
        req.context.ip_reputation = unit_field(ctx, "ip_reputation");
        req.context.geo_anomaly = unit_field(ctx, "geo_anomaly");
        req.context.history_anomaly = unit_field(ctx, "history_anomaly");
        if (ctx.contains("device_mismatch")) {
            if (!ctx["device_mismatch"].is_boolean()) throw ParseError(0, "context.device_mismatch must be a boolean");
            req.context.device_mismatch = ctx["device_mismatch"].get<bool>();
        }
    }
    return req;
}

AuthService::AuthService(AuthGate& gate) : gate_(gate), server_(std::make_unique<httplib::Server>()) {
    server_->Post("/login", [this](const httplib::Request& req, httplib::Response& res) {
        LoginRequest login;
        try {
            login = parse_login_request(req.body);
        } catch (const ParseError&) {
            res.status = 400;
            res.set_content(login_response_json({}), "application/json");
            return;
        }
        auto outcome = gate_.login(login);
        res.set_content(login_response_json(outcome), "application/json");
    });
}

AuthService::~AuthService() { stop(); }

void AuthService::start(const Endpoint& bind) {
    int port = bind.port == 0 ? server_->bind_to_any_port(bind.host) : (server_->bind_to_port(bind.host, bind.port)
                                                                            ? bind.port
                                                                            : -1);
    if (port < 0) throw Error("cannot bind auth service to " + bind.str());
    port_ = static_cast<std::uint16_t>(port);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void AuthService::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace honeyauth
