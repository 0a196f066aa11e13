#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "honeyauth/alert_log.hpp"
#include "honeyauth/checker_net.hpp"
#include "honeyauth/credstore.hpp"
#include "honeyauth/kdf.hpp"
#include "honeyauth/responder.hpp"

namespace honeyauth {

enum class FailMode {
    FAIL_CLOSED,         // deny when the checker is unreachable
    FAIL_OPEN_REAL_ONLY  // treat a matched sweetword as real, log for audit
};

std::string_view to_string(FailMode m);
FailMode parse_fail_mode(std::string_view text);

struct LoginRequest {
    std::string uid;
    std::string password;
    RiskContext context;
};

enum class Verdict { SUCCESS, FAILURE, HONEY_DETECTED };

std::string_view to_string(Verdict v);

struct AuthOutcome {
    Verdict verdict = Verdict::FAILURE;
    std::optional<std::size_t> index;  // HONEY_DETECTED only
    ResponseAction action;
    double risk = 0;
    std::chrono::nanoseconds latency{0};
    bool checker_unavailable = false;
};

struct MatchResult {
    std::optional<std::size_t> index;
    std::size_t comparisons = 0;
};

// Compares the digest against every stored digest in constant time and never
// stops early, so hit and miss cost the same k comparisons.
MatchResult match_index(const SweetwordSet& record, std::span<const std::uint8_t> digest);
MatchResult match_index(const KdfRegistry& kdfs, const SweetwordSet& record, std::string_view password);

struct GateOptions {
    FailMode fail_mode = FailMode::FAIL_CLOSED;
    // Called with operational problems (alert sink failures) that must not
    // change the login outcome.
    std::function<void(const std::string&)> on_operational_error;
};

// Login middleware: one KDF evaluation, full-scan digest comparison, checker
// consultation only on a match, responder decision and alert emission.
class AuthGate {
public:
    AuthGate(const CredentialStore& store, const KdfRegistry& kdfs, CheckerClient& checker, Responder& responder,
             AlertSink* alerts, GateOptions options = {});

    AuthOutcome login(const LoginRequest& request);
    AuthOutcome login(const LoginRequest& request, TimePoint now);

private:
    void alert(const AlertEvent& event);

    const CredentialStore& store_;
    const KdfRegistry& kdfs_;
    CheckerClient& checker_;
    Responder& responder_;
    AlertSink* alerts_;
    GateOptions options_;
    Bytes decoy_salt_;
};

// Client-facing body for the demo HTTP service. Never reveals whether a
// honeyword was used: {"status":"ok"|"denied","token_scope":...}
std::string login_response_json(const AuthOutcome& outcome);

}  // namespace honeyauth
