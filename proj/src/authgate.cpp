#include "honeyauth/authgate.hpp"

#include <json.hpp>

#include "honeyauth/errors.hpp"

namespace honeyauth {

std::string_view to_string(FailMode m) {
    return m == FailMode::FAIL_CLOSED ? "fail-closed" : "fail-open-real-only";
}

FailMode parse_fail_mode(std::string_view text) {
    if (text == "fail-closed" || text == "FAIL_CLOSED") return FailMode::FAIL_CLOSED;
    if (text == "fail-open-real-only" || text == "FAIL_OPEN_REAL_ONLY") return FailMode::FAIL_OPEN_REAL_ONLY;
    throw ConfigError("unknown fail mode '" + std::string(text) + "'");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::SUCCESS: return "SUCCESS";
        case Verdict::FAILURE: return "FAILURE";
        case Verdict::HONEY_DETECTED: return "HONEY_DETECTED";
    }
    return "?";
}

MatchResult match_index(const SweetwordSet& record, std::span<const std::uint8_t> digest) {
    MatchResult result;
    std::size_t found = record.digests.size();
    for (std::size_t i = 0; i < record.digests.size(); ++i) {
        bool equal = ct_equal(record.digests[i], digest);
        ++result.comparisons;
        // Branch-free select keeps the scan shape identical for hit and miss.
        std::size_t mask = static_cast<std::size_t>(0) - static_cast<std::size_t>(equal);
        found = (i & mask) | (found & ~mask);
    }
    if (found < record.digests.size()) result.index = found;
    return result;
}

MatchResult match_index(const KdfRegistry& kdfs, const SweetwordSet& record, std::string_view password) {
    return match_index(record, kdfs.hash(record.kdf, password, record.salt));
}

AuthGate::AuthGate(const CredentialStore& store, const KdfRegistry& kdfs, CheckerClient& checker,
                   Responder& responder, AlertSink* alerts, GateOptions options)
    : store_(store),
      kdfs_(kdfs),
      checker_(checker),
      responder_(responder),
      alerts_(alerts),
      options_(std::move(options)),
      decoy_salt_(random_bytes(kSaltBytes)) {}

void AuthGate::alert(const AlertEvent& event) {
    if (!alerts_) return;
    try {
        alerts_->emit(event);
    } catch (const std::exception& e) {
        if (options_.on_operational_error) options_.on_operational_error(e.what());
    }
}

AuthOutcome AuthGate::login(const LoginRequest& request) { return login(request, Clock::now()); }

AuthOutcome AuthGate::login(const LoginRequest& request, TimePoint now) {
    const auto started = std::chrono::steady_clock::now();
    AuthOutcome outcome;
    auto finish = [&] {
        outcome.latency = std::chrono::steady_clock::now() - started;
        return outcome;
    };
    if (request.password.empty()) return finish();

    const SweetwordSet* record = valid_uid(request.uid) ? store_.find(request.uid) : nullptr;
    if (!record) {
        // Spend one KDF evaluation anyway so unknown accounts are not faster.
        if (!store_.empty()) kdfs_.hash(store_.records().begin()->second.kdf, request.password, decoy_salt_);
        return finish();
    }

    auto match = match_index(kdfs_, *record, request.password);
    if (!match.index) return finish();

    CheckVerdict verdict;
    try {
        verdict = checker_.check(request.uid, *match.index);
    } catch (const Error& e) {
        outcome.checker_unavailable = true;
        if (options_.on_operational_error) options_.on_operational_error(std::string("honeychecker: ") + e.what());
        if (options_.fail_mode == FailMode::FAIL_CLOSED) return finish();
        outcome.verdict = Verdict::SUCCESS;
        outcome.action = {ActionKind::SilentLog};
        alert({now, request.uid, match.index, 0.0, outcome.action});
        return finish();
    }

    const bool honey = verdict == CheckVerdict::HONEY;
    auto decision = responder_.respond(request.uid, request.context, honey, now);
    outcome.risk = decision.risk;
    outcome.action = decision.action;
    if (honey) {
        outcome.verdict = Verdict::HONEY_DETECTED;
        outcome.index = match.index;
        alert({now, request.uid, match.index, decision.risk, decision.action});
    } else {
        outcome.verdict = Verdict::SUCCESS;
    }
    return finish();
}

std::string login_response_json(const AuthOutcome& outcome) {
    nlohmann::ordered_json j;
    const bool granted = outcome.verdict != Verdict::FAILURE && outcome.action.kind != ActionKind::Lockout;
    j["status"] = granted ? "ok" : "denied";
    if (!granted) {
        j["token_scope"] = nullptr;
    } else {
        switch (outcome.action.kind) {
            case ActionKind::StepUpAuth: j["token_scope"] = "mfa_pending"; break;
            case ActionKind::RestrictedToken: j["token_scope"] = "restricted"; break;
            default: j["token_scope"] = "full"; break;
        }
    }
    return j.dump();
}

}  // namespace honeyauth
