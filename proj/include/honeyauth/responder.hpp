#pragma once

#include <chrono>
#include <compare>
#include <deque>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>

namespace honeyauth {

using Clock = std::chrono::system_clock;
using TimePoint = Clock::time_point;

// Pre-computed context signals attached to a login. Scalars are clamped to
// [0, 1] on use; 1 is worst.
struct RiskContext {
    double ip_reputation = 0;
    double geo_anomaly = 0;
    bool device_mismatch = false;
    double history_anomaly = 0;

    RiskContext clamped() const;
};

// Ordered by severity.
enum class ActionKind { Allow = 0, SilentLog, StepUpAuth, RestrictedToken, Lockout };

struct ResponseAction {
    ActionKind kind = ActionKind::Allow;
    std::chrono::minutes lockout{0};  // Lockout only

    auto operator<=>(const ResponseAction& o) const { return kind <=> o.kind; }
    bool operator==(const ResponseAction& o) const { return kind == o.kind && lockout == o.lockout; }
};

std::string_view to_string(ActionKind k);
// "SilentLog", "Lockout(15m)"
std::string to_string(const ResponseAction& a);

struct ResponderConfig {
    double w_ip = 0.25;
    double w_geo = 0.25;
    double w_device = 0.25;
    double w_history = 0.25;
    double honey_bonus = 0.4;
    double t_silent = 0.3;    // below: SilentLog
    double t_stepup = 0.6;    // below: StepUpAuth
    double t_restrict = 0.85; // below: RestrictedToken, else Lockout
    double window_hours = 24;
    int lockout_minutes = 15;

    // Non-negative weights, 0 <= t_silent <= t_stepup <= t_restrict <= 1.
    void validate() const;
};

// clamp(w . signals + honey_bonus * honey_event, 0, 1)
double score_risk(const ResponderConfig& cfg, const RiskContext& ctx, bool honey_event);

// Without a honeyword event the answer is always Allow.
ResponseAction decide_action(const ResponderConfig& cfg, double risk, bool honey_event);

// Raises `base` one level per prior honeyword event inside the window ending
// at `now`, capped at Lockout. `history` is ordered by time.
ResponseAction escalate(const ResponderConfig& cfg, ResponseAction base, std::span<const TimePoint> history,
                        TimePoint now);

struct Decision {
    double risk = 0;
    ResponseAction action;
};

// Stateful wrapper: keeps per-uid honeyword history for escalation.
class Responder {
public:
    explicit Responder(ResponderConfig cfg = {});

    const ResponderConfig& config() const { return cfg_; }

    // Scores, decides and, for honeyword events, escalates against this uid's
    // history before recording the new event.
    Decision respond(std::string_view uid, const RiskContext& ctx, bool honey_event, TimePoint now);

    std::size_t history_size(std::string_view uid) const;

private:
    ResponderConfig cfg_;
    mutable std::mutex mutex_;
    std::map<std::string, std::deque<TimePoint>, std::less<>> history_;
};

}  // namespace honeyauth
