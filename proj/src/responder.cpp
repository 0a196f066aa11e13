#include "honeyauth/responder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "honeyauth/errors.hpp"

namespace honeyauth {

namespace {

double clamp01(double v) {
    if (std::isnan(v)) return 0;
    return std::clamp(v, 0.0, 1.0);
}

std::chrono::nanoseconds window(const ResponderConfig& cfg) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double, std::ratio<3600>>(cfg.window_hours));
}

}  // namespace

RiskContext RiskContext::clamped() const {
    return {clamp01(ip_reputation), clamp01(geo_anomaly), device_mismatch, clamp01(history_anomaly)};
}

std::string_view to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Allow: return "Allow";
        case ActionKind::SilentLog: return "SilentLog";
        case ActionKind::StepUpAuth: return "StepUpAuth";
        case ActionKind::RestrictedToken: return "RestrictedToken";
        case ActionKind::Lockout: return "Lockout";
    }
    return "?";
}

std::string to_string(const ResponseAction& a) {
    std::string out(to_string(a.kind));
    if (a.kind == ActionKind::Lockout) out += "(" + std::to_string(a.lockout.count()) + "m)";
    return out;
}

void ResponderConfig::validate() const {
    for (double w : {w_ip, w_geo, w_device, w_history, honey_bonus})
        if (!(w >= 0) || !std::isfinite(w)) throw ConfigError("responder weights must be finite and >= 0");
    if (!(0 <= t_silent && t_silent <= t_stepup && t_stepup <= t_restrict && t_restrict <= 1))
        throw ConfigError("responder thresholds must satisfy 0 <= t_silent <= t_stepup <= t_restrict <= 1");
    if (!(window_hours >= 0)) throw ConfigError("window_hours must be >= 0");
    if (lockout_minutes < 1) throw ConfigError("lockout_minutes must be >= 1");
}

double score_risk(const ResponderConfig& cfg, const RiskContext& raw, bool honey_event) {
    auto ctx = raw.clamped();
    double risk = cfg.w_ip * ctx.ip_reputation + cfg.w_geo * ctx.geo_anomaly +
                  cfg.w_device * (ctx.device_mismatch ? 1.0 : 0.0) + cfg.w_history * ctx.history_anomaly +
                  (honey_event ? cfg.honey_bonus : 0.0);
    return clamp01(risk);
}

ResponseAction decide_action(const ResponderConfig& cfg, double risk, bool honey_event) {
    if (!honey_event) return {ActionKind::Allow};
    if (risk < cfg.t_silent) return {ActionKind::SilentLog};
    if (risk < cfg.t_stepup) return {ActionKind::StepUpAuth};
    if (risk < cfg.t_restrict) return {ActionKind::RestrictedToken};
    return {ActionKind::Lockout, std::chrono::minutes(cfg.lockout_minutes)};
}

ResponseAction escalate(const ResponderConfig& cfg, ResponseAction base, std::span<const TimePoint> history,
                        TimePoint now) {
    const auto w = window(cfg);
    int recent = 0;
    for (auto t : history)
        if (t <= now && now - t <= w) ++recent;
    int level = std::min(static_cast<int>(base.kind) + recent, static_cast<int>(ActionKind::Lockout));
    if (level == static_cast<int>(base.kind)) return base;
    ResponseAction out{static_cast<ActionKind>(level)};
    if (out.kind == ActionKind::Lockout) out.lockout = std::chrono::minutes(cfg.lockout_minutes);
    return out;
}

Responder::Responder(ResponderConfig cfg) : cfg_(cfg) { cfg_.validate(); }

Decision Responder::respond(std::string_view uid, const RiskContext& ctx, bool honey_event, TimePoint now) {
    Decision d;
    d.risk = score_risk(cfg_, ctx, honey_event);
    d.action = decide_action(cfg_, d.risk, honey_event);
    if (!honey_event) return d;

    // Escalation saturates after this many prior events, so older ones never
    // matter; keeping the deque this short also bounds memory under a flood.
    constexpr std::size_t kMaxHistory = static_cast<std::size_t>(ActionKind::Lockout);

    std::lock_guard lock(mutex_);
    auto it = history_.find(uid);
    if (it == history_.end()) it = history_.emplace(std::string(uid), std::deque<TimePoint>{}).first;
    auto& events = it->second;
    const auto w = window(cfg_);
    while (!events.empty() && now - events.front() > w) events.pop_front();
    std::array<TimePoint, kMaxHistory> prior;
    std::copy(events.begin(), events.end(), prior.begin());
    d.action = escalate(cfg_, d.action, std::span<const TimePoint>(prior.data(), events.size()), now);
    events.push_back(now);
    if (events.size() > kMaxHistory) events.pop_front();
    return d;
}

std::size_t Responder::history_size(std::string_view uid) const {
    std::lock_guard lock(mutex_);
    auto it = history_.find(uid);
    return it == history_.end() ? 0 : it->second.size();
}

}  // namespace honeyauth
