#include "honeyauth/honeychecker.hpp"

#include <charconv>
#include <optional>
#include <vector>

#include "honeyauth/credstore.hpp"

namespace honeyauth {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<std::size_t> parse_index(std::string_view s) {
    if (s.empty() || s.size() > 12) return std::nullopt;
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return out;
}

}  // namespace

std::string_view to_string(CheckVerdict v) { return v == CheckVerdict::REAL ? "REAL" : "HONEY"; }

std::string_view to_string(CheckerErrorCode c) {
    switch (c) {
        case CheckerErrorCode::RANGE: return "RANGE";
        case CheckerErrorCode::UNKNOWN: return "UNKNOWN";
        case CheckerErrorCode::SYNTAX: return "SYNTAX";
    }
    return "SYNTAX";
}

void CheckerIndex::set(std::string_view uid, std::size_t k, std::size_t index) {
    if (k == 0 || k > kMaxK || index >= k) throw CheckerError(CheckerErrorCode::RANGE);
    std::lock_guard lock(mutex_);
    entries_.insert_or_assign(std::string(uid), Entry{k, index});
}

CheckVerdict CheckerIndex::check(std::string_view uid, std::size_t index) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(uid);
    if (it == entries_.end()) throw CheckerError(CheckerErrorCode::UNKNOWN);
    if (index >= it->second.k) throw CheckerError(CheckerErrorCode::RANGE);
    return index == it->second.index ? CheckVerdict::REAL : CheckVerdict::HONEY;
}

void CheckerIndex::remove(std::string_view uid) {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(uid);
    if (it != entries_.end()) entries_.erase(it);
}

std::size_t CheckerIndex::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::string pad_reply(std::string_view body) {
    const std::size_t width = body.starts_with("ERR") ? kErrorReplyWidth : kReplyWidth;
    std::string out(body);
    if (out.size() + 1 < width) out.append(width - 1 - out.size(), ' ');
    out.push_back('\n');
    return out;
}

std::string handle_request(CheckerIndex& index, std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto t = tokens(line);
    auto syntax = [] { return pad_reply("ERR SYNTAX"); };
    if (t.empty()) return syntax();
    try {
        if (t[0] == "PING" && t.size() == 1) return pad_reply("PONG");
        if (t[0] == "SET" && t.size() == 4) {
            auto k = parse_index(t[2]);
            auto i = parse_index(t[3]);
            if (!valid_uid(t[1]) || !k || !i) return syntax();
            index.set(t[1], *k, *i);
            return pad_reply("OK");
        }
        if (t[0] == "CHECK" && t.size() == 3) {
            auto i = parse_index(t[2]);
            if (!valid_uid(t[1]) || !i) return syntax();
            return pad_reply(to_string(index.check(t[1], *i)));
        }
        if (t[0] == "REMOVE" && t.size() == 2) {
            if (!valid_uid(t[1])) return syntax();
            index.remove(t[1]);
            return pad_reply("OK");
        }
    } catch (const CheckerError& e) {
        return pad_reply(e.what());
    }
    return syntax();
}

}  // namespace honeyauth
