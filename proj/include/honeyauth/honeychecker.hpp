#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include "honeyauth/errors.hpp"

namespace honeyauth {

enum class CheckVerdict { REAL, HONEY };

std::string_view to_string(CheckVerdict v);

enum class CheckerErrorCode { RANGE, UNKNOWN, SYNTAX };

std::string_view to_string(CheckerErrorCode c);

class CheckerError : public ProtocolError {
public:
    explicit CheckerError(CheckerErrorCode code)
        : ProtocolError("ERR " + std::string(to_string(code))), code_(code) {}

    CheckerErrorCode code() const noexcept { return code_; }

private:
    CheckerErrorCode code_;
};

// uid -> (k, true index). Lives in memory only; there is deliberately no way
// to serialize it.
class CheckerIndex {
public:
    static constexpr std::size_t kMaxK = 1'000'000;

    // Throws CheckerError(RANGE) unless 0 <= index < k <= kMaxK.
    void set(std::string_view uid, std::size_t k, std::size_t index);

    // Throws CheckerError(UNKNOWN) for unenrolled uids, (RANGE) for index >= k.
    CheckVerdict check(std::string_view uid, std::size_t index) const;

    void remove(std::string_view uid);

    std::size_t size() const;

private:
    struct Entry {
        std::size_t k;
        std::size_t index;
    };
    mutable std::mutex mutex_;
    std::map<std::string, Entry, std::less<>> entries_;
};

// Wire protocol, one request per '\n'-terminated line:
//   SET <uid> <k> <index> | CHECK <uid> <index> | REMOVE <uid> | PING
// Success responses (OK, REAL, HONEY, PONG) are space-padded to 8 bytes
// including the newline; error responses (ERR RANGE|UNKNOWN|SYNTAX) to 12.
inline constexpr std::size_t kReplyWidth = 8;
inline constexpr std::size_t kErrorReplyWidth = 12;

std::string pad_reply(std::string_view body);

// Executes one request line (without its newline) and returns the padded
// response.
std::string handle_request(CheckerIndex& index, std::string_view line);

}  // namespace honeyauth
