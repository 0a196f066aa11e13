#include "honeyauth/bytes.hpp"

#include <sodium.h>

#include <stdexcept>

#include "honeyauth/errors.hpp"

namespace honeyauth {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

void ensure_sodium() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium failed to initialize");
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

bool is_lower_hex(std::string_view s) {
    if (s.size() % 2 != 0) return false;
    for (char c : s)
        if (hex_value(c) < 0) return false;
    return true;
}

Bytes from_hex(std::string_view hex) {
    if (!is_lower_hex(hex)) throw ParseError(0, "invalid lowercase hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(hex_value(hex[2 * i]) << 4 | hex_value(hex[2 * i + 1]));
    return out;
}

bool ct_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) return false;
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff |= a[i] ^ b[i];
    // Keep the accumulated difference opaque to the optimizer.
    volatile std::uint8_t sink = diff;
    return sink == 0;
}

Bytes random_bytes(std::size_t n) {
    ensure_sodium();
    Bytes out(n);
    randombytes_buf(out.data(), out.size());
    return out;
}

}  // namespace honeyauth
