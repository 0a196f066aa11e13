#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace honeyauth {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> data);

// Accepts lowercase hex only; anything else throws ParseError (line 0).
Bytes from_hex(std::string_view hex);

bool is_lower_hex(std::string_view s);

// Constant-time equality. Length mismatch returns false without inspecting
// contents.
bool ct_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

Bytes random_bytes(std::size_t n);

}  // namespace honeyauth
