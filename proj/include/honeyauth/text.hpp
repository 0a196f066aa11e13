#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace honeyauth {

std::string_view trim(std::string_view s);

// Drops everything from the first '#'.
std::string_view strip_comment(std::string_view s);

// Splits on '\n', dropping a trailing '\r' from each line. A final newline does
// not produce an empty trailing line.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string> split(std::string_view s, char sep);

std::string to_lower(std::string_view s);

// Code points in a UTF-8 string; invalid bytes count as one each.
std::size_t utf8_length(std::string_view s);

bool valid_utf8(std::string_view s);

std::string read_file(const std::filesystem::path& path);

// Non-empty trimmed lines of a UTF-8 text file.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Levenshtein distance over bytes (unit insert/delete/substitute).
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace honeyauth
