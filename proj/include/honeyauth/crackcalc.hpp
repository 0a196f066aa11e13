#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>

#include "honeyauth/kdf.hpp"

namespace honeyauth::crack {

using Guesses = boost::multiprecision::cpp_int;

// Julian year, so table tolerances are reproducible.
inline constexpr double kSecondsPerYear = 31'557'600.0;
inline constexpr double kSecondsPerDay = 86'400.0;

// Reduced search budget used for the practical crack-time table.
inline constexpr double kPracticalBudget = 5e9;

struct Duration {
    long double seconds = 0;

    double years() const { return static_cast<double>(seconds / kSecondsPerYear); }
    double days() const { return static_cast<double>(seconds / kSecondsPerDay); }

    // "115,313 yrs", "34.6 yrs", "12.9 d", "42.0 s"
    std::string human() const;
};

// H = L * log2(N). Requires L >= 1, N >= 2.
double entropy_bits(int length, int alphabet);

// Exact N^L.
Guesses keyspace(int length, int alphabet);

Duration exhaustive_time(int length, int alphabet, double rate);

Duration budget_time(const Guesses& budget, double rate);

// Plain-text reproduction of the exhaustive and budget crack-time tables for
// a random 8-character alphanumeric password.
std::string render_tables(std::span<const KdfProfile> profiles);

}  // namespace honeyauth::crack
