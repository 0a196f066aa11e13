#include "honeyauth/crackcalc.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "honeyauth/errors.hpp"

namespace honeyauth::crack {

namespace {

std::string group_thousands(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f", value);
    std::string digits(buf);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count > 0 && count % 3 == 0) out.insert(out.begin(), ',');
        out.insert(out.begin(), *it);
        ++count;
    }
    return out;
}

// Three significant digits below 1000, grouped integer above.
std::string compact(double value) {
    if (value >= 1000.0) return group_thousands(value);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

void require_rate(double rate) {
    if (!(rate > 0) || !std::isfinite(rate)) throw ConfigError("rate must be a positive finite number");
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string Duration::human() const {
    const double secs = static_cast<double>(seconds);
    if (secs >= kSecondsPerYear) return compact(years()) + " yrs";
    if (secs >= 60.0) return compact(days()) + " d";
    return compact(secs) + " s";
}

double entropy_bits(int length, int alphabet) {
    if (length < 1) throw ConfigError("length must be >= 1");
    if (alphabet < 2) throw ConfigError("alphabet size must be >= 2");
    return static_cast<double>(length) * std::log2(static_cast<double>(alphabet));
}

Guesses keyspace(int length, int alphabet) {
    if (length < 1) throw ConfigError("length must be >= 1");
    if (alphabet < 2) throw ConfigError("alphabet size must be >= 2");
    return boost::multiprecision::pow(Guesses(alphabet), static_cast<unsigned>(length));
}

Duration budget_time(const Guesses& budget, double rate) {
    require_rate(rate);
    if (budget < 0) throw ConfigError("budget must be >= 0");
    return Duration{budget.convert_to<long double>() / static_cast<long double>(rate)};
}

Duration exhaustive_time(int length, int alphabet, double rate) {
    return budget_time(keyspace(length, alphabet), rate);
}

std::string render_tables(std::span<const KdfProfile> profiles) {
    constexpr int kLength = 8;
    constexpr int kAlphabet = 62;
    std::ostringstream out;
    char head[160];
    std::snprintf(head, sizeof head, "Exhaustive crack time, L=%d N=%d (H = %.1f bits, %s candidates)\n", kLength,
                  kAlphabet, entropy_bits(kLength, kAlphabet), keyspace(kLength, kAlphabet).str().c_str());
    out << head;
    out << pad("Algorithm", 34) << pad("Hash Rate (guesses/s)", 24) << "Exhaustive Time\n";
    for (const auto& p : profiles) {
        std::string name = p.id + " (" + p.parameter_label() + ")";
        out << pad(name, 34) << pad("~" + compact(p.bench_rate) + "/s", 24)
            << "~" << exhaustive_time(kLength, kAlphabet, p.bench_rate).human() << '\n';
    }
    out << '\n';
    out << "Practical crack time, budget = " << compact(kPracticalBudget) << " guesses\n";
    out << pad("Algorithm", 16) << pad("Parameters", 18) << pad("Mem. Cost", 12) << pad("Hash Rate", 14)
        << "Rel. Time\n";
    const Guesses budget(static_cast<long long>(kPracticalBudget));
    for (const auto& p : profiles) {
        std::string mem;
        if (p.memory_cost >= (1ULL << 20))
            mem = std::to_string(p.memory_cost >> 20) + "MB";
        else if (p.memory_cost > 0)
            mem = "~" + std::to_string(p.memory_cost / 1024) + "KB";
        else
            mem = "-";
        out << pad(p.id, 16) << pad(p.parameter_label(), 18) << pad(mem, 12)
            << pad("~" + compact(p.bench_rate) + "/s", 14) << "~" << budget_time(budget, p.bench_rate).human()
            << '\n';
    }
    return out.str();
}

}  // namespace honeyauth::crack
