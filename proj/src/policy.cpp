#include "honeyauth/policy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "honeyauth/errors.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

enum class CharClass { digit, upper, lower, other };

CharClass classify(unsigned char c) {
    if (c >= '0' && c <= '9') return CharClass::digit;
    if (c >= 'A' && c <= 'Z') return CharClass::upper;
    if (c >= 'a' && c <= 'z') return CharClass::lower;
    return CharClass::other;
}

int parse_int(std::string_view key, std::string_view value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
        throw ConfigError("policy key '" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
    return out;
}

}  // namespace

void Policy::validate() const {
    if (minlen < 1) throw ConfigError("minlen must be >= 1");
    if (minclass < 0 || minclass > 4) throw ConfigError("minclass must be in [0, 4]");
    if (maxrepeat < 1) throw ConfigError("maxrepeat must be >= 1");
    if (dcredit < 0 || ucredit < 0 || lcredit < 0 || ocredit < 0)
        throw ConfigError("credit minimums must be >= 0");
}

bool Policy::operator==(const Policy& o) const {
    return minlen == o.minlen && minclass == o.minclass && maxrepeat == o.maxrepeat && dictcheck == o.dictcheck &&
           dictpath == o.dictpath && dcredit == o.dcredit && ucredit == o.ucredit && lcredit == o.lcredit &&
           ocredit == o.ocredit;
}

std::string_view to_string(Violation v) {
    switch (v) {
        case Violation::MINLEN: return "MINLEN";
        case Violation::MINCLASS: return "MINCLASS";
        case Violation::MAXREPEAT: return "MAXREPEAT";
        case Violation::DICT: return "DICT";
        case Violation::CLASSMIN: return "CLASSMIN";
    }
    return "?";
}

std::string_view to_string(SetStatus s) {
    switch (s) {
        case SetStatus::OK: return "OK";
        case SetStatus::DISTINGUISHABLE: return "DISTINGUISHABLE";
        case SetStatus::ALL_REJECTED: return "ALL_REJECTED";
    }
    return "?";
}

Policy parse_policy(std::string_view text) {
    Policy p;
    std::map<std::string, int, std::less<>> seen;
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("policy line " + std::to_string(line_no) + ": expected key=value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (seen.count(key)) throw ConfigError("duplicate policy key '" + std::string(key) + "'");
        seen.emplace(std::string(key), 1);
        if (key == "minlen") p.minlen = parse_int(key, value);
        else if (key == "minclass") p.minclass = parse_int(key, value);
        else if (key == "maxrepeat") p.maxrepeat = parse_int(key, value);
        else if (key == "dcredit") p.dcredit = parse_int(key, value);
        else if (key == "ucredit") p.ucredit = parse_int(key, value);
        else if (key == "lcredit") p.lcredit = parse_int(key, value);
        else if (key == "ocredit") p.ocredit = parse_int(key, value);
        else if (key == "dictcheck") {
            int v = parse_int(key, value);
            if (v != 0 && v != 1) throw ConfigError("policy key 'dictcheck' expects 0 or 1");
            p.dictcheck = v == 1;
        } else if (key == "dictpath") {
            if (value.empty()) throw ConfigError("policy key 'dictpath' expects a path");
            p.dictpath = std::string(value);
        } else
            throw ConfigError("unknown policy key '" + std::string(key) + "'");
    }
    p.validate();
    return p;
}

std::string render_policy(const Policy& p) {
    std::ostringstream out;
    out << "minlen=" << p.minlen << '\n'
        << "minclass=" << p.minclass << '\n'
        << "maxrepeat=" << p.maxrepeat << '\n'
        << "dictcheck=" << (p.dictcheck ? 1 : 0) << '\n';
    if (!p.dictpath.empty()) out << "dictpath=" << p.dictpath << '\n';
    out << "dcredit=" << p.dcredit << '\n'
        << "ucredit=" << p.ucredit << '\n'
        << "lcredit=" << p.lcredit << '\n'
        << "ocredit=" << p.ocredit << '\n';
    return out.str();
}

Policy load_policy(const std::filesystem::path& path) {
    auto policy = parse_policy(read_file(path));
    if (policy.dictcheck && !policy.dictpath.empty()) load_wordlist(policy, path.parent_path());
    return policy;
}

void load_wordlist(Policy& policy, const std::filesystem::path& base_dir) {
    if (policy.dictpath.empty()) throw ConfigError("dictcheck enabled without dictpath");
    std::filesystem::path path(policy.dictpath);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    set_wordlist(policy, read_lines(path));
}

void set_wordlist(Policy& policy, std::span<const std::string> words) {
    auto set = std::make_shared<std::set<std::string, std::less<>>>();
    for (const auto& w : words) set->insert(to_lower(w));
    policy.wordlist = std::move(set);
}

std::vector<Violation> check_password(const Policy& policy, std::string_view pw) {
    std::vector<Violation> out;
    if (utf8_length(pw) < static_cast<std::size_t>(policy.minlen)) out.push_back(Violation::MINLEN);

    int counts[4] = {0, 0, 0, 0};
    int longest = 0;
    int run = 0;
    char prev = 0;
    for (std::size_t i = 0; i < pw.size(); ++i) {
        char c = pw[i];
        ++counts[static_cast<int>(classify(static_cast<unsigned char>(c)))];
        run = (i > 0 && c == prev) ? run + 1 : 1;
        longest = std::max(longest, run);
        prev = c;
    }
    int classes = static_cast<int>(std::count_if(std::begin(counts), std::end(counts), [](int n) { return n > 0; }));
    if (classes < policy.minclass) out.push_back(Violation::MINCLASS);
    if (longest > policy.maxrepeat) out.push_back(Violation::MAXREPEAT);
    if (policy.dictcheck && policy.wordlist && policy.wordlist->count(to_lower(pw)))
        out.push_back(Violation::DICT);
    if (counts[0] < policy.dcredit || counts[1] < policy.ucredit || counts[2] < policy.lcredit ||
        counts[3] < policy.ocredit)
        out.push_back(Violation::CLASSMIN);
    return out;
}

SetReport check_sweetword_set(const Policy& policy, std::span<const std::string> sweetwords) {
    if (sweetwords.empty()) throw ParseError(0, "empty sweetword list");
    SetReport report;
    report.verdicts.reserve(sweetwords.size());
    for (std::size_t i = 0; i < sweetwords.size(); ++i) {
        report.verdicts.push_back(check_password(policy, sweetwords[i]));
        if (!report.verdicts.back().empty()) report.offending.push_back(i);
    }
    if (report.offending.empty())
        report.status = SetStatus::OK;
    else if (report.offending.size() == sweetwords.size())
        report.status = SetStatus::ALL_REJECTED;
    else
        report.status = SetStatus::DISTINGUISHABLE;
    return report;
}

}  // namespace honeyauth
