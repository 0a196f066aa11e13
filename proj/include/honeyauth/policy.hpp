#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace honeyauth {

// pwquality-style composition policy. The credit fields are absolute minimum
// counts (0 disables), not libpwquality's signed credits.
struct Policy {
    int minlen = 8;
    int minclass = 1;
    int maxrepeat = 4;
    bool dictcheck = false;
    std::string dictpath;
    int dcredit = 0;
    int ucredit = 0;
    int lcredit = 0;
    int ocredit = 0;

    // Lowercased words; attached by load_wordlist(), not part of the parsed text.
    std::shared_ptr<const std::set<std::string, std::less<>>> wordlist;

    void validate() const;

    bool operator==(const Policy& other) const;
};

enum class Violation { MINLEN, MINCLASS, MAXREPEAT, DICT, CLASSMIN };

std::string_view to_string(Violation v);

// key=value lines, '#' comments. Unknown keys, duplicate keys and non-integer
// values are rejected with ConfigError naming the key.
Policy parse_policy(std::string_view text);

// Canonical text form; parse_policy(render_policy(p)) == p.
std::string render_policy(const Policy& policy);

Policy load_policy(const std::filesystem::path& path);

// Reads policy.dictpath (relative paths resolve against base_dir) into
// policy.wordlist.
void load_wordlist(Policy& policy, const std::filesystem::path& base_dir = {});
void set_wordlist(Policy& policy, std::span<const std::string> words);

// Empty result means the password passes.
std::vector<Violation> check_password(const Policy& policy, std::string_view password);

enum class SetStatus { OK, DISTINGUISHABLE, ALL_REJECTED };

std::string_view to_string(SetStatus s);

struct SetReport {
    SetStatus status = SetStatus::OK;
    std::vector<std::vector<Violation>> verdicts;  // per index
    std::vector<std::size_t> offending;            // indices that fail
};

// Throws ParseError on an empty list.
SetReport check_sweetword_set(const Policy& policy, std::span<const std::string> sweetwords);

}  // namespace honeyauth
