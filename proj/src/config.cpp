#include "honeyauth/config.hpp"

#include <charconv>
#include <set>

#include "honeyauth/errors.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

double parse_double(std::string_view key, std::string_view value) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
        throw ConfigError("key '" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
        throw ConfigError("key '" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) + "'");
    return out;
}

void reject_duplicates(const IniSection& section) {
    std::set<std::string> seen;
    for (const auto& [k, _] : section.entries)
        if (!seen.insert(k).second) throw ConfigError("duplicate key '" + k + "' in [" + section.name + "]");
}

KdfProfile parse_kdf_section(std::string_view id, const IniSection& section) {
    KdfProfile p;
    p.id = std::string(id);
    bool have_algorithm = false;
    for (const auto& [key, value] : section.entries) {
        if (key == "algorithm") {
            p.algorithm = parse_kdf_algorithm(value);
            have_algorithm = true;
        } else if (key == "memory_cost") p.memory_cost = parse_u64(key, value);
        else if (key == "time_cost") p.time_cost = static_cast<std::uint32_t>(parse_u64(key, value));
        else if (key == "parallelism") p.parallelism = static_cast<std::uint32_t>(parse_u64(key, value));
        else if (key == "block_size") p.block_size = static_cast<std::uint32_t>(parse_u64(key, value));
        else if (key == "bench_rate") p.bench_rate = parse_double(key, value);
        else throw ConfigError("unknown key '" + key + "' in [" + section.name + "]");
    }
    if (!have_algorithm) throw ConfigError("[" + section.name + "] needs an algorithm");
    return p;
}

}  // namespace

std::vector<IniSection> parse_ini(std::string_view text) {
    std::vector<IniSection> sections(1);
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config line " + std::to_string(line_no) + ": bad section header");
            sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), {}});
            continue;
        }
        line = trim(strip_comment(line));
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        sections.back().entries.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    return sections;
}

ResponderConfig parse_responder_section(const IniSection& section) {
    reject_duplicates(section);
    ResponderConfig cfg;
    for (const auto& [key, value] : section.entries) {
        if (key == "w_ip") cfg.w_ip = parse_double(key, value);
        else if (key == "w_geo") cfg.w_geo = parse_double(key, value);
        else if (key == "w_device") cfg.w_device = parse_double(key, value);
        else if (key == "w_history") cfg.w_history = parse_double(key, value);
        else if (key == "honey_bonus") cfg.honey_bonus = parse_double(key, value);
        else if (key == "t_silent") cfg.t_silent = parse_double(key, value);
        else if (key == "t_stepup") cfg.t_stepup = parse_double(key, value);
        else if (key == "t_restrict") cfg.t_restrict = parse_double(key, value);
        else if (key == "window_hours") cfg.window_hours = parse_double(key, value);
        else if (key == "lockout_minutes") cfg.lockout_minutes = static_cast<int>(parse_u64(key, value));
        else throw ConfigError("unknown key '" + key + "' in [responder]");
    }
    cfg.validate();
    return cfg;
}

AppConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    AppConfig cfg;
    for (const auto& section : parse_ini(text)) {
        if (section.name.empty()) {
            if (!section.entries.empty()) throw ConfigError("config keys must appear inside a [section]");
            continue;
        }
        if (section.name == "policy") {
            std::string body;
            for (const auto& [k, v] : section.entries) body += k + "=" + v + "\n";
            cfg.policy = parse_policy(body);
            if (cfg.policy.dictcheck && !cfg.policy.dictpath.empty()) load_wordlist(cfg.policy, base_dir);
        } else if (section.name == "responder") {
            cfg.responder = parse_responder_section(section);
        } else if (section.name == "authgate") {
            reject_duplicates(section);
            for (const auto& [k, v] : section.entries) {
                if (k == "fail_mode") cfg.fail_mode = parse_fail_mode(v);
                else throw ConfigError("unknown key '" + k + "' in [authgate]");
            }
        } else if (section.name.starts_with("kdf.")) {
            reject_duplicates(section);
            cfg.kdfs.add(parse_kdf_section(section.name.substr(4), section));
        } else {
            throw ConfigError("unknown config section [" + section.name + "]");
        }
    }
    return cfg;
}

AppConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path), path.parent_path()); }

}  // namespace honeyauth
