#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "honeyauth/authgate.hpp"
#include "honeyauth/kdf.hpp"
#include "honeyauth/policy.hpp"
#include "honeyauth/responder.hpp"

namespace honeyauth {

struct IniSection {
    std::string name;  // "" for keys before the first header
    std::vector<std::pair<std::string, std::string>> entries;
};

// [section] headers, key = value lines, '#' or ';' comments.
std::vector<IniSection> parse_ini(std::string_view text);

// Recognised sections: [policy], [responder], [authgate], [kdf.<id>].
// Unknown sections and keys are ConfigErrors.
struct AppConfig {
    Policy policy;
    ResponderConfig responder;
    KdfRegistry kdfs = KdfRegistry::defaults();
    FailMode fail_mode = FailMode::FAIL_CLOSED;
};

AppConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
AppConfig load_config(const std::filesystem::path& path);

ResponderConfig parse_responder_section(const IniSection& section);

}  // namespace honeyauth
