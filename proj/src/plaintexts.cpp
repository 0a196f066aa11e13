#include "honeyauth/plaintexts.hpp"

#include <cstdio>

#include <json.hpp>

#include "honeyauth/errors.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

PiiRecord pii_from(const json& j) {
    if (!j.is_object()) throw ConfigError("pii must be a JSON object");
    PiiRecord pii;
    for (const auto& [key, value] : j.items()) {
        if (key == "username") pii.username = value.get<std::string>();
        else if (key == "birth_year") {
            if (!value.is_null()) pii.birth_year = value.get<int>();
        } else if (key == "name_tokens") pii.name_tokens = value.get<std::vector<std::string>>();
        else if (key == "keyboard_layout") pii.keyboard_layout = value.get<std::string>();
        else throw ConfigError("unknown pii key '" + key + "'");
    }
    pii.validate();
    return pii;
}

ordered_json pii_to(const PiiRecord& pii) {
    ordered_json j;
    j["username"] = pii.username;
    j["birth_year"] = pii.birth_year ? json(*pii.birth_year) : json(nullptr);
    j["name_tokens"] = pii.name_tokens;
    j["keyboard_layout"] = pii.keyboard_layout;
    return j;
}

std::string_view first_content_line(std::string_view text) {
    for (auto line : split_lines(text))
        if (!trim(line).empty()) return trim(line);
    return {};
}

}  // namespace

std::vector<AccountInput> parse_accounts(std::string_view text) {
    std::vector<AccountInput> out;
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (trim(raw).empty()) continue;
        AccountInput a;
        try {
            if (trim(raw).front() == '{') {
                auto j = json::parse(raw);
                a.uid = j.at("uid").get<std::string>();
                a.password = j.at("password").get<std::string>();
                if (j.contains("pii") && !j["pii"].is_null()) a.pii = pii_from(j["pii"]);
            } else if (auto tab = raw.find('\t'); tab != std::string_view::npos) {
                a.uid = std::string(raw.substr(0, tab));
                a.password = std::string(raw.substr(tab + 1));
            } else {
                char uid[32];
                std::snprintf(uid, sizeof uid, "u%05zu", out.size() + 1);
                a.uid = uid;
                a.password = std::string(raw);
            }
        } catch (const json::exception& e) {
            throw ParseError(line_no, std::string("bad account JSON: ") + e.what());
        } catch (const ConfigError& e) {
            throw ParseError(line_no, e.what());
        }
        if (!valid_uid(a.uid)) throw ParseError(line_no, "invalid uid '" + a.uid + "'");
        if (a.password.empty()) throw ParseError(line_no, "empty password");
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<AccountInput> load_accounts(const std::filesystem::path& path) { return parse_accounts(read_file(path)); }

std::string pii_to_json(const PiiRecord& pii) { return pii_to(pii).dump(); }

PiiRecord pii_from_json(std::string_view text) {
    try {
        return pii_from(json::parse(text));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad pii JSON: ") + e.what());
    }
}

std::vector<std::string> PlaintextRecord::decoys() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sweetwords.size(); ++i)
        if (i != true_index) out.push_back(sweetwords[i]);
    return out;
}

std::string serialize_plaintext(const PlaintextRecord& record) {
    ordered_json j;
    j["uid"] = record.uid;
    j["sweetwords"] = record.sweetwords;
    j["true_index"] = record.true_index;
    if (record.pii) j["pii"] = pii_to(*record.pii);
    return j.dump();
}

PlaintextRecord parse_plaintext(std::string_view line, std::size_t line_no) {
    PlaintextRecord r;
    try {
        auto j = json::parse(line);
        r.uid = j.at("uid").get<std::string>();
        r.sweetwords = j.at("sweetwords").get<std::vector<std::string>>();
        r.true_index = j.at("true_index").get<std::size_t>();
        if (j.contains("pii") && !j["pii"].is_null()) r.pii = pii_from(j["pii"]);
    } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("bad plaintext record: ") + e.what());
    } catch (const ConfigError& e) {
        throw ParseError(line_no, e.what());
    }
    if (!valid_uid(r.uid)) throw ParseError(line_no, "invalid uid '" + r.uid + "'");
    if (r.sweetwords.size() < 2) throw ParseError(line_no, "a sweetword set needs at least 2 entries");
    if (r.true_index >= r.sweetwords.size()) throw ParseError(line_no, "true_index out of range");
    return r;
}

std::vector<PlaintextRecord> parse_plaintexts(std::string_view text) {
    std::vector<PlaintextRecord> out;
    std::size_t line_no = 0;
    for (auto line : split_lines(text)) {
        ++line_no;
        if (trim(line).empty()) continue;
        out.push_back(parse_plaintext(line, line_no));
    }
    return out;
}

std::vector<PlaintextRecord> load_plaintexts(const std::filesystem::path& path) {
    return parse_plaintexts(read_file(path));
}

bool looks_like_plaintexts(std::string_view text) {
    auto line = first_content_line(text);
    if (line.empty() || line.front() != '{') return false;
    try {
        return json::parse(line).contains("sweetwords");
    } catch (const json::exception&) {
        return false;
    }
}

std::vector<PlaintextRecord> generate_sets(std::span<const AccountInput> accounts, const GeneratorConfig& cfg,
                                           const CorpusModel* model, unsigned threads) {
    cfg.validate();
    std::vector<PlaintextRecord> out(accounts.size());
    parallel_for(accounts.size(), threads, [&](std::size_t i) {
        const auto& a = accounts[i];
        GeneratorConfig local = cfg;
        local.seed = derive_seed(cfg.seed, a.uid);
        auto decoys = generate(a.password, local, model, a.pii ? &*a.pii : nullptr);
        auto set = assemble_sweetwords(a.password, decoys, derive_seed(local.seed, std::uint64_t{2}));
        out[i] = {a.uid, std::move(set.sweetwords), set.true_index, a.pii};
    });
    return out;
}

void enroll_all(CredentialStore& store, std::span<const PlaintextRecord> records, const KdfProfile& profile,
                std::uint64_t seed, unsigned threads) {
    std::vector<SweetwordSet> built(records.size());
    parallel_for(records.size(), threads, [&](std::size_t i) {
        const auto& r = records[i];
        CredentialStore scratch;
        enroll(scratch, r.uid, r.real(), r.sweetwords, r.true_index, profile, seeded_salt(seed, r.uid));
        built[i] = scratch.records().begin()->second;
    });
    for (auto& record : built) {
        if (store.contains(record.uid)) throw EnrollError("uid '" + record.uid + "' is already enrolled");
        store.insert(std::move(record));
    }
}

std::vector<Account> to_accounts(std::span<const PlaintextRecord> records) {
    std::vector<Account> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({r.real(), r.decoys(), r.pii});
    return out;
}

std::vector<SweepInput> to_sweep_inputs(std::span<const AccountInput> accounts) {
    std::vector<SweepInput> out;
    out.reserve(accounts.size());
    for (const auto& a : accounts) out.push_back({a.password, a.pii});
    return out;
}

}  // namespace honeyauth
