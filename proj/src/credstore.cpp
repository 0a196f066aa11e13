#include "honeyauth/credstore.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "honeyauth/errors.hpp"
#include "honeyauth/rng.hpp"

namespace honeyauth {

using ordered_json = nlohmann::ordered_json;

bool valid_uid(std::string_view uid) {
    if (uid.empty() || uid.size() > 64) return false;
    return std::all_of(uid.begin(), uid.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '.' || c == '-';
    });
}

void SweetwordSet::validate() const {
    if (!valid_uid(uid)) throw ParseError(0, "invalid uid '" + uid + "'");
    if (salt.size() < kSaltBytes) throw ParseError(0, uid + ": salt shorter than 16 bytes");
    if (kdf.empty()) throw ParseError(0, uid + ": empty kdf id");
    if (digests.size() < 2) throw ParseError(0, uid + ": need at least 2 digests");
    std::set<Bytes> seen;
    for (const auto& d : digests) {
        if (d.empty() || d.size() != digests.front().size())
            throw ParseError(0, uid + ": digests must be non-empty and equal length");
        if (!seen.insert(d).second) throw ParseError(0, uid + ": duplicate digest");
    }
}

const SweetwordSet* CredentialStore::find(std::string_view uid) const {
    auto it = records_.find(uid);
    return it == records_.end() ? nullptr : &it->second;
}

void CredentialStore::insert(SweetwordSet record) {
    if (contains(record.uid)) throw EnrollError("duplicate uid '" + record.uid + "'");
    auto uid = record.uid;
    records_.emplace(std::move(uid), std::move(record));
}

void enroll(CredentialStore& store, std::string_view uid, std::string_view real_password,
            std::span<const std::string> sweetwords, std::size_t true_index, const KdfProfile& profile,
            std::span<const std::uint8_t> salt) {
    if (!valid_uid(uid)) throw EnrollError("invalid uid '" + std::string(uid) + "'");
    if (store.contains(uid)) throw EnrollError("duplicate uid '" + std::string(uid) + "'");
    if (sweetwords.size() < 2) throw EnrollError("need at least 2 sweetwords");
    if (true_index >= sweetwords.size()) throw EnrollError("true_index out of range");
    if (sweetwords[true_index] != real_password)
        throw EnrollError("sweetword at true_index does not equal the real password");
    if (salt.size() < kSaltBytes) throw EnrollError("salt shorter than 16 bytes");
    std::set<std::string_view> distinct(sweetwords.begin(), sweetwords.end());
    if (distinct.size() != sweetwords.size()) throw GenerationError("duplicate sweetwords");

    SweetwordSet record;
    record.uid = std::string(uid);
    record.salt.assign(salt.begin(), salt.end());
    record.kdf = profile.id;
    record.digests.reserve(sweetwords.size());
    for (const auto& word : sweetwords) record.digests.push_back(kdf_hash(word, profile, salt));
    try {
        record.validate();
    } catch (const ParseError& e) {
        throw EnrollError(e.what());
    }
    store.insert(std::move(record));
}

Bytes seeded_salt(std::uint64_t seed, std::string_view uid) {
    Rng rng(derive_seed(seed, uid));
    Bytes salt(kSaltBytes);
    for (std::size_t i = 0; i < salt.size(); i += 8) {
        auto v = rng.next();
        for (std::size_t j = 0; j < 8 && i + j < salt.size(); ++j) salt[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
    return salt;
}

std::string serialize_record(const SweetwordSet& record) {
    ordered_json j;
    j["uid"] = record.uid;
    j["salt"] = to_hex(record.salt);
    j["kdf"] = record.kdf;
    auto digests = ordered_json::array();
    for (const auto& d : record.digests) digests.push_back(to_hex(d));
    j["digests"] = std::move(digests);
    return j.dump();
}

SweetwordSet parse_record(std::string_view line, std::size_t line_no) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record must be a JSON object");
    static const std::set<std::string> kKeys{"uid", "salt", "kdf", "digests"};
    if (j.size() != kKeys.size()) throw ParseError(line_no, "record must have exactly uid, salt, kdf, digests");
    for (const auto& [key, _] : j.items())
        if (!kKeys.count(key)) throw ParseError(line_no, "unexpected field '" + key + "'");
    if (!j["uid"].is_string() || !j["salt"].is_string() || !j["kdf"].is_string() || !j["digests"].is_array())
        throw ParseError(line_no, "field has wrong type");

    SweetwordSet record;
    try {
        record.uid = j["uid"].get<std::string>();
        record.salt = from_hex(j["salt"].get<std::string>());
        record.kdf = j["kdf"].get<std::string>();
        for (const auto& d : j["digests"]) {
            if (!d.is_string()) throw ParseError(line_no, "digest must be a string");
            record.digests.push_back(from_hex(d.get<std::string>()));
        }
        record.validate();
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(line_no, e.what());
    }
    return record;
}

CredentialStore read_store(std::istream& in) {
    CredentialStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto record = parse_record(line, line_no);
        if (store.contains(record.uid)) throw ParseError(line_no, "duplicate uid '" + record.uid + "'");
        store.insert(std::move(record));
    }
    return store;
}

void write_store(const CredentialStore& store, std::ostream& out) {
    for (const auto& [uid, record] : store.records()) out << serialize_record(record) << '\n';
}

CredentialStore load_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open store '" + path.string() + "'");
    return read_store(in);
}

void save_store(const CredentialStore& store, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write store '" + tmp.string() + "'");
        write_store(store, out);
        out.flush();
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace honeyauth
