#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/bytes.hpp"
#include "honeyauth/kdf.hpp"

namespace honeyauth {

// [A-Za-z0-9_.-]{1,64}; shared by the store and the checker protocol.
bool valid_uid(std::string_view uid);

// One account's hashed sweetwords. Nothing here says which position is real.
struct SweetwordSet {
    std::string uid;
    Bytes salt;
    std::string kdf;
    std::vector<Bytes> digests;

    std::size_t k() const { return digests.size(); }

    // Throws ParseError (line 0) describing the first violated invariant.
    void validate() const;

    bool operator==(const SweetwordSet&) const = default;
};

class CredentialStore {
public:
    bool contains(std::string_view uid) const { return records_.find(uid) != records_.end(); }
    const SweetwordSet* find(std::string_view uid) const;
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    // Throws EnrollError on a duplicate uid.
    void insert(SweetwordSet record);

    // Sorted by uid.
    const std::map<std::string, SweetwordSet, std::less<>>& records() const { return records_; }

    bool operator==(const CredentialStore&) const = default;

private:
    std::map<std::string, SweetwordSet, std::less<>> records_;
};

// Hash every sweetword under one shared salt and append the record. The true
// index is checked against real_password but never written to the store; the
// caller forwards it to the honeychecker.
void enroll(CredentialStore& store, std::string_view uid, std::string_view real_password,
            std::span<const std::string> sweetwords, std::size_t true_index, const KdfProfile& profile,
            std::span<const std::uint8_t> salt);

// Reproducible per-account salt for seeded pipelines and tests.
Bytes seeded_salt(std::uint64_t seed, std::string_view uid);

// JSON-lines: {"uid","salt","kdf","digests"} per line, sorted by uid.
std::string serialize_record(const SweetwordSet& record);
SweetwordSet parse_record(std::string_view line, std::size_t line_no = 0);

CredentialStore read_store(std::istream& in);
void write_store(const CredentialStore& store, std::ostream& out);

CredentialStore load_store(const std::filesystem::path& path);
void save_store(const CredentialStore& store, const std::filesystem::path& path);

}  // namespace honeyauth
