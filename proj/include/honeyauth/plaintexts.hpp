#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/corpus_model.hpp"
#include "honeyauth/credstore.hpp"
#include "honeyauth/decoygen.hpp"
#include "honeyauth/gauntlet.hpp"
#include "honeyauth/kdf.hpp"

// Test-harness plaintext files. These never feed a serving path.
namespace honeyauth {

struct AccountInput {
    std::string uid;
    std::string password;
    std::optional<PiiRecord> pii;
};

// One account per line, any of:
//   {"uid": "...", "password": "...", "pii": {...}}
//   uid<TAB>password
//   password                      (uid becomes u00001, u00002, ... by line)
// Blank lines are skipped. Throws ParseError naming the line.
std::vector<AccountInput> parse_accounts(std::string_view text);
std::vector<AccountInput> load_accounts(const std::filesystem::path& path);

std::string pii_to_json(const PiiRecord& pii);
PiiRecord pii_from_json(std::string_view text);

// Assembled sweetword set with the true index, as written by `gen`.
struct PlaintextRecord {
    std::string uid;
    std::vector<std::string> sweetwords;
    std::size_t true_index = 0;
    std::optional<PiiRecord> pii;

    const std::string& real() const { return sweetwords.at(true_index); }
    std::vector<std::string> decoys() const;
};

std::string serialize_plaintext(const PlaintextRecord& record);
PlaintextRecord parse_plaintext(std::string_view line, std::size_t line_no = 0);
std::vector<PlaintextRecord> parse_plaintexts(std::string_view text);
std::vector<PlaintextRecord> load_plaintexts(const std::filesystem::path& path);

// True when the text holds assembled sweetword sets rather than bare accounts.
bool looks_like_plaintexts(std::string_view text);

// Generates and assembles a set per account. Per-account seeds derive from
// (seed, uid), so output is independent of thread count.
std::vector<PlaintextRecord> generate_sets(std::span<const AccountInput> accounts, const GeneratorConfig& cfg,
                                           const CorpusModel* model, unsigned threads = 1);

// Enrolls every record with a salt derived from (seed, uid). Hashing runs in
// parallel; insertion order is fixed.
void enroll_all(CredentialStore& store, std::span<const PlaintextRecord> records, const KdfProfile& profile,
                std::uint64_t seed, unsigned threads = 1);

std::vector<Account> to_accounts(std::span<const PlaintextRecord> records);
std::vector<SweepInput> to_sweep_inputs(std::span<const AccountInput> accounts);

}  // namespace honeyauth
