#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/bytes.hpp"

namespace honeyauth {

enum class KdfAlgorithm { argon2id, bcrypt, scrypt, pbkdf2_sha256, test_hmac };

std::string_view to_string(KdfAlgorithm a);
KdfAlgorithm parse_kdf_algorithm(std::string_view name);

// Cost parameters per algorithm:
//   argon2id       memory_cost = bytes, time_cost = passes, parallelism = lanes (1 only)
//   bcrypt         time_cost = log2 work factor
//   scrypt         memory_cost = 128 * r * N bytes, block_size = r, parallelism = p
//   pbkdf2_sha256  time_cost = iterations
//   test_hmac      single HMAC-SHA256 keyed by the salt; costs ignored
struct KdfProfile {
    std::string id;
    KdfAlgorithm algorithm = KdfAlgorithm::test_hmac;
    std::uint64_t memory_cost = 0;
    std::uint32_t time_cost = 1;
    std::uint32_t parallelism = 1;
    std::uint32_t block_size = 8;
    double bench_rate = 1.0;  // guesses per second on reference hardware

    // scrypt N.
    std::uint64_t scrypt_n() const;

    // Short parameter label, e.g. "m=512MB, t=3".
    std::string parameter_label() const;

    // Throws ConfigError when an invariant is violated.
    void validate() const;

    bool operator==(const KdfProfile&) const = default;
};

inline constexpr std::size_t kSaltBytes = 16;

// Digest length in bytes produced for the algorithm.
std::size_t digest_size(KdfAlgorithm a);

Bytes kdf_hash(std::string_view password, const KdfProfile& profile, std::span<const std::uint8_t> salt);

class KdfRegistry {
public:
    // argon2id, bcrypt, scrypt, pbkdf2-sha256, test-kdf.
    static KdfRegistry defaults();

    void add(KdfProfile profile);
    bool contains(std::string_view id) const;

    // Throws ConfigError for unknown ids.
    const KdfProfile& get(std::string_view id) const;

    Bytes hash(std::string_view id, std::string_view password, std::span<const std::uint8_t> salt) const {
        return kdf_hash(password, get(id), salt);
    }

    std::vector<std::string> ids() const;

    // The three rows of the crack-time tables, in table order.
    std::vector<KdfProfile> table_profiles() const;

private:
    std::map<std::string, KdfProfile, std::less<>> profiles_;
};

}  // namespace honeyauth
