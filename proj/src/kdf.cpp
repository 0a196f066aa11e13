#include "honeyauth/kdf.hpp"

#include <crypt.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <sodium.h>

#include <array>
#include <bit>
#include <cstring>

#include "honeyauth/errors.hpp"

namespace honeyauth {

namespace {

constexpr std::string_view kBcryptAlphabet = "./ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

std::string bcrypt_b64_encode(std::span<const std::uint8_t> data) {
    std::string out;
    std::size_t i = 0;
    while (i < data.size()) {
        unsigned c1 = data[i++];
        out.push_back(kBcryptAlphabet[c1 >> 2]);
        c1 = (c1 & 0x03) << 4;
        if (i >= data.size()) {
            out.push_back(kBcryptAlphabet[c1]);
            break;
        }
        unsigned c2 = data[i++];
        c1 |= c2 >> 4;
        out.push_back(kBcryptAlphabet[c1]);
        c1 = (c2 & 0x0f) << 2;
        if (i >= data.size()) {
            out.push_back(kBcryptAlphabet[c1]);
            break;
        }
        c2 = data[i++];
        c1 |= c2 >> 6;
        out.push_back(kBcryptAlphabet[c1]);
        out.push_back(kBcryptAlphabet[c2 & 0x3f]);
    }
    return out;
}

Bytes bcrypt_b64_decode(std::string_view text, std::size_t max_bytes) {
    auto value = [](char c) -> unsigned {
        auto pos = kBcryptAlphabet.find(c);
        if (pos == std::string_view::npos) throw ProtocolError("bcrypt: bad base64 output");
        return static_cast<unsigned>(pos);
    };
    Bytes out;
    std::size_t i = 0;
    while (out.size() < max_bytes && i + 1 < text.size()) {
        unsigned c1 = value(text[i++]);
        unsigned c2 = value(text[i++]);
        out.push_back(static_cast<std::uint8_t>((c1 << 2) | ((c2 & 0x30) >> 4)));
        if (out.size() >= max_bytes || i >= text.size()) break;
        unsigned c3 = value(text[i++]);
        out.push_back(static_cast<std::uint8_t>(((c2 & 0x0f) << 4) | ((c3 & 0x3c) >> 2)));
        if (out.size() >= max_bytes || i >= text.size()) break;
        unsigned c4 = value(text[i++]);
        out.push_back(static_cast<std::uint8_t>(((c3 & 0x03) << 6) | c4));
    }
    return out;
}

Bytes hash_argon2id(std::string_view pw, const KdfProfile& p, std::span<const std::uint8_t> salt) {
    if (salt.size() != crypto_pwhash_SALTBYTES)
        throw ConfigError("argon2id requires a " + std::to_string(crypto_pwhash_SALTBYTES) + "-byte salt");
    if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
    Bytes out(digest_size(p.algorithm));
    if (crypto_pwhash(out.data(), out.size(), pw.data(), pw.size(), salt.data(), p.time_cost,
                      static_cast<std::size_t>(p.memory_cost), crypto_pwhash_ALG_ARGON2ID13) != 0)
        throw std::runtime_error("argon2id hashing failed (out of memory?)");
    return out;
}

Bytes hash_bcrypt(std::string_view pw, const KdfProfile& p, std::span<const std::uint8_t> salt) {
    if (salt.size() < kSaltBytes) throw ConfigError("bcrypt requires a 16-byte salt");
    if (pw.find('\0') != std::string_view::npos) throw ConfigError("bcrypt passwords cannot contain NUL");
    char setting[32];
    std::snprintf(setting, sizeof setting, "$2b$%02u$", p.time_cost);
    std::string full = setting + bcrypt_b64_encode(salt.first(kSaltBytes));
    std::string password(pw);
    crypt_data data{};
    const char* result = crypt_r(password.c_str(), full.c_str(), &data);
    if (result == nullptr || result[0] == '*') throw std::runtime_error("bcrypt hashing failed");
    std::string_view encoded(result);
    // $2b$NN$ + 22 salt chars + 31 hash chars
    if (encoded.size() != 60) throw std::runtime_error("bcrypt: unexpected output length");
    return bcrypt_b64_decode(encoded.substr(29), digest_size(p.algorithm));
}

Bytes hash_scrypt(std::string_view pw, const KdfProfile& p, std::span<const std::uint8_t> salt) {
    if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
    Bytes out(digest_size(p.algorithm));
    if (crypto_pwhash_scryptsalsa208sha256_ll(reinterpret_cast<const std::uint8_t*>(pw.data()), pw.size(),
                                              salt.data(), salt.size(), p.scrypt_n(), p.block_size,
                                              p.parallelism, out.data(), out.size()) != 0)
        throw std::runtime_error("scrypt hashing failed (out of memory?)");
    return out;
}

Bytes hash_pbkdf2(std::string_view pw, const KdfProfile& p, std::span<const std::uint8_t> salt) {
    Bytes out(digest_size(p.algorithm));
    if (PKCS5_PBKDF2_HMAC(pw.data(), static_cast<int>(pw.size()), salt.data(), static_cast<int>(salt.size()),
                          static_cast<int>(p.time_cost), EVP_sha256(), static_cast<int>(out.size()),
                          out.data()) != 1)
        throw std::runtime_error("pbkdf2 hashing failed");
    return out;
}

Bytes hash_test(std::string_view pw, std::span<const std::uint8_t> salt) {
    Bytes out(EVP_MAX_MD_SIZE);
    unsigned len = 0;
    if (HMAC(EVP_sha256(), salt.data(), static_cast<int>(salt.size()),
             reinterpret_cast<const unsigned char*>(pw.data()), pw.size(), out.data(), &len) == nullptr)
        throw std::runtime_error("hmac failed");
    out.resize(len);
    return out;
}

std::string mem_label(std::uint64_t bytes) {
    if (bytes >= (1ULL << 20) && bytes % (1ULL << 20) == 0) return std::to_string(bytes >> 20) + "MB";
    if (bytes >= 1024) return "~" + std::to_string(bytes / 1024) + "KB";
    return std::to_string(bytes) + "B";
}

}  // namespace

std::string_view to_string(KdfAlgorithm a) {
    switch (a) {
        case KdfAlgorithm::argon2id: return "argon2id";
        case KdfAlgorithm::bcrypt: return "bcrypt";
        case KdfAlgorithm::scrypt: return "scrypt";
        case KdfAlgorithm::pbkdf2_sha256: return "pbkdf2-sha256";
        case KdfAlgorithm::test_hmac: return "test-hmac";
    }
    return "?";
}

KdfAlgorithm parse_kdf_algorithm(std::string_view name) {
    for (auto a : {KdfAlgorithm::argon2id, KdfAlgorithm::bcrypt, KdfAlgorithm::scrypt,
                   KdfAlgorithm::pbkdf2_sha256, KdfAlgorithm::test_hmac})
        if (to_string(a) == name) return a;
    throw ConfigError("unknown KDF algorithm '" + std::string(name) + "'");
}

std::size_t digest_size(KdfAlgorithm a) { return a == KdfAlgorithm::bcrypt ? 23 : 32; }

std::uint64_t KdfProfile::scrypt_n() const {
    return block_size == 0 ? 0 : memory_cost / (128ULL * block_size);
}

std::string KdfProfile::parameter_label() const {
    switch (algorithm) {
        case KdfAlgorithm::argon2id:
            return "m=" + mem_label(memory_cost) + ", t=" + std::to_string(time_cost);
        case KdfAlgorithm::bcrypt: return "cost=" + std::to_string(time_cost);
        case KdfAlgorithm::scrypt:
            return "N=2^" + std::to_string(std::countr_zero(scrypt_n())) + ", r=" + std::to_string(block_size);
        case KdfAlgorithm::pbkdf2_sha256: return "iterations=" + std::to_string(time_cost);
        case KdfAlgorithm::test_hmac: return "hmac-sha256";
    }
    return {};
}

void KdfProfile::validate() const {
    auto fail = [this](const std::string& why) { throw ConfigError("kdf profile '" + id + "': " + why); };
    if (id.empty()) throw ConfigError("kdf profile with empty id");
    if (!(bench_rate > 0)) fail("bench_rate must be > 0");
    if (time_cost < 1) fail("time_cost must be >= 1");
    switch (algorithm) {
        case KdfAlgorithm::argon2id:
            if (memory_cost < crypto_pwhash_MEMLIMIT_MIN) fail("memory_cost below argon2id minimum");
            if (parallelism != 1) fail("argon2id backend supports parallelism=1 only");
            break;
        case KdfAlgorithm::bcrypt:
            if (time_cost < 4 || time_cost > 31) fail("bcrypt cost must be in [4, 31]");
            break;
        case KdfAlgorithm::scrypt: {
            auto n = scrypt_n();
            if (block_size < 1) fail("block_size must be >= 1");
            if (n < 2 || !std::has_single_bit(n) || n * 128ULL * block_size != memory_cost)
                fail("memory_cost must equal 128 * r * N with N a power of two");
            if (parallelism < 1) fail("parallelism must be >= 1");
            break;
        }
        case KdfAlgorithm::pbkdf2_sha256:
        case KdfAlgorithm::test_hmac: break;
    }
}

Bytes kdf_hash(std::string_view password, const KdfProfile& profile, std::span<const std::uint8_t> salt) {
    if (password.empty()) throw Error("password must be non-empty");
    if (salt.empty()) throw ConfigError("salt must be non-empty");
    switch (profile.algorithm) {
        case KdfAlgorithm::argon2id: return hash_argon2id(password, profile, salt);
        case KdfAlgorithm::bcrypt: return hash_bcrypt(password, profile, salt);
        case KdfAlgorithm::scrypt: return hash_scrypt(password, profile, salt);
        case KdfAlgorithm::pbkdf2_sha256: return hash_pbkdf2(password, profile, salt);
        case KdfAlgorithm::test_hmac: return hash_test(password, salt);
    }
    throw ConfigError("unhandled KDF algorithm");
}

KdfRegistry KdfRegistry::defaults() {
    KdfRegistry r;
    r.add({"argon2id", KdfAlgorithm::argon2id, 512ULL << 20, 3, 1, 8, 60.0});
    r.add({"bcrypt", KdfAlgorithm::bcrypt, 4168, 12, 1, 8, 200'000.0});
    r.add({"scrypt", KdfAlgorithm::scrypt, 128ULL * 8 * (1ULL << 15), 1, 1, 8, 4'500.0});
    // Reference GPU rate for 600k iterations, scaled from ~8.8 MH/s at 1k.
    r.add({"pbkdf2-sha256", KdfAlgorithm::pbkdf2_sha256, 0, 600'000, 1, 8, 14'700.0});
    r.add({"test-kdf", KdfAlgorithm::test_hmac, 0, 1, 1, 8, 1e9});
    return r;
}

void KdfRegistry::add(KdfProfile profile) {
    profile.validate();
    auto id = profile.id;
    profiles_.insert_or_assign(std::move(id), std::move(profile));
}

bool KdfRegistry::contains(std::string_view id) const { return profiles_.find(id) != profiles_.end(); }

const KdfProfile& KdfRegistry::get(std::string_view id) const {
    auto it = profiles_.find(id);
    if (it == profiles_.end()) throw ConfigError("unknown KDF profile '" + std::string(id) + "'");
    return it->second;
}

std::vector<std::string> KdfRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : profiles_) out.push_back(id);
    return out;
}

std::vector<KdfProfile> KdfRegistry::table_profiles() const {
    return {get("argon2id"), get("bcrypt"), get("scrypt")};
}

}  // namespace honeyauth
