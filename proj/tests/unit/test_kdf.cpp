#include <doctest.h>

#include "honeyauth/bytes.hpp"
#include "honeyauth/errors.hpp"
#include "honeyauth/kdf.hpp"
#include "support.hpp"

using namespace honeyauth;

namespace {

// Vectors computed with argon2-cffi, the Python bcrypt package and hashlib.
struct Vector {
    const char* password;
    const char* salt;
    const char* argon2id;
    const char* bcrypt;
    const char* scrypt;
    const char* pbkdf2;
    const char* hmac;
};

const Vector kVectors[] = {
    {"password1", "000102030405060708090a0b0c0d0e0f",
     "b3e3bb32a7e5943b165ec350ee052186a6d8b30d56d8614b7387305e9b4c0580",
     "109ad480ffdee8fe2aeaba463b7a9d1db4039f7e7c03ce",
     "1339e543b57f6f4fc4c755955f0f96eae8b70a282b5268ace49219cdd94d2c91",
     "5c0ddf289cd56efa1b8bb0608c967ec5bd07fb5037e51a1e5e44dcbbf84f45f3",
     "38d35f6d4ae433931ad7263a8393fa223ebbc299abc0226801354e4ae78046fc"},
    {"Summer2024!", "a1b2c3d4e5f60718293a4b5c6d7e8f90",
     "cf3854b26b6357b6d8c4689e2fa1fc3bab22cef1bea9d191e757ac2fe7899524",
     "f94b667ebf5cbd902799d663b207dfe97c0330b03db580",
     "45dc17360af884ecf1d3f89d94ebb20f405bf119c2ba4e4217670c8266ea279a",
     "2a3ecd1e3dacb5e805fdb3b3805c2d3025667aef5a2603acddc8fc72aacabd71",
     "e04c8f103ebdb7f59ff099d9f4e8ec4083f781dff3bc44b70bee6bf07523d1db"},
    {"p\xc3\xa4ssw\xc3\xb6rd", "000102030405060708090a0b0c0d0e0f",
     "a60ab694f557156592bcf61a557a86d4c505ad4119337604a00782eb22fd6c7b",
     "0cf9ce2bddee70c171fffbffab37fb3670a248b8ffa390",
     "fa494292e6ecd1c9188936d93b83164b79362f13ade8c0afba8bbe6542b2ca9e",
     "2f56986c68f37683f0c4f846ad3742cc90085e0bfdf205d7f45ec47e3caadce8",
     "a9158bd72c4555af2137aa7428a06ce3c6abf1c53b999c2e6b53004a2651625d"},
};

KdfProfile small(KdfAlgorithm a) {
    KdfProfile p;
    p.id = std::string(to_string(a)) + "-small";
    p.algorithm = a;
    switch (a) {
        case KdfAlgorithm::argon2id:
            p.memory_cost = 8u << 20;
            p.time_cost = 2;
            break;
        case KdfAlgorithm::bcrypt:
            p.time_cost = 4;
            break;
        case KdfAlgorithm::scrypt:
            p.memory_cost = 128ull * 8 * 1024;
            p.block_size = 8;
            break;
        case KdfAlgorithm::pbkdf2_sha256:
            p.time_cost = 1000;
            break;
        case KdfAlgorithm::test_hmac:
            break;
    }
    return p;
}

}  // namespace

TEST_CASE("kdf digests match independent implementations") {
    for (const auto& v : kVectors) {
        CAPTURE(v.password);
        auto salt = from_hex(v.salt);
        CHECK(to_hex(kdf_hash(v.password, small(KdfAlgorithm::argon2id), salt)) == v.argon2id);
        CHECK(to_hex(kdf_hash(v.password, small(KdfAlgorithm::bcrypt), salt)) == v.bcrypt);
        CHECK(to_hex(kdf_hash(v.password, small(KdfAlgorithm::scrypt), salt)) == v.scrypt);
        CHECK(to_hex(kdf_hash(v.password, small(KdfAlgorithm::pbkdf2_sha256), salt)) == v.pbkdf2);
        CHECK(to_hex(kdf_hash(v.password, small(KdfAlgorithm::test_hmac), salt)) == v.hmac);
    }
}

TEST_CASE("test-kdf is deterministic and salt separated") {
    auto reg = KdfRegistry::defaults();
    auto s1 = testing::fixed_salt(0), s2 = testing::fixed_salt(1);
    CHECK(reg.hash("test-kdf", "pw", s1) == reg.hash("test-kdf", "pw", s1));
    CHECK(reg.hash("test-kdf", "pw", s1) != reg.hash("test-kdf", "pw", s2));
    CHECK(reg.hash("test-kdf", "pw", s1) != reg.hash("test-kdf", "pw2", s1));
}

TEST_CASE("registry") {
    auto reg = KdfRegistry::defaults();
    for (const char* id : {"argon2id", "bcrypt", "scrypt", "pbkdf2-sha256", "test-kdf"}) CHECK(reg.contains(id));
    CHECK_THROWS_AS(reg.get("md5"), ConfigError);
    CHECK_THROWS_AS(reg.hash("nope", "pw", testing::fixed_salt()), ConfigError);

    const auto& a = reg.get("argon2id");
    CHECK(a.memory_cost == 512ull << 20);
    CHECK(a.time_cost == 3);
    CHECK(a.bench_rate == 60);
    CHECK(reg.get("bcrypt").time_cost == 12);
    CHECK(reg.get("bcrypt").bench_rate == 200000);
    CHECK(reg.get("scrypt").scrypt_n() == 32768);
    CHECK(reg.get("scrypt").bench_rate == 4500);
}

TEST_CASE("profile validation") {
    KdfProfile p = small(KdfAlgorithm::argon2id);
    CHECK_NOTHROW(p.validate());
    p.bench_rate = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small(KdfAlgorithm::argon2id);
    p.time_cost = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small(KdfAlgorithm::argon2id);
    p.parallelism = 4;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small(KdfAlgorithm::scrypt);
    p.memory_cost = 128ull * 8 * 1000;  // N not a power of two
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK_THROWS_AS(parse_kdf_algorithm("md5"), ConfigError);
}

TEST_CASE("bcrypt rejects NUL and short salts") {
    auto p = small(KdfAlgorithm::bcrypt);
    CHECK_THROWS_AS(kdf_hash(std::string_view("a\0b", 3), p, testing::fixed_salt()), ConfigError);
    Bytes short_salt(8, 1);
    CHECK_THROWS_AS(kdf_hash("pw", p, short_salt), ConfigError);
}

TEST_CASE("hex and constant-time compare") {
    Bytes b{0x00, 0xab, 0xff};
    CHECK(to_hex(b) == "00abff");
    CHECK(from_hex("00abff") == b);
    CHECK_THROWS_AS(from_hex("00ABFF"), ParseError);
    CHECK_THROWS_AS(from_hex("abc"), ParseError);
    CHECK(ct_equal(b, b));
    CHECK_FALSE(ct_equal(b, Bytes{0x00, 0xab, 0xfe}));
    CHECK_FALSE(ct_equal(b, Bytes{0x00, 0xab}));
}
