#include <doctest.h>

#include <fstream>
#include <sstream>

#include "honeyauth/credstore.hpp"
#include "honeyauth/errors.hpp"
#include "honeyauth/text.hpp"
#include "support.hpp"

using namespace honeyauth;

namespace {

std::vector<std::string> sweetwords(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back("sweetword-" + std::to_string(i));
    return out;
}

const KdfProfile& test_kdf() {
    static const auto reg = KdfRegistry::defaults();
    return reg.get("test-kdf");
}

}  // namespace

TEST_CASE("uid grammar") {
    CHECK(valid_uid("alice"));
    CHECK(valid_uid("a.b-c_9"));
    CHECK(valid_uid(std::string(64, 'x')));
    CHECK_FALSE(valid_uid(std::string(65, 'x')));
    CHECK_FALSE(valid_uid(""));
    CHECK_FALSE(valid_uid("al ice"));
    CHECK_FALSE(valid_uid("bob\n"));
}

TEST_CASE("enroll stores k digests in order without the index") {
    CredentialStore store;
    auto words = sweetwords(20);
    auto salt = testing::fixed_salt();
    enroll(store, "alice", words[7], words, 7, test_kdf(), salt);
    const auto* rec = store.find("alice");
    REQUIRE(rec);
    CHECK(rec->k() == 20);
    for (std::size_t i = 0; i < words.size(); ++i) CHECK(rec->digests[i] == kdf_hash(words[i], test_kdf(), salt));

    auto line = serialize_record(*rec);
    CHECK(line.find("index") == std::string::npos);
    CHECK(line.rfind("{\"uid\":\"alice\",\"salt\":\"000102030405060708090a0b0c0d0e0f\",\"kdf\":\"test-kdf\",\"digests\":[", 0) == 0);
    CHECK(parse_record(line) == *rec);
    CHECK(serialize_record(parse_record(line)) == line);
}

TEST_CASE("enroll preconditions") {
    CredentialStore store;
    auto words = sweetwords(20);
    auto salt = testing::fixed_salt();
    CHECK_THROWS_AS(enroll(store, "alice", "not-in-set", words, 3, test_kdf(), salt), EnrollError);
    CHECK_THROWS_AS(enroll(store, "alice", words[3], words, 20, test_kdf(), salt), EnrollError);
    CHECK_THROWS_AS(enroll(store, "bad uid", words[3], words, 3, test_kdf(), salt), EnrollError);
    CHECK_THROWS_AS(enroll(store, "alice", words[0], std::vector<std::string>{words[0]}, 0, test_kdf(), salt),
                    EnrollError);
    CHECK_THROWS_AS(enroll(store, "alice", words[3], words, 3, test_kdf(), Bytes(8, 0)), EnrollError);
    auto dup = words;
    dup[5] = dup[4];
    CHECK_THROWS_AS(enroll(store, "alice", words[3], dup, 3, test_kdf(), salt), GenerationError);
    CHECK(store.empty());

    enroll(store, "alice", words[3], words, 3, test_kdf(), salt);
    CHECK_THROWS_AS(enroll(store, "alice", words[3], words, 3, test_kdf(), salt), EnrollError);
}

TEST_CASE("record validation") {
    SweetwordSet r;
    r.uid = "bob";
    r.salt = testing::fixed_salt();
    r.kdf = "test-kdf";
    r.digests = {Bytes(32, 1), Bytes(32, 2)};
    CHECK_NOTHROW(r.validate());
    r.digests = {Bytes(32, 1)};
    CHECK_THROWS(r.validate());
    r.digests = {Bytes(32, 1), Bytes(32, 1)};
    CHECK_THROWS(r.validate());
    r.digests = {Bytes(32, 1), Bytes(32, 2)};
    r.salt = Bytes(15, 0);
    CHECK_THROWS(r.validate());
}

TEST_CASE("parse errors name the line") {
    std::istringstream in(
        "{\"uid\":\"a\",\"salt\":\"000102030405060708090a0b0c0d0e0f\",\"kdf\":\"test-kdf\",\"digests\":[\"01\",\"02\"]}\n"
        "{\"uid\":\"b\",\"salt\":\"000102030405060708090a0b0c0d0e0f\",\"kdf\":\"test-kdf\",\"digests\":[\"01\"],\"index\":0}\n");
    try {
        read_store(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_record("{\"uid\":\"a\",\"salt\":\"00\",\"kdf\":\"x\",\"digests\":[\"0G\",\"01\"]}"), ParseError);
    CHECK_THROWS_AS(parse_record("not json"), ParseError);
}

TEST_CASE("save and load round trip, sorted by uid") {
    testing::TempDir dir;
    CredentialStore store;
    auto words = sweetwords(5);
    for (const char* uid : {"zed", "alice", "mike"}) enroll(store, uid, words[1], words, 1, test_kdf(), seeded_salt(9, uid));
    auto path = dir / "store.jsonl";
    save_store(store, path);
    auto text = read_file(path);
    auto lines = split_lines(text);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0].find("\"alice\"") != std::string::npos);
    CHECK(lines[1].find("\"mike\"") != std::string::npos);
    CHECK(lines[2].find("\"zed\"") != std::string::npos);
    auto loaded = load_store(path);
    CHECK(loaded == store);
    save_store(loaded, dir / "again.jsonl");
    CHECK(read_file(dir / "again.jsonl") == text);
    CHECK_FALSE(std::filesystem::exists(dir / "store.jsonl.tmp"));
}

TEST_CASE("seeded salts are stable and per uid") {
    CHECK(seeded_salt(1, "alice") == seeded_salt(1, "alice"));
    CHECK(seeded_salt(1, "alice") != seeded_salt(1, "bob"));
    CHECK(seeded_salt(1, "alice") != seeded_salt(2, "alice"));
    CHECK(seeded_salt(1, "alice").size() == kSaltBytes);
}
