#include <doctest.h>

#include "honeyauth/errors.hpp"
#include "honeyauth/plaintexts.hpp"
#include "honeyauth/text.hpp"
#include "support.hpp"

using namespace honeyauth;

TEST_CASE("account file forms") {
    auto accounts = parse_accounts(
        "{\"uid\":\"alice\",\"password\":\"Summer2024!\",\"pii\":{\"username\":\"alice7\",\"birth_year\":1990,"
        "\"name_tokens\":[\"alice\",\"smith\"]}}\n"
        "\n"
        "bob\thunter2hunter2\n"
        "correcthorse9\n");
    REQUIRE(accounts.size() == 3);
    CHECK(accounts[0].uid == "alice");
    REQUIRE(accounts[0].pii);
    CHECK(accounts[0].pii->birth_year == 1990);
    CHECK(accounts[0].pii->keyboard_layout == "qwerty");
    CHECK(accounts[1].uid == "bob");
    CHECK(accounts[1].password == "hunter2hunter2");
    CHECK(accounts[2].uid == "u00003");
    CHECK(accounts[2].password == "correcthorse9");
}

TEST_CASE("account parse errors carry the line") {
    try {
        parse_accounts("ok-password1\n{\"uid\":\"x\"}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_accounts("bad uid\tpw12345678\n"), ParseError);
    CHECK_THROWS_AS(parse_accounts("{\"uid\":\"a\",\"password\":\"p\",\"pii\":{\"shoe_size\":9}}"), ParseError);
}

TEST_CASE("pii json round trip") {
    PiiRecord pii;
    pii.username = "rowanw7";
    pii.birth_year = 1990;
    pii.name_tokens = {"rowan", "wilson"};
    auto text = pii_to_json(pii);
    CHECK(text == R"({"username":"rowanw7","birth_year":1990,"name_tokens":["rowan","wilson"],"keyboard_layout":"qwerty"})");
    auto back = pii_from_json(text);
    CHECK(back.username == pii.username);
    CHECK(back.birth_year == pii.birth_year);
    CHECK(back.name_tokens == pii.name_tokens);
    CHECK_THROWS_AS(pii_from_json("{\"name_tokens\":[\"Upper\"]}"), ConfigError);
}

TEST_CASE("plaintext records") {
    PlaintextRecord r{"alice", {"a-one", "b-two", "c-three"}, 1, std::nullopt};
    auto line = serialize_plaintext(r);
    CHECK(line == R"({"uid":"alice","sweetwords":["a-one","b-two","c-three"],"true_index":1})");
    auto back = parse_plaintext(line);
    CHECK(back.real() == "b-two");
    CHECK(back.decoys() == std::vector<std::string>{"a-one", "c-three"});
    CHECK(looks_like_plaintexts("\n" + line + "\n"));
    CHECK_FALSE(looks_like_plaintexts("password1\n"));
    CHECK_FALSE(looks_like_plaintexts(R"({"uid":"a","password":"b"})"));
    CHECK_THROWS_AS(parse_plaintext(R"({"uid":"a","sweetwords":["x","y"],"true_index":2})"), ParseError);
    try {
        parse_plaintexts(line + "\n{}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("generate_sets and enroll_all are thread independent") {
    auto accounts = load_accounts(testing::data_dir() / "demo_accounts.jsonl");
    REQUIRE(accounts.size() == 40);
    auto model = train_model(read_lines(testing::data_dir() / "toy_corpus.txt"));
    GeneratorConfig cfg;
    cfg.k = 10;
    cfg.seed = 31;
    auto one = generate_sets(accounts, cfg, &model, 1);
    auto four = generate_sets(accounts, cfg, &model, 4);
    REQUIRE(one.size() == 40);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(serialize_plaintext(one[i]) == serialize_plaintext(four[i]));
        CHECK(one[i].real() == accounts[i].password);
        CHECK(one[i].sweetwords.size() == 10);
    }

    static const auto kdfs = KdfRegistry::defaults();
    CredentialStore s1, s4;
    enroll_all(s1, one, kdfs.get("test-kdf"), 77, 1);
    enroll_all(s4, four, kdfs.get("test-kdf"), 77, 4);
    CHECK(s1 == s4);
    CHECK_THROWS_AS(enroll_all(s1, one, kdfs.get("test-kdf"), 77, 2), EnrollError);

    auto acc = to_accounts(one);
    CHECK(acc[0].real == accounts[0].password);
    CHECK(acc[0].decoys.size() == 9);
    CHECK(to_sweep_inputs(accounts)[5].real == accounts[5].password);
}
