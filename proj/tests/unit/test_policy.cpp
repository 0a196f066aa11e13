#include <doctest.h>

#include <algorithm>

#include "honeyauth/errors.hpp"
#include "honeyauth/policy.hpp"

using namespace honeyauth;

namespace {

bool has(const std::vector<Violation>& v, Violation x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("parse_policy") {
    auto p = parse_policy("minlen=8\nminclass=3");
    Policy expected;
    expected.minclass = 3;
    CHECK(p == expected);

    auto d = parse_policy("");
    CHECK(d.minlen == 8);
    CHECK(d.minclass == 1);
    CHECK(d.maxrepeat == 4);
    CHECK_FALSE(d.dictcheck);

    auto c = parse_policy("# comment\n  minlen = 12  # trailing\n\ndcredit=1\n");
    CHECK(c.minlen == 12);
    CHECK(c.dcredit == 1);
}

TEST_CASE("parse_policy rejections name the key") {
    try {
        parse_policy("minlen=8\nbogus_param=1");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus_param") != std::string::npos);
    }
    try {
        parse_policy("minlen=eight");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("minlen") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_policy("minlen=8\nminlen=9"), ConfigError);
    CHECK_THROWS_AS(parse_policy("minlen"), ConfigError);
    CHECK_THROWS_AS(parse_policy("minclass=7"), ConfigError);
}

TEST_CASE("render round trip") {
    auto p = parse_policy("minlen=10\nminclass=2\nmaxrepeat=3\ndcredit=1\nocredit=1");
    CHECK(parse_policy(render_policy(p)) == p);
    CHECK(parse_policy(render_policy(Policy{})) == Policy{});
}

TEST_CASE("check_password") {
    auto p = parse_policy("minlen=8");
    auto v = check_password(p, "abc12");
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation::MINLEN);

    auto r = parse_policy("maxrepeat=2");
    v = check_password(r, "aaab1234");
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation::MAXREPEAT);
    CHECK(check_password(r, "aab12345").empty());

    auto dict = parse_policy("dictcheck=1");
    std::vector<std::string> words{"password"};
    set_wordlist(dict, words);
    v = check_password(dict, "password");
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation::DICT);
    CHECK(check_password(dict, "PassWord").size() == 1);

    auto cls = parse_policy("minclass=3");
    CHECK(has(check_password(cls, "abcdefgh1"), Violation::MINCLASS));
    CHECK(check_password(cls, "Abcdefgh1").empty());

    auto credit = parse_policy("dcredit=2\nocredit=1");
    CHECK(has(check_password(credit, "abcdefg1!"), Violation::CLASSMIN));
    CHECK(check_password(credit, "abcdef12!").empty());
}

TEST_CASE("check_sweetword_set") {
    Policy p;
    std::vector<std::string> ok{"correct1", "horse123", "battery9"};
    CHECK(check_sweetword_set(p, ok).status == SetStatus::OK);

    std::vector<std::string> weak{"correct1", "horse123", "bat9"};
    auto r = check_sweetword_set(p, weak);
    CHECK(r.status == SetStatus::DISTINGUISHABLE);
    REQUIRE(r.offending.size() == 1);
    CHECK(r.offending[0] == 2);
    CHECK(r.verdicts[2] == std::vector<Violation>{Violation::MINLEN});

    std::vector<std::string> bad{"a", "b", "c"};
    CHECK(check_sweetword_set(p, bad).status == SetStatus::ALL_REJECTED);

    CHECK_THROWS_AS(check_sweetword_set(p, std::vector<std::string>{}), ParseError);
}
