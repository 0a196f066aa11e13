#include <doctest.h>

#include <fstream>

#include "honeyauth/config.hpp"
#include "honeyauth/errors.hpp"
#include "support.hpp"

using namespace honeyauth;

TEST_CASE("parse_ini") {
    auto sections = parse_ini("; top\n[policy]\nminlen = 10 # note\n\n[responder]\nw_ip=0.5\n");
    REQUIRE(sections.size() == 3);
    CHECK(sections[0].name.empty());
    CHECK(sections[1].name == "policy");
    REQUIRE(sections[1].entries.size() == 1);
    CHECK(sections[1].entries[0] == std::pair<std::string, std::string>{"minlen", "10"});
    CHECK(sections[2].entries[0].second == "0.5");
    CHECK_THROWS_AS(parse_ini("[policy\nminlen=1"), ConfigError);
    CHECK_THROWS_AS(parse_ini("[policy]\njunk"), ConfigError);
}

TEST_CASE("full config") {
    auto cfg = parse_config(
        "[policy]\nminlen=10\nminclass=2\n"
        "[responder]\nhoney_bonus=0.5\nt_silent=0.2\nlockout_minutes=30\n"
        "[authgate]\nfail_mode=fail-open-real-only\n"
        "[kdf.fast]\nalgorithm=test-hmac\nbench_rate=1e9\n");
    CHECK(cfg.policy.minlen == 10);
    CHECK(cfg.policy.minclass == 2);
    CHECK(cfg.responder.honey_bonus == 0.5);
    CHECK(cfg.responder.t_silent == 0.2);
    CHECK(cfg.responder.lockout_minutes == 30);
    CHECK(cfg.fail_mode == FailMode::FAIL_OPEN_REAL_ONLY);
    REQUIRE(cfg.kdfs.contains("fast"));
    CHECK(cfg.kdfs.get("fast").bench_rate == 1e9);
    CHECK(cfg.kdfs.contains("argon2id"));

    auto empty = parse_config("");
    CHECK(empty.policy == Policy{});
    CHECK(empty.fail_mode == FailMode::FAIL_CLOSED);
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_config("[nonsense]\na=1"), ConfigError);
    CHECK_THROWS_AS(parse_config("minlen=8"), ConfigError);
    CHECK_THROWS_AS(parse_config("[responder]\nw_ip=abc"), ConfigError);
    CHECK_THROWS_AS(parse_config("[responder]\nw_ip=0.1\nw_ip=0.2"), ConfigError);
    CHECK_THROWS_AS(parse_config("[responder]\nbogus=1"), ConfigError);
    CHECK_THROWS_AS(parse_config("[responder]\nt_silent=0.9"), ConfigError);
    CHECK_THROWS_AS(parse_config("[authgate]\nfail_mode=sometimes"), ConfigError);
    CHECK_THROWS_AS(parse_config("[kdf.x]\nbench_rate=5"), ConfigError);
    CHECK_THROWS_AS(parse_config("[kdf.x]\nalgorithm=md5"), ConfigError);
    try {
        parse_config("[policy]\nminlen=8\nbogus_param=1");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus_param") != std::string::npos);
    }
}

TEST_CASE("dictionary path resolves next to the config file") {
    testing::TempDir dir;
    {
        std::ofstream(dir / "words.txt") << "password\nletmein\n";
        std::ofstream(dir / "app.ini") << "[policy]\ndictcheck=1\ndictpath=words.txt\n";
    }
    auto cfg = load_config(dir / "app.ini");
    REQUIRE(cfg.policy.wordlist);
    CHECK(cfg.policy.wordlist->count("letmein") == 1);
    CHECK(check_password(cfg.policy, "LetMeIn1").empty());
    CHECK(check_password(cfg.policy, "password") == std::vector<Violation>{Violation::DICT});
}
