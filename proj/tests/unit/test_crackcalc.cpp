#include <doctest.h>

#include "honeyauth/crackcalc.hpp"
#include "honeyauth/errors.hpp"
#include "honeyauth/kdf.hpp"

using namespace honeyauth;
using namespace honeyauth::crack;

TEST_CASE("entropy bits") {
    CHECK(entropy_bits(8, 62) == doctest::Approx(47.6336).epsilon(1e-5));
    CHECK(entropy_bits(1, 2) == 1.0);
    CHECK(entropy_bits(10, 95) == doctest::Approx(65.70).epsilon(1e-4));
    for (int a = 1; a < 12; ++a)
        for (int b = 1; b < 12; ++b)
            CHECK(std::abs(entropy_bits(a + b, 62) - entropy_bits(a, 62) - entropy_bits(b, 62)) < 1e-9);
    CHECK_THROWS_AS(entropy_bits(0, 62), ConfigError);
    CHECK_THROWS_AS(entropy_bits(8, 1), ConfigError);
}

TEST_CASE("keyspace is exact") {
    CHECK(keyspace(8, 62) == Guesses("218340105584896"));
    CHECK(keyspace(20, 95) == Guesses("3584859224085422343574104404449462890625"));
}

TEST_CASE("exhaustive times match the published table") {
    CHECK(exhaustive_time(8, 62, 200000).years() == doctest::Approx(34.59).epsilon(0.001));
    CHECK(exhaustive_time(8, 62, 4500).years() == doctest::Approx(1537.5).epsilon(0.001));
    CHECK(exhaustive_time(8, 62, 60).years() == doctest::Approx(115313).epsilon(0.001));
    CHECK(exhaustive_time(8, 62, 218340105584896.0).seconds == 1.0L);
    CHECK_THROWS_AS(exhaustive_time(8, 62, 0), ConfigError);
    CHECK_THROWS_AS(exhaustive_time(8, 62, -5), ConfigError);
}

TEST_CASE("budget times") {
    CHECK(budget_time(Guesses(5000000000LL), 60).years() == doctest::Approx(2.64).epsilon(0.005));
    CHECK(budget_time(Guesses(5000000000LL), 200000).days() == doctest::Approx(0.289).epsilon(0.005));
    CHECK(budget_time(Guesses(5000000000LL), 4500).days() == doctest::Approx(12.86).epsilon(0.005));
    CHECK(budget_time(Guesses(0), 60).seconds == 0.0L);
    CHECK_THROWS_AS(budget_time(Guesses(10), 0), ConfigError);
    CHECK_THROWS_AS(budget_time(Guesses(-1), 10), ConfigError);
    for (double rate : {60.0, 4500.0, 200000.0, 1e9})
        CHECK(exhaustive_time(8, 62, rate).seconds == budget_time(keyspace(8, 62), rate).seconds);
}

TEST_CASE("human readable durations") {
    CHECK(exhaustive_time(8, 62, 200000).human() == "34.6 yrs");
    CHECK(budget_time(Guesses(5000000000LL), 4500).human() == "12.9 d");
    CHECK(budget_time(Guesses(30), 1).human() == "30 s");
    CHECK(exhaustive_time(8, 62, 60).human() == "115,313 yrs");
}

TEST_CASE("tables from the default registry") {
    auto text = render_tables(KdfRegistry::defaults().table_profiles());
    CHECK(text.find("115,313 yrs") != std::string::npos);
    CHECK(text.find("34.6 yrs") != std::string::npos);
    CHECK(text.find("1,538 yrs") != std::string::npos);
    CHECK(text.find("2.64 yrs") != std::string::npos);
    CHECK(text.find("0.289 d") != std::string::npos);
    CHECK(text.find("12.9 d") != std::string::npos);
    CHECK(KdfRegistry::defaults().table_profiles().size() == 3);
}
