#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "honeyauth/errors.hpp"
#include "honeyauth/gauntlet.hpp"
#include "honeyauth/text.hpp"
#include "support.hpp"

using namespace honeyauth;

namespace {

const CorpusModel& toy_model() {
    static const CorpusModel model = train_model(read_lines(testing::data_dir() / "toy_corpus.txt"));
    return model;
}

// Knows every real password, so always ranks the real one first.
class OracleRanker : public Ranker {
public:
    explicit OracleRanker(std::set<std::string> reals) : reals_(std::move(reals)) {}
    std::string name() const override { return "oracle"; }
    std::vector<std::size_t> rank(std::span<const std::string> sw, const PiiRecord*, Rng&) const override {
        std::vector<std::size_t> order(sw.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return reals_.count(sw[i]) > 0; });
        return order;
    }

private:
    std::set<std::string> reals_;
};

class UniformRanker : public Ranker {
public:
    std::string name() const override { return "uniform"; }
    std::vector<std::size_t> rank(std::span<const std::string> sw, const PiiRecord*, Rng& rng) const override {
        std::vector<std::size_t> order(sw.size());
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        return order;
    }
};

std::vector<Account> numbered_accounts(std::size_t n, std::size_t k) {
    std::vector<Account> out;
    for (std::size_t a = 0; a < n; ++a) {
        Account acc;
        acc.real = "real" + std::to_string(a);
        for (std::size_t d = 1; d < k; ++d) acc.decoys.push_back("decoy" + std::to_string(a) + "-" + std::to_string(d));
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace

TEST_CASE("flatness_score") {
    CHECK(flatness_score(1.0 / 20, 20) == 1.0);
    CHECK(flatness_score(1.0, 20) == 0.0);
    CHECK(flatness_score(0.25, 20) == doctest::Approx(0.7895).epsilon(1e-4));
    CHECK(flatness_score(0.0, 20) == 1.0);
    CHECK(flatness_score(0.5, 2) == 1.0);
    CHECK_THROWS_AS(flatness_score(0.5, 1), ConfigError);
    CHECK_THROWS_AS(flatness_score(1.5, 20), ConfigError);
    double prev = 2;
    for (double p = 0.05; p <= 1.0; p += 0.05) {
        double e = flatness_score(p, 20);
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("attacker model validation") {
    AttackerModel a3{AttackerLevel::A3};
    CHECK_THROWS_AS(a3.validate(), ConfigError);
    a3.corpus = &toy_model();
    CHECK_NOTHROW(a3.validate());
    a3.pii_access = true;
    CHECK_THROWS_AS(a3.validate(), ConfigError);
    AttackerModel a1{AttackerLevel::A1, &toy_model()};
    CHECK_THROWS_AS(a1.validate(), ConfigError);
    AttackerModel a4{AttackerLevel::A4};
    CHECK_THROWS_AS(attacker_rank(a4, std::vector<std::string>{"a", "b"}), ConfigError);
    CHECK(parse_attacker_level("A4") == AttackerLevel::A4);
    CHECK(parse_attacker_level("a2") == AttackerLevel::A2);
    CHECK_THROWS_AS(parse_attacker_level("A5"), ConfigError);
}

TEST_CASE("A3 ranks by corpus frequency") {
    std::vector<std::string> corpus{"password1", "password1", "letmein"};
    auto model = train_model(corpus);
    AttackerModel a3{AttackerLevel::A3, &model};
    std::vector<std::string> sw{"Xq9#vL2m", "password1", "Tg7@pW4z"};
    auto order = attacker_rank(a3, sw);
    CHECK(order.front() == 1);
}

TEST_CASE("A1 falls back to lexicographic order") {
    AttackerModel a1{AttackerLevel::A1};
    std::vector<std::string> sw{"zeta-77x", "alpha-91q", "Mid-00z", "beta-32w"};
    auto order = attacker_rank(a1, sw);
    CHECK(order == std::vector<std::size_t>{2, 1, 3, 0});

    auto dict = a1_dictionary();
    REQUIRE(dict.size() >= 2);
    std::vector<std::string> with{"zeta-77x", std::string(dict[1]), std::string(dict[0])};
    order = attacker_rank(a1, with);
    CHECK(order == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("A2 plausibility table") {
    CHECK(plausibility_score("abcdefgh1") > plausibility_score("a1"));
    CHECK(plausibility_score("abcdefgh1") > plausibility_score("aaaaaaaa1"));
    CHECK(plausibility_score("abcdefgh1") > plausibility_score("a$c%e^g&1"));
    AttackerModel a2{AttackerLevel::A2};
    std::vector<std::string> sw{"q", "sunshine12"};
    CHECK(attacker_rank(a2, sw).front() == 1);
}

TEST_CASE("A4 on i.i.d. sweetwords is at chance") {
    const auto& model = toy_model();
    Rng rng(2024);
    const std::size_t k = 10;
    std::vector<Account> accounts;
    for (int a = 0; a < 2000; ++a) {
        std::set<std::string> chosen;
        while (chosen.size() < k) chosen.insert(model.sample_password(rng));
        std::vector<std::string> words(chosen.begin(), chosen.end());
        for (std::size_t i = words.size(); i > 1; --i) std::swap(words[i - 1], words[rng.below(i)]);
        Account acc;
        acc.real = words[0];
        acc.decoys.assign(words.begin() + 1, words.end());
        accounts.push_back(std::move(acc));
    }
    AttackerRanker a4({AttackerLevel::A4, &model});
    auto report = simulate(accounts, a4, 5);
    CHECK(report.k == k);
    CHECK(report.p == doctest::Approx(0.1).epsilon(0.3));
    CHECK(std::abs(report.p - 0.1) <= 2 * report.ci95);
}

TEST_CASE("oracle and uniform attackers") {
    auto accounts = numbered_accounts(10'000, 20);
    std::set<std::string> reals;
    for (const auto& a : accounts) reals.insert(a.real);
    auto oracle = simulate(accounts, OracleRanker(reals), 1);
    CHECK(oracle.p == 1.0);
    CHECK(oracle.epsilon == 0.0);

    auto uniform = simulate(accounts, UniformRanker(), 1);
    CHECK(uniform.p == doctest::Approx(0.05).epsilon(0.2));
    CHECK(uniform.epsilon >= 0.95);
    CHECK(uniform.ci95 == doctest::Approx(1.96 * std::sqrt(uniform.p * (1 - uniform.p) / 10'000)));

    auto budget = simulate(accounts, UniformRanker(), 1, {5, 1});
    CHECK(budget.p == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("random-string decoys against a corpus that knows every real") {
    auto lines = read_lines(testing::data_dir() / "toy_corpus.txt");
    std::vector<SweepInput> inputs;
    for (std::size_t i = 0; inputs.size() < 200 && i < lines.size(); i += 7)
        if (lines[i].size() >= 8) inputs.push_back({lines[i], std::nullopt});
    GeneratorSpec random{"random", {}};
    random.config.strategy = Strategy::random;
    random.config.k = 20;
    auto accounts = generate_accounts(random, inputs, nullptr, 3);
    AttackerRanker a3({AttackerLevel::A3, &toy_model()});
    CHECK(simulate(accounts, a3, 3).p >= 0.95);
}

TEST_CASE("simulate is order and thread independent") {
    auto accounts = numbered_accounts(500, 8);
    AttackerRanker a2({AttackerLevel::A2});
    auto base = simulate(accounts, UniformRanker(), 9);
    auto reversed = accounts;
    std::reverse(reversed.begin(), reversed.end());
    auto r = simulate(reversed, UniformRanker(), 9, {1, 4});
    CHECK(r.hits == base.hits);
    CHECK(r.p == base.p);

    CHECK_THROWS_AS(simulate(std::vector<Account>{}, a2, 1), ConfigError);
    accounts[3].decoys.pop_back();
    CHECK_THROWS_AS(simulate(accounts, a2, 1), ConfigError);
}

TEST_CASE("sweep rows and CSV") {
    auto lines = read_lines(testing::data_dir() / "toy_corpus.txt");
    std::vector<SweepInput> inputs;
    for (std::size_t i = 0; inputs.size() < 40 && i < lines.size(); i += 13)
        if (lines[i].size() >= 8) inputs.push_back({lines[i], std::nullopt});
    std::vector<GeneratorSpec> gens(2);
    gens[0].name = "typo";
    gens[0].config.strategy = Strategy::typo;
    gens[0].config.k = 5;
    gens[0].config.d_min = 1;
    gens[1].name = "corpus";
    gens[1].config.strategy = Strategy::corpus;
    gens[1].config.k = 5;
    std::vector<AttackerLevel> levels{AttackerLevel::A4, AttackerLevel::A1, AttackerLevel::A3, AttackerLevel::A2};
    SweepResources res{&toy_model(), &toy_model()};

    auto rows = sweep(gens, levels, inputs, res, 17);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].generator == "corpus");
    CHECK(rows[0].level == AttackerLevel::A1);
    CHECK(rows[7].generator == "typo");
    CHECK(rows[7].level == AttackerLevel::A4);
    for (const auto& r : rows) {
        CHECK(r.report.accounts == inputs.size());
        CHECK(r.report.k == 5);
    }
    auto csv = sweep_csv(rows);
    auto csv_lines = split_lines(csv);
    REQUIRE(csv_lines.size() == 9);
    CHECK(csv_lines[0] == kSweepCsvHeader);
    CHECK(csv_lines[1].rfind("corpus,A1,", 0) == 0);
    CHECK(sweep_csv(sweep(gens, levels, inputs, res, 17, 4)) == csv);

    gens[0].name = "ty,po";
    CHECK_THROWS_AS(sweep(gens, levels, inputs, res, 17), ConfigError);
}

TEST_CASE("parallel_for reports the first failing index") {
    std::vector<int> seen(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { seen[i]++; });
    CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
    try {
        parallel_for(100, 4, [](std::size_t i) {
            if (i == 30 || i == 70) throw std::runtime_error("boom " + std::to_string(i));
        });
        FAIL("expected exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "boom 30");
    }
}
