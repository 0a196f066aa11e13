#include "honeyauth/gauntlet.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "honeyauth/errors.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

constexpr std::array<std::string_view, 100> kDictionary = {
    "123456",    "password",  "123456789", "12345678",  "12345",      "qwerty",    "1234567",   "111111",
    "1234567890", "123123",   "abc123",    "1234",      "password1",  "iloveyou",  "1q2w3e4r",  "000000",
    "qwerty123", "zaq12wsx",  "dragon",    "sunshine",  "princess",   "letmein",   "654321",    "monkey",
    "27653",     "1qaz2wsx",  "123321",    "qwertyuiop", "superman",  "asdfghjkl", "football",  "baseball",
    "welcome",   "master",    "shadow",    "michael",   "jennifer",   "hunter",    "trustno1",  "whatever",
    "freedom",   "starwars",  "charlie",   "jordan",    "harley",     "ranger",    "buster",    "thomas",
    "tigger",    "robert",    "soccer",    "batman",    "test",       "pass",      "killer",    "hockey",
    "george",    "andrew",    "summer",    "ashley",    "daniel",     "pepper",    "joshua",    "maggie",
    "cookie",    "ginger",    "hello",     "flower",    "password123", "admin",    "login",     "passw0rd",
    "welcome1",  "abc12345",  "qwe123",    "1q2w3e",    "q1w2e3r4",   "secret",    "lovely",    "7777777",
    "888888",    "123qwe",    "solo",      "access",    "mustang",    "696969",    "matrix",    "computer",
    "michelle",  "love",      "nicole",    "chelsea",   "biteme",     "amanda",    "orange",    "summer2020",
    "P@ssw0rd",  "Password1", "Welcome1",  "Qwerty123",
};

constexpr std::array<std::string_view, 4> kLevelNames = {"A1", "A2", "A3", "A4"};

int class_count(std::string_view pw) {
    bool lower = false, upper = false, digit = false, other = false;
    for (unsigned char c : pw) {
        if (c >= 'a' && c <= 'z') lower = true;
        else if (c >= 'A' && c <= 'Z') upper = true;
        else if (c >= '0' && c <= '9') digit = true;
        else other = true;
    }
    return lower + upper + digit + other;
}

std::size_t longest_run(std::string_view pw) {
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < pw.size(); ++i) {
        run = (i > 0 && pw[i] == pw[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

std::size_t pii_overlap(std::string_view pw, const PiiRecord& pii) {
    std::string lower = to_lower(pw);
    std::size_t hits = 0;
    for (const auto& token : pii.tokens())
        if (token.size() >= 2 && lower.find(token) != std::string::npos) ++hits;
    return hits;
}

// Sort by score descending, then sweetword ascending, then index.
std::vector<std::size_t> order_by(std::span<const std::string> sweetwords, const std::vector<double>& primary,
                                  const std::vector<double>& secondary) {
    std::vector<std::size_t> idx(sweetwords.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (primary[a] != primary[b]) return primary[a] > primary[b];
        if (secondary[a] != secondary[b]) return secondary[a] > secondary[b];
        if (sweetwords[a] != sweetwords[b]) return sweetwords[a] < sweetwords[b];
        return a < b;
    });
    return idx;
}

std::uint64_t account_hash(const Account& account) {
    std::uint64_t h = fnv1a64(account.real);
    for (const auto& d : account.decoys) {
        h = fnv1a64(std::string_view("\x1f", 1), h);
        h = fnv1a64(d, h);
    }
    return h;
}

}  // namespace

std::string_view to_string(AttackerLevel level) { return kLevelNames[static_cast<std::size_t>(level)]; }

AttackerLevel parse_attacker_level(std::string_view text) {
    for (std::size_t i = 0; i < kLevelNames.size(); ++i)
        if (text == kLevelNames[i] || (text.size() == 2 && text[0] == 'a' && text[1] == kLevelNames[i][1]))
            return static_cast<AttackerLevel>(i);
    throw ConfigError("unknown attacker level '" + std::string(text) + "' (expected A1..A4)");
}

void AttackerModel::validate() const {
    const bool needs_corpus = level == AttackerLevel::A3 || level == AttackerLevel::A4;
    if (needs_corpus && !corpus)
        throw ConfigError(std::string(to_string(level)) + " attacker needs a trained corpus model");
    if (!needs_corpus && corpus)
        throw ConfigError(std::string(to_string(level)) + " attacker must not hold a corpus model");
    if (pii_access && level != AttackerLevel::A4) throw ConfigError("only the A4 attacker may use PII");
    if (guess_budget == 0) throw ConfigError("guess budget must be at least 1");
}

std::span<const std::string_view> a1_dictionary() { return kDictionary; }

double plausibility_score(std::string_view password) {
    static constexpr std::array<double, 5> kClassPrior = {1e-6, 0.35, 0.50, 0.12, 0.03};
    const double z = (static_cast<double>(password.size()) - 9.0) / 3.0;
    const std::size_t run = longest_run(password);
    return -0.5 * z * z + std::log(kClassPrior[class_count(password)]) - (run > 2 ? double(run - 2) : 0.0);
}

std::vector<std::size_t> attacker_rank(const AttackerModel& model, std::span<const std::string> sweetwords,
                                       const PiiRecord* pii) {
    model.validate();
    const std::size_t k = sweetwords.size();
    std::vector<double> primary(k, 0.0), secondary(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::string& w = sweetwords[i];
        switch (model.level) {
            case AttackerLevel::A1: {
                auto it = std::find(kDictionary.begin(), kDictionary.end(), w);
                primary[i] = it == kDictionary.end() ? 0.0 : 1.0 + static_cast<double>(kDictionary.end() - it);
                break;
            }
            case AttackerLevel::A2:
                primary[i] = plausibility_score(w);
                break;
            case AttackerLevel::A3:
                primary[i] = static_cast<double>(model.corpus->count(w));
                secondary[i] = plausibility_score(w);
                break;
            case AttackerLevel::A4: {
                double s = model.corpus->log_prob(w) +
                           model.frequency_weight * std::log1p(static_cast<double>(model.corpus->count(w)));
                if (model.pii_access && pii) s += model.pii_weight * static_cast<double>(pii_overlap(w, *pii));
                primary[i] = s;
                break;
            }
        }
    }
    return order_by(sweetwords, primary, secondary);
}

AttackerRanker::AttackerRanker(AttackerModel model) : model_(model) { model_.validate(); }

std::vector<std::size_t> AttackerRanker::rank(std::span<const std::string> sweetwords, const PiiRecord* pii,
                                              Rng&) const {
    return attacker_rank(model_, sweetwords, pii);
}

double flatness_score(double p, std::size_t k) {
    if (k < 2) throw ConfigError("flatness needs k >= 2, got " + std::to_string(k));
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("success probability must lie in [0, 1]");
    const double base = 1.0 / static_cast<double>(k);
    return std::clamp(1.0 - (p - base) / (1.0 - base), 0.0, 1.0);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = n;
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                // Report the failure at the lowest index so errors are reproducible.
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

FlatnessReport simulate(std::span<const Account> accounts, const Ranker& ranker, std::uint64_t seed,
                        SimulateOptions options) {
    if (accounts.empty()) throw ConfigError("simulation needs at least one account");
    if (options.guess_budget == 0) throw ConfigError("guess budget must be at least 1");
    const std::size_t k = accounts.front().decoys.size() + 1;
    for (const auto& a : accounts)
        if (a.decoys.size() + 1 != k)
            throw ConfigError("all sweetword sets must have the same k (" + std::to_string(k) + " vs " +
                              std::to_string(a.decoys.size() + 1) + ")");
    if (k < 2) throw ConfigError("sweetword sets need k >= 2");

    std::vector<unsigned char> hit(accounts.size(), 0);
    parallel_for(accounts.size(), options.threads, [&](std::size_t i) {
        const Account& account = accounts[i];
        const std::uint64_t account_seed = derive_seed(seed, account_hash(account));
        auto set = assemble_sweetwords(account.real, account.decoys, account_seed);
        Rng rng(derive_seed(account_seed, std::uint64_t{1}));
        auto order = ranker.rank(set.sweetwords, account.pii ? &*account.pii : nullptr, rng);
        const std::size_t limit = std::min(options.guess_budget, order.size());
        hit[i] = std::find(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(limit), set.true_index) !=
                 order.begin() + static_cast<std::ptrdiff_t>(limit);
    });

    FlatnessReport r;
    r.attacker = ranker.name();
    r.k = k;
    r.accounts = accounts.size();
    r.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    r.p = static_cast<double>(r.hits) / static_cast<double>(r.accounts);
    r.epsilon = flatness_score(r.p, k);
    r.ci95 = 1.96 * std::sqrt(r.p * (1.0 - r.p) / static_cast<double>(r.accounts));
    return r;
}

std::vector<Account> generate_accounts(const GeneratorSpec& generator, std::span<const SweepInput> accounts,
                                       const CorpusModel* model, std::uint64_t seed, unsigned threads) {
    GeneratorConfig cfg = generator.config;
    cfg.seed = derive_seed(seed, generator.name);
    cfg.validate();
    std::vector<Account> out(accounts.size());
    parallel_for(accounts.size(), threads, [&](std::size_t i) {
        const auto& in = accounts[i];
        out[i].real = in.real;
        out[i].pii = in.pii;
        out[i].decoys = generate(in.real, cfg, model, in.pii ? &*in.pii : nullptr);
    });
    return out;
}

std::vector<SweepRow> sweep(std::span<const GeneratorSpec> generators, std::span<const AttackerLevel> levels,
                            std::span<const SweepInput> accounts, const SweepResources& resources, std::uint64_t seed,
                            unsigned threads) {
    for (const auto& g : generators)
        if (g.name.empty() || g.name.find_first_of(",\"\n") != std::string::npos)
            throw ConfigError("generator name '" + g.name + "' cannot appear in CSV");
    std::vector<SweepRow> rows;
    for (const auto& g : generators) {
        auto generated = generate_accounts(g, accounts, resources.generator_model, seed, threads);
        for (AttackerLevel level : levels) {
            AttackerModel m;
            m.level = level;
            if (level == AttackerLevel::A3 || level == AttackerLevel::A4) m.corpus = resources.attacker_model;
            m.pii_access = level == AttackerLevel::A4 && resources.attacker_pii;
            AttackerRanker ranker(m);
            rows.push_back({g.name, level, simulate(generated, ranker, seed, {1, threads})});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.generator != b.generator) return a.generator < b.generator;
        return a.level < b.level;
    });
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%.6f,%.6f,%.6f\n", row.generator.c_str(),
                      std::string(to_string(row.level)).c_str(), row.report.accounts, row.report.k, row.report.p,
                      row.report.ci95, row.report.epsilon);
        out += buf;
    }
    return out;
}

}  // namespace honeyauth
