#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/corpus_model.hpp"
#include "honeyauth/decoygen.hpp"
#include "honeyauth/rng.hpp"

namespace honeyauth {

// A1: dictionary attacker unaware of honeywords.
// A2: honeyword-aware, no corpus; intrinsic plausibility heuristics.
// A3: honeyword-aware with a public password corpus.
// A4: A3 plus trained PCFG/Markov scoring and PII.
enum class AttackerLevel { A1, A2, A3, A4 };

std::string_view to_string(AttackerLevel level);
AttackerLevel parse_attacker_level(std::string_view text);

struct AttackerModel {
    AttackerLevel level = AttackerLevel::A1;
    const CorpusModel* corpus = nullptr;  // A3 (frequency) and A4 (frequency + trained model)
    bool pii_access = false;              // A4 only
    std::size_t guess_budget = 1;
    double frequency_weight = 1.0;        // A4: weight on ln(1 + corpus count)
    double pii_weight = 2.0;              // A4: bonus per PII token found in a sweetword

    // Throws ConfigError when a level's required resource is missing or a
    // level holds a resource it must not have.
    void validate() const;
};

// Built-in A1 dictionary, most common first.
std::span<const std::string_view> a1_dictionary();

// A2's fixed plausibility table: -0.5 z^2 for length (mean 9, sd 3), log prior
// on the number of character classes, -1 per character of the longest repeat
// run beyond 2.
double plausibility_score(std::string_view password);

// Indices ordered most-likely-real first. Deterministic; ties break
// lexicographically on the sweetword so position carries no signal.
std::vector<std::size_t> attacker_rank(const AttackerModel& model, std::span<const std::string> sweetwords,
                                       const PiiRecord* pii = nullptr);

// Anything that can order sweetwords. rng is a per-account stream for
// randomized rankers; deterministic ones ignore it.
class Ranker {
public:
    virtual ~Ranker() = default;
    virtual std::string name() const = 0;
    virtual std::vector<std::size_t> rank(std::span<const std::string> sweetwords, const PiiRecord* pii,
                                          Rng& rng) const = 0;
};

class AttackerRanker : public Ranker {
public:
    explicit AttackerRanker(AttackerModel model);
    std::string name() const override { return std::string(to_string(model_.level)); }
    std::vector<std::size_t> rank(std::span<const std::string> sweetwords, const PiiRecord* pii,
                                  Rng& rng) const override;

private:
    AttackerModel model_;
};

struct Account {
    std::string real;
    std::vector<std::string> decoys;
    std::optional<PiiRecord> pii;
};

struct FlatnessReport {
    std::string attacker;
    std::size_t k = 0;
    std::size_t accounts = 0;
    std::size_t hits = 0;
    double p = 0;        // fraction of accounts whose real password is within the guess budget
    double epsilon = 0;  // flatness_score(p, k)
    double ci95 = 0;     // normal-approximation half-width of p
};

// clamp(1 - (p - 1/k) / (1 - 1/k), 0, 1). Throws ConfigError for k < 2 or p
// outside [0, 1].
double flatness_score(double p, std::size_t k);

struct SimulateOptions {
    std::size_t guess_budget = 1;
    unsigned threads = 1;
};

// Each account is shuffled with a seed derived from the master seed and the
// account's content, then ranked. The result does not depend on account order
// or thread count. Throws ConfigError for ragged k or an empty account list.
FlatnessReport simulate(std::span<const Account> accounts, const Ranker& ranker, std::uint64_t seed,
                        SimulateOptions options = {});

struct GeneratorSpec {
    std::string name;
    GeneratorConfig config;
};

struct SweepInput {
    std::string real;
    std::optional<PiiRecord> pii;
};

struct SweepResources {
    const CorpusModel* generator_model = nullptr;  // corpus and hybrid generators
    const CorpusModel* attacker_model = nullptr;   // A3 and A4
    bool attacker_pii = true;                      // A4 reads PII when accounts carry it
};

struct SweepRow {
    std::string generator;
    AttackerLevel level;
    FlatnessReport report;
};

// Generates decoys for every account with every generator, attacks each set
// at every level. Rows sorted by (generator, level).
std::vector<SweepRow> sweep(std::span<const GeneratorSpec> generators, std::span<const AttackerLevel> levels,
                            std::span<const SweepInput> accounts, const SweepResources& resources, std::uint64_t seed,
                            unsigned threads = 1);

// Decoys for each account under one generator, seeded per account.
std::vector<Account> generate_accounts(const GeneratorSpec& generator, std::span<const SweepInput> accounts,
                                       const CorpusModel* model, std::uint64_t seed, unsigned threads = 1);

inline constexpr std::string_view kSweepCsvHeader = "generator,level,accounts,k,p_top1,ci95,epsilon";

std::string sweep_csv(std::span<const SweepRow> rows);

// Runs body(i) for i in [0, n) across up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace honeyauth
