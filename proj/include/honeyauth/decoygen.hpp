#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/corpus_model.hpp"
#include "honeyauth/policy.hpp"

namespace honeyauth {

enum class Strategy { typo, random, corpus, hybrid };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct GeneratorConfig {
    Strategy strategy = Strategy::hybrid;
    std::size_t k = 20;
    std::size_t d_min = 2;  // minimum edit distance between any decoy and the real password
    std::uint64_t seed = 0;
    Policy policy;
    std::size_t max_attempts = 10'000;
    // hybrid: chance of splicing a PII token into a letter or year segment
    double pii_probability = 0.3;
    // hybrid: candidates drawn per decoy slot before re-ranking by corpus frequency
    std::size_t rerank_pool = 4;
    // hybrid: Markov walks proposed per template segment, resampled by how
    // likely the model is to produce that segment and then change class
    std::size_t segment_proposals = 8;

    void validate() const;
};

// k-1 distinct decoys, none equal to `real`, each at edit distance >= d_min
// from it and each passing cfg.policy. The typo strategy also keeps every
// decoy within edit distance 2. Deterministic in (real, cfg, model, pii).
// Throws GenerationError naming the constraint that kept failing.
std::vector<std::string> generate(std::string_view real, const GeneratorConfig& cfg, const CorpusModel* model = nullptr,
                                  const PiiRecord* pii = nullptr);

struct AssembledSet {
    std::vector<std::string> sweetwords;
    std::size_t true_index = 0;
};

// Seeded uniform shuffle of {real} + decoys.
AssembledSet assemble_sweetwords(std::string_view real, std::span<const std::string> decoys, std::uint64_t seed);

}  // namespace honeyauth
