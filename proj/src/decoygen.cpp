#include "honeyauth/decoygen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>

#include "honeyauth/errors.hpp"
#include "honeyauth/keyboard.hpp"
#include "honeyauth/rng.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

enum class Reject { equals_real, duplicate, too_close, too_far, policy, count_ };

constexpr std::array<std::string_view, static_cast<std::size_t>(Reject::count_)> kRejectNames{
    "distinct from real", "distinct from other decoys", "edit distance >= d_min", "edit distance <= 2",
    "policy compliance"};

// Applies the per-decoy constraints and remembers why candidates failed so an
// exhausted search can name the culprit.
class Acceptor {
public:
    Acceptor(std::string_view real, const GeneratorConfig& cfg, bool typo) : real_(real), cfg_(cfg), typo_(typo) {}

    bool offer(const std::string& candidate) {
        auto reason = check(candidate);
        if (reason) {
            ++rejections_[static_cast<std::size_t>(*reason)];
            return false;
        }
        accepted_.insert(candidate);
        return true;
    }

    [[noreturn]] void fail(std::size_t attempts, std::size_t got, std::size_t wanted) const {
        auto worst = std::max_element(rejections_.begin(), rejections_.end()) - rejections_.begin();
        std::string msg = "strategy " + std::string(to_string(cfg_.strategy)) + ": produced " + std::to_string(got) +
                          " of " + std::to_string(wanted) + " decoys after " + std::to_string(attempts) +
                          " attempts; violated constraint: " + std::string(kRejectNames[static_cast<std::size_t>(worst)]);
        throw GenerationError(msg);
    }

    const std::set<std::string>& accepted() const { return accepted_; }

private:
    std::optional<Reject> check(const std::string& c) const {
        if (c == real_) return Reject::equals_real;
        if (accepted_.count(c)) return Reject::duplicate;
        auto d = edit_distance(c, real_);
        if (d < cfg_.d_min) return Reject::too_close;
        if (typo_ && d > 2) return Reject::too_far;
        if (!check_password(cfg_.policy, c).empty()) return Reject::policy;
        return std::nullopt;
    }

    std::string_view real_;
    const GeneratorConfig& cfg_;
    bool typo_;
    std::set<std::string> accepted_;
    std::array<std::size_t, static_cast<std::size_t>(Reject::count_)> rejections_{};
};

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
char upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

// One typing mistake: adjacent-key substitution, case toggle, trailing-digit
// increment/decrement or adjacent transposition. Returns false if the chosen
// kind does not apply.
bool apply_typo(std::string& s, std::string_view layout, Rng& rng) {
    switch (rng.below(4)) {
        case 0: {
            std::vector<std::size_t> positions;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!adjacent_keys(layout, lower(s[i])).empty()) positions.push_back(i);
            if (positions.empty()) return false;
            auto i = positions[rng.below(positions.size())];
            auto near = adjacent_keys(layout, lower(s[i]));
            char repl = near[rng.below(near.size())];
            s[i] = (s[i] >= 'A' && s[i] <= 'Z') ? upper(repl) : repl;
            return true;
        }
        case 1: {
            std::vector<std::size_t> positions;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (is_letter(s[i])) positions.push_back(i);
            if (positions.empty()) return false;
            auto i = positions[rng.below(positions.size())];
            s[i] = s[i] == lower(s[i]) ? upper(s[i]) : lower(s[i]);
            return true;
        }
        case 2: {
            if (s.empty() || !is_digit(s.back())) return false;
            int d = s.back() - '0';
            d = rng.below(2) == 0 ? (d + 1) % 10 : (d + 9) % 10;
            s.back() = static_cast<char>('0' + d);
            return true;
        }
        default: {
            std::vector<std::size_t> positions;
            for (std::size_t i = 0; i + 1 < s.size(); ++i)
                if (s[i] != s[i + 1]) positions.push_back(i);
            if (positions.empty()) return false;
            auto i = positions[rng.below(positions.size())];
            std::swap(s[i], s[i + 1]);
            return true;
        }
    }
}

std::vector<std::string> generate_typo(std::string_view real, const GeneratorConfig& cfg, const PiiRecord* pii,
                                       Rng& rng) {
    if (cfg.d_min > 2) throw GenerationError("typo strategy requires d_min <= 2");
    std::string layout = pii ? pii->keyboard_layout : "qwerty";
    Acceptor acceptor(real, cfg, true);
    std::vector<std::string> out;
    std::size_t attempts = 0;
    while (out.size() + 1 < cfg.k) {
        if (attempts++ >= cfg.max_attempts) acceptor.fail(attempts - 1, out.size(), cfg.k - 1);
        std::string candidate(real);
        std::size_t edits = 1 + rng.below(2);
        for (std::size_t applied = 0, tries = 0; applied < edits && tries < 16; ++tries)
            if (apply_typo(candidate, layout, rng)) ++applied;
        if (acceptor.offer(candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

std::vector<std::string> generate_random(std::string_view real, const GeneratorConfig& cfg, Rng& rng) {
    constexpr char kFirst = 0x21;
    constexpr char kLast = 0x7e;
    const std::size_t length = std::max(utf8_length(real), static_cast<std::size_t>(cfg.policy.minlen));
    Acceptor acceptor(real, cfg, false);
    std::vector<std::string> out;
    std::size_t attempts = 0;
    while (out.size() + 1 < cfg.k) {
        if (attempts++ >= cfg.max_attempts) acceptor.fail(attempts - 1, out.size(), cfg.k - 1);
        std::string candidate(length, ' ');
        for (auto& c : candidate) c = static_cast<char>(kFirst + rng.below(kLast - kFirst + 1));
        if (acceptor.offer(candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

std::vector<std::string> generate_corpus(std::string_view real, const GeneratorConfig& cfg,
                                         const CorpusModel& model, Rng& rng) {
    Acceptor acceptor(real, cfg, false);
    std::vector<std::string> out;
    std::size_t attempts = 0;
    while (out.size() + 1 < cfg.k) {
        if (attempts++ >= cfg.max_attempts) acceptor.fail(attempts - 1, out.size(), cfg.k - 1);
        const auto& candidate = model.sample_password(rng);
        if (acceptor.offer(candidate)) out.push_back(candidate);
    }
    return out;
}

// One letter/digit/symbol run drawn from the Markov model. Independent
// class-constrained walks are weighted by the probability mass of the required
// class at each step after the first plus the mass of the following class (or
// the end marker), then one is resampled. This keeps words from being cut off
// where the template changes class.
std::string markov_segment(const CorpusModel& model, const std::string& prefix, const Segment& seg,
                           std::optional<SegmentClass> next, std::size_t proposals, Rng& rng) {
    std::vector<std::string> walks(proposals);
    std::vector<double> weights(proposals, 1.0);
    double total = 0;
    for (std::size_t j = 0; j < proposals; ++j) {
        std::string text = prefix;
        for (std::size_t i = 0; i < seg.length; ++i) {
            if (i > 0) weights[j] *= model.class_probability(text, seg.cls);
            text.push_back(model.sample_next(text, seg.cls, rng));
        }
        weights[j] *= model.class_probability(text, next);
        walks[j] = text.substr(prefix.size());
        total += weights[j];
    }
    if (proposals == 1 || !(total > 0)) return walks.front();
    double target = rng.unit() * total;
    for (std::size_t j = 0; j < proposals; ++j) {
        if (target < weights[j]) return walks[j];
        target -= weights[j];
    }
    return walks.back();
}

// Template from the PCFG, characters from class-constrained Markov walks,
// optional PII splices.
std::string hybrid_candidate(const CorpusModel& model, const PiiRecord* pii, const GeneratorConfig& cfg, Rng& rng) {
    auto segments = parse_template(model.sample_template(rng));
    std::vector<std::string> letter_tokens;
    if (pii) letter_tokens = pii->letter_tokens();
    std::string out;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        if (seg.cls == SegmentClass::letter && !letter_tokens.empty() && rng.chance(cfg.pii_probability)) {
            out += letter_tokens[rng.below(letter_tokens.size())];
            continue;
        }
        if (seg.cls == SegmentClass::digit && pii && pii->birth_year && (seg.length == 4 || seg.length == 2) &&
            rng.chance(cfg.pii_probability)) {
            auto year = std::to_string(*pii->birth_year);
            out += seg.length == 4 ? year : year.substr(year.size() - 2);
            continue;
        }
        std::optional<SegmentClass> next;
        if (s + 1 < segments.size()) next = segments[s + 1].cls;
        out += markov_segment(model, out, seg, next, cfg.segment_proposals, rng);
    }
    return out;
}

std::vector<std::string> generate_hybrid(std::string_view real, const GeneratorConfig& cfg, const CorpusModel& model,
                                         const PiiRecord* pii, Rng& rng) {
    const std::size_t wanted = cfg.k - 1;
    const std::size_t pool_target = wanted * std::max<std::size_t>(cfg.rerank_pool, 1);
    Acceptor acceptor(real, cfg, false);
    std::vector<std::string> pool;
    std::size_t attempts = 0;
    while (pool.size() < pool_target && attempts < cfg.max_attempts) {
        ++attempts;
        auto candidate = hybrid_candidate(model, pii, cfg, rng);
        if (acceptor.offer(candidate)) pool.push_back(std::move(candidate));
    }
    if (pool.size() < wanted) acceptor.fail(attempts, pool.size(), wanted);

    struct Ranked {
        std::uint64_t frequency;
        double log_prob;
        std::string word;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(pool.size());
    for (auto& w : pool) ranked.push_back({model.count(w), model.log_prob(w), std::move(w)});
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
        return a.word < b.word;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < wanted; ++i) out.push_back(std::move(ranked[i].word));
    return out;
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::typo: return "typo";
        case Strategy::random: return "random";
        case Strategy::corpus: return "corpus";
        case Strategy::hybrid: return "hybrid";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    for (auto s : {Strategy::typo, Strategy::random, Strategy::corpus, Strategy::hybrid})
        if (to_string(s) == name) return s;
    if (name == "random-string") return Strategy::random;
    throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void GeneratorConfig::validate() const {
    if (k < 2) throw ConfigError("k must be >= 2");
    if (d_min < 1) throw ConfigError("d_min must be >= 1");
    if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
    if (segment_proposals < 1) throw ConfigError("segment_proposals must be >= 1");
    if (pii_probability < 0 || pii_probability > 1) throw ConfigError("pii_probability must be in [0, 1]");
    policy.validate();
}

std::vector<std::string> generate(std::string_view real, const GeneratorConfig& cfg, const CorpusModel* model,
                                  const PiiRecord* pii) {
    cfg.validate();
    if (real.empty()) throw GenerationError("real password is empty");
    if (pii) pii->validate();
    Rng rng(derive_seed(cfg.seed, real));
    switch (cfg.strategy) {
        case Strategy::typo: return generate_typo(real, cfg, pii, rng);
        case Strategy::random: return generate_random(real, cfg, rng);
        case Strategy::corpus:
            if (!model) throw ConfigError("corpus strategy requires a trained model");
            return generate_corpus(real, cfg, *model, rng);
        case Strategy::hybrid:
            if (!model) throw ConfigError("hybrid strategy requires a trained model");
            return generate_hybrid(real, cfg, *model, pii, rng);
    }
    throw ConfigError("unhandled strategy");
}

AssembledSet assemble_sweetwords(std::string_view real, std::span<const std::string> decoys, std::uint64_t seed) {
    std::set<std::string_view> seen{real};
    for (const auto& d : decoys)
        if (!seen.insert(d).second) throw GenerationError("duplicate sweetword '" + d + "'");
    AssembledSet set;
    set.sweetwords.reserve(decoys.size() + 1);
    set.sweetwords.emplace_back(real);
    set.sweetwords.insert(set.sweetwords.end(), decoys.begin(), decoys.end());
    Rng rng(seed);
    for (std::size_t i = set.sweetwords.size(); i > 1; --i) std::swap(set.sweetwords[i - 1], set.sweetwords[rng.below(i)]);
    set.true_index = static_cast<std::size_t>(
        std::find(set.sweetwords.begin(), set.sweetwords.end(), real) - set.sweetwords.begin());
    return set;
}

}  // namespace honeyauth
