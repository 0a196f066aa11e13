#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "honeyauth/rng.hpp"

namespace honeyauth {

// Character classes used by structure templates. Letters are case-folded in
// the template; case lives in the Markov transitions.
enum class SegmentClass : char { letter = 'L', digit = 'D', symbol = 'S' };

SegmentClass segment_class(unsigned char c);

struct Segment {
    SegmentClass cls;
    std::size_t length;

    bool operator==(const Segment&) const = default;
};

// "Summer2024!" -> "L6D4S1"
std::string structure_template(std::string_view password);
std::vector<Segment> parse_template(std::string_view tmpl);

// Synthetic personal data used for targeted decoys and the A4 attacker.
struct PiiRecord {
    std::string username;
    std::optional<int> birth_year;
    std::vector<std::string> name_tokens;
    std::string keyboard_layout = "qwerty";

    // Throws ConfigError unless tokens are lowercase and non-empty.
    void validate() const;

    // Lowercase substrings an attacker or generator may splice in: names,
    // username, four- and two-digit birth year.
    std::vector<std::string> tokens() const;
    std::vector<std::string> letter_tokens() const;
};

// Frequency table, structure-template distribution and order-n character
// transition counts trained from a plaintext corpus.
class CorpusModel {
public:
    static constexpr int kDefaultOrder = 3;
    // Markov smoothing: add-delta over the printable alphabet plus end marker.
    static constexpr double kSmoothing = 0.01;
    static constexpr int kAlphabet = 96;
    static constexpr char kStart = '\x02';
    static constexpr char kEnd = '\x03';

    int order() const { return order_; }
    std::uint64_t total() const { return total_; }
    const std::map<std::string, std::uint64_t, std::less<>>& frequency() const { return frequency_; }
    const std::map<std::string, double, std::less<>>& templates() const { return template_probability_; }

    // Transition counts keyed by context; index = context length 0..order.
    const std::vector<std::map<std::string, std::map<char, std::uint64_t>>>& transitions() const {
        return transitions_;
    }

    std::uint64_t count(std::string_view password) const;

    double template_log_prob(std::string_view password) const;
    double markov_log_prob(std::string_view password) const;
    // template_log_prob + markov_log_prob (natural log).
    double log_prob(std::string_view password) const;

    // Frequency-weighted draw from the corpus multiset.
    const std::string& sample_password(Rng& rng) const;
    const std::string& sample_template(Rng& rng) const;

    // Next character of the given class after `history` (unpadded prefix),
    // backing off to shorter contexts and finally to a uniform pick.
    char sample_next(std::string_view history, SegmentClass cls, Rng& rng) const;

    // Smoothed probability that the character after `history` belongs to
    // cls, or is the end marker when cls is empty.
    double class_probability(std::string_view history, std::optional<SegmentClass> cls) const;

    std::string to_json() const;
    static CorpusModel from_json(std::string_view text);

    bool operator==(const CorpusModel& o) const {
        return order_ == o.order_ && total_ == o.total_ && frequency_ == o.frequency_ &&
               template_counts_ == o.template_counts_ && transitions_ == o.transitions_;
    }

private:
    friend CorpusModel train_model(std::span<const std::string> corpus, int order);

    void finalize();
    std::string context(std::string_view history, int length) const;

    int order_ = kDefaultOrder;
    std::uint64_t total_ = 0;
    std::map<std::string, std::uint64_t, std::less<>> frequency_;
    std::map<std::string, std::uint64_t, std::less<>> template_counts_;
    std::map<std::string, double, std::less<>> template_probability_;
    std::vector<std::map<std::string, std::map<char, std::uint64_t>>> transitions_;

    // Sampling tables rebuilt by finalize().
    std::vector<std::string> password_keys_;
    std::vector<std::uint64_t> password_cumulative_;
    std::vector<std::string> template_keys_;
    std::vector<std::uint64_t> template_cumulative_;
};

// Throws TrainError when the corpus has no usable password. Lines that are
// not valid UTF-8 are skipped; only printable-ASCII passwords feed the
// Markov transitions.
CorpusModel train_model(std::span<const std::string> corpus, int order = CorpusModel::kDefaultOrder);

}  // namespace honeyauth
