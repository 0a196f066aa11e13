#include "honeyauth/corpus_model.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "honeyauth/errors.hpp"
#include "honeyauth/keyboard.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

constexpr std::string_view kLetters = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kDigits = "0123456789";
constexpr std::string_view kSymbols = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

bool printable_ascii(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= 0x20 && c <= 0x7e; });
}

// Markers are never part of a class.
bool in_class(char c, SegmentClass cls) {
    return c != CorpusModel::kStart && c != CorpusModel::kEnd && segment_class(static_cast<unsigned char>(c)) == cls;
}

std::string_view class_charset(SegmentClass cls) {
    switch (cls) {
        case SegmentClass::letter: return kLetters;
        case SegmentClass::digit: return kDigits;
        case SegmentClass::symbol: return kSymbols;
    }
    return kLetters;
}

std::size_t pick_cumulative(const std::vector<std::uint64_t>& cumulative, Rng& rng) {
    auto target = rng.below(cumulative.back());
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace

SegmentClass segment_class(unsigned char c) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return SegmentClass::letter;
    if (c >= '0' && c <= '9') return SegmentClass::digit;
    return SegmentClass::symbol;
}

std::string structure_template(std::string_view password) {
    std::string out;
    std::size_t i = 0;
    while (i < password.size()) {
        auto cls = segment_class(static_cast<unsigned char>(password[i]));
        std::size_t j = i;
        while (j < password.size() && segment_class(static_cast<unsigned char>(password[j])) == cls) ++j;
        out.push_back(static_cast<char>(cls));
        out += std::to_string(j - i);
        i = j;
    }
    return out;
}

std::vector<Segment> parse_template(std::string_view tmpl) {
    std::vector<Segment> out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        char c = tmpl[i++];
        if (c != 'L' && c != 'D' && c != 'S') throw ParseError(0, "bad template '" + std::string(tmpl) + "'");
        std::size_t len = 0;
        std::size_t digits = 0;
        while (i < tmpl.size() && tmpl[i] >= '0' && tmpl[i] <= '9') {
            len = len * 10 + static_cast<std::size_t>(tmpl[i++] - '0');
            ++digits;
        }
        if (digits == 0 || len == 0) throw ParseError(0, "bad template '" + std::string(tmpl) + "'");
        out.push_back({static_cast<SegmentClass>(c), len});
    }
    return out;
}

void PiiRecord::validate() const {
    auto check = [](const std::string& token, const char* what) {
        if (token.empty()) throw ConfigError(std::string("empty PII ") + what);
        if (to_lower(token) != token) throw ConfigError(std::string("PII ") + what + " must be lowercase");
    };
    if (!username.empty()) check(username, "username");
    for (const auto& t : name_tokens) check(t, "name token");
    if (!keyboard_layout_known(keyboard_layout)) throw ConfigError("unknown keyboard layout '" + keyboard_layout + "'");
}

std::vector<std::string> PiiRecord::letter_tokens() const {
    std::vector<std::string> out(name_tokens.begin(), name_tokens.end());
    if (!username.empty()) out.push_back(username);
    return out;
}

std::vector<std::string> PiiRecord::tokens() const {
    auto out = letter_tokens();
    if (birth_year) {
        auto year = std::to_string(*birth_year);
        out.push_back(year);
        if (year.size() == 4) out.push_back(year.substr(2));
    }
    return out;
}

std::uint64_t CorpusModel::count(std::string_view password) const {
    auto it = frequency_.find(password);
    return it == frequency_.end() ? 0 : it->second;
}

std::string CorpusModel::context(std::string_view history, int length) const {
    std::string padded(static_cast<std::size_t>(order_), kStart);
    padded.append(history);
    return padded.substr(padded.size() - static_cast<std::size_t>(length));
}

double CorpusModel::template_log_prob(std::string_view password) const {
    auto it = template_probability_.find(structure_template(password));
    // Unseen structures get half a count worth of mass.
    double p = it == template_probability_.end() ? 0.5 / static_cast<double>(total_ + 1) : it->second;
    return std::log(p);
}

double CorpusModel::markov_log_prob(std::string_view password) const {
    double total = 0;
    std::string history;
    auto step = [&](char c) {
        for (int m = order_; m >= 0; --m) {
            const auto& table = transitions_[static_cast<std::size_t>(m)];
            auto row = table.find(context(history, m));
            if (row == table.end()) continue;
            std::uint64_t sum = 0;
            for (const auto& [_, n] : row->second) sum += n;
            auto hit = row->second.find(c);
            double n = hit == row->second.end() ? 0.0 : static_cast<double>(hit->second);
            total += std::log((n + kSmoothing) / (static_cast<double>(sum) + kSmoothing * kAlphabet));
            return;
        }
        total += std::log(1.0 / kAlphabet);
    };
    for (char c : password) {
        step(c);
        history.push_back(c);
    }
    step(kEnd);
    return total;
}

double CorpusModel::log_prob(std::string_view password) const {
    return template_log_prob(password) + markov_log_prob(password);
}

const std::string& CorpusModel::sample_password(Rng& rng) const {
    return password_keys_[pick_cumulative(password_cumulative_, rng)];
}

const std::string& CorpusModel::sample_template(Rng& rng) const {
    return template_keys_[pick_cumulative(template_cumulative_, rng)];
}

double CorpusModel::class_probability(std::string_view history, std::optional<SegmentClass> cls) const {
    const double members = cls ? static_cast<double>(class_charset(*cls).size()) : 1.0;
    for (int m = order_; m >= 0; --m) {
        const auto& table = transitions_[static_cast<std::size_t>(m)];
        auto row = table.find(context(history, m));
        if (row == table.end()) continue;
        std::uint64_t sum = 0, hits = 0;
        for (const auto& [c, n] : row->second) {
            sum += n;
            if (cls ? in_class(c, *cls) : c == kEnd) hits += n;
        }
        return (static_cast<double>(hits) + kSmoothing * members) / (static_cast<double>(sum) + kSmoothing * kAlphabet);
    }
    return members / kAlphabet;
}

char CorpusModel::sample_next(std::string_view history, SegmentClass cls, Rng& rng) const {
    for (int m = order_; m >= 0; --m) {
        const auto& table = transitions_[static_cast<std::size_t>(m)];
        auto row = table.find(context(history, m));
        if (row == table.end()) continue;
        std::uint64_t sum = 0;
        for (const auto& [c, n] : row->second)
            if (in_class(c, cls)) sum += n;
        if (sum == 0) continue;
        auto target = rng.below(sum);
        for (const auto& [c, n] : row->second) {
            if (!in_class(c, cls)) continue;
            if (target < n) return c;
            target -= n;
        }
    }
    auto charset = class_charset(cls);
    return charset[rng.below(charset.size())];
}

void CorpusModel::finalize() {
    template_probability_.clear();
    std::uint64_t template_total = 0;
    for (const auto& [_, n] : template_counts_) template_total += n;
    for (const auto& [t, n] : template_counts_)
        template_probability_[t] = static_cast<double>(n) / static_cast<double>(template_total);

    password_keys_.clear();
    password_cumulative_.clear();
    std::uint64_t acc = 0;
    for (const auto& [pw, n] : frequency_) {
        acc += n;
        password_keys_.push_back(pw);
        password_cumulative_.push_back(acc);
    }
    template_keys_.clear();
    template_cumulative_.clear();
    acc = 0;
    for (const auto& [t, n] : template_counts_) {
        acc += n;
        template_keys_.push_back(t);
        template_cumulative_.push_back(acc);
    }
}

CorpusModel train_model(std::span<const std::string> corpus, int order) {
    if (order < 1) throw TrainError("markov order must be >= 1");
    CorpusModel model;
    model.order_ = order;
    model.transitions_.assign(static_cast<std::size_t>(order) + 1, {});
    for (const auto& pw : corpus) {
        if (pw.empty() || !valid_utf8(pw)) continue;
        ++model.total_;
        ++model.frequency_[pw];
        ++model.template_counts_[structure_template(pw)];
        if (!printable_ascii(pw)) continue;
        std::string history;
        auto record = [&](char c) {
            for (int m = 0; m <= order; ++m)
                ++model.transitions_[static_cast<std::size_t>(m)][model.context(history, m)][c];
        };
        for (char c : pw) {
            record(c);
            history.push_back(c);
        }
        record(CorpusModel::kEnd);
    }
    if (model.total_ == 0) throw TrainError("corpus contains no usable passwords");
    model.finalize();
    return model;
}

std::string CorpusModel::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "honeyauth-corpus-model/1";
    j["order"] = order_;
    j["total"] = total_;
    j["frequency"] = nlohmann::ordered_json::object();
    for (const auto& [pw, n] : frequency_) j["frequency"][pw] = n;
    j["template_counts"] = nlohmann::ordered_json::object();
    for (const auto& [t, n] : template_counts_) j["template_counts"][t] = n;
    j["templates"] = nlohmann::ordered_json::object();
    for (const auto& [t, p] : template_probability_) j["templates"][t] = p;
    auto markov = nlohmann::ordered_json::array();
    for (const auto& table : transitions_) {
        auto rows = nlohmann::ordered_json::object();
        for (const auto& [ctx, row] : table) {
            auto counts = nlohmann::ordered_json::object();
            for (const auto& [c, n] : row) counts[std::string(1, c)] = n;
            rows[ctx] = std::move(counts);
        }
        markov.push_back(std::move(rows));
    }
    j["markov"] = std::move(markov);
    return j.dump();
}

CorpusModel CorpusModel::from_json(std::string_view text) {
    CorpusModel model;
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("format") != "honeyauth-corpus-model/1") throw ParseError(0, "unsupported model format");
        model.order_ = j.at("order").get<int>();
        model.total_ = j.at("total").get<std::uint64_t>();
        for (const auto& [pw, n] : j.at("frequency").items()) model.frequency_[pw] = n.get<std::uint64_t>();
        for (const auto& [t, n] : j.at("template_counts").items()) model.template_counts_[t] = n.get<std::uint64_t>();
        for (const auto& table : j.at("markov")) {
            auto& out = model.transitions_.emplace_back();
            for (const auto& [ctx, row] : table.items())
                for (const auto& [c, n] : row.items()) {
                    if (c.size() != 1) throw ParseError(0, "markov symbol must be one byte");
                    out[ctx][c[0]] = n.get<std::uint64_t>();
                }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("corpus model: ") + e.what());
    }
    if (model.order_ < 1 || model.transitions_.size() != static_cast<std::size_t>(model.order_) + 1 ||
        model.total_ == 0 || model.frequency_.empty())
        throw ParseError(0, "corpus model: inconsistent header");
    model.finalize();
    return model;
}

}  // namespace honeyauth
