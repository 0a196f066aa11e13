#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "honeyauth/cli.hpp"
#include "honeyauth/corpus_model.hpp"
#include "honeyauth/crackcalc.hpp"
#include "honeyauth/decoygen.hpp"
#include "honeyauth/errors.hpp"
#include "honeyauth/gauntlet.hpp"
#include "honeyauth/honeychecker.hpp"
#include "honeyauth/kdf.hpp"
#include "honeyauth/policy.hpp"
#include "honeyauth/responder.hpp"

namespace py = pybind11;
using namespace honeyauth;

namespace {

const KdfRegistry& registry() {
    static const KdfRegistry r = KdfRegistry::defaults();
    return r;
}

std::vector<std::string> violation_names(const std::vector<Violation>& v) {
    std::vector<std::string> out;
    for (auto x : v) out.emplace_back(to_string(x));
    return out;
}

GeneratorConfig make_config(const std::string& strategy, std::size_t k, std::size_t d_min, std::uint64_t seed,
                            const std::string& policy) {
    GeneratorConfig cfg;
    cfg.strategy = parse_strategy(strategy);
    cfg.k = k;
    cfg.d_min = d_min;
    cfg.seed = seed;
    cfg.policy = parse_policy(policy);
    return cfg;
}

PiiRecord make_pii(const py::dict& d) {
    PiiRecord pii;
    for (auto [key, value] : d) {
        auto k = key.cast<std::string>();
        if (k == "username") pii.username = value.cast<std::string>();
        else if (k == "birth_year") {
            if (!value.is_none()) pii.birth_year = value.cast<int>();
        } else if (k == "name_tokens") pii.name_tokens = value.cast<std::vector<std::string>>();
        else if (k == "keyboard_layout") pii.keyboard_layout = value.cast<std::string>();
        else throw ConfigError("unknown pii key '" + k + "'");
    }
    pii.validate();
    return pii;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Honeyword generation, detection and evaluation";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<GenerationError>(m, "GenerationError", base.ptr());
    py::register_exception<EnrollError>(m, "EnrollError", base.ptr());
    py::register_exception<TrainError>(m, "TrainError", base.ptr());
    py::register_exception<ProtocolError>(m, "ProtocolError", base.ptr());

    m.def("entropy_bits", &crack::entropy_bits, py::arg("length"), py::arg("alphabet"));
    m.def(
        "keyspace", [](int length, int alphabet) { return crack::keyspace(length, alphabet).str(); },
        py::arg("length"), py::arg("alphabet"), "Exact alphabet**length as a decimal string.");
    m.def(
        "exhaustive_seconds",
        [](int length, int alphabet, double rate) {
            return static_cast<double>(crack::exhaustive_time(length, alphabet, rate).seconds);
        },
        py::arg("length"), py::arg("alphabet"), py::arg("rate"));
    m.def(
        "budget_seconds",
        [](double budget, double rate) {
            return static_cast<double>(crack::budget_time(crack::Guesses(budget), rate).seconds);
        },
        py::arg("budget"), py::arg("rate"));
    m.def("render_tables", [] { return crack::render_tables(registry().table_profiles()); });
    m.attr("SECONDS_PER_YEAR") = crack::kSecondsPerYear;

    m.def("kdf_ids", [] { return registry().ids(); });
    m.def(
        "kdf_hash",
        [](const std::string& password, const std::string& kdf, const py::bytes& salt) {
            std::string s = salt;
            Bytes digest = registry().hash(kdf, password, Bytes(s.begin(), s.end()));
            return py::bytes(reinterpret_cast<const char*>(digest.data()), digest.size());
        },
        py::arg("password"), py::arg("kdf"), py::arg("salt"));

    m.def(
        "check_password",
        [](const std::string& password, const std::string& policy) {
            return violation_names(check_password(parse_policy(policy), password));
        },
        py::arg("password"), py::arg("policy") = "");
    m.def(
        "check_sweetword_set",
        [](const std::vector<std::string>& sweetwords, const std::string& policy) {
            auto r = check_sweetword_set(parse_policy(policy), sweetwords);
            return py::make_tuple(std::string(to_string(r.status)), r.offending);
        },
        py::arg("sweetwords"), py::arg("policy") = "");

    py::class_<CorpusModel>(m, "CorpusModel")
        .def_static("from_json", &CorpusModel::from_json)
        .def("to_json", &CorpusModel::to_json)
        .def("count", &CorpusModel::count)
        .def("log_prob", &CorpusModel::log_prob)
        .def_property_readonly("total", &CorpusModel::total)
        .def_property_readonly("templates", [](const CorpusModel& m) {
            return std::map<std::string, double>(m.templates().begin(), m.templates().end());
        });
    m.def(
        "train_model", [](const std::vector<std::string>& corpus, int order) { return train_model(corpus, order); },
        py::arg("corpus"), py::arg("order") = CorpusModel::kDefaultOrder);
    m.def("structure_template", &structure_template);

    m.def(
        "generate",
        [](const std::string& real, const std::string& strategy, std::size_t k, std::size_t d_min, std::uint64_t seed,
           const CorpusModel* model, const std::optional<py::dict>& pii, const std::string& policy) {
            auto cfg = make_config(strategy, k, d_min, seed, policy);
            std::optional<PiiRecord> p;
            if (pii) p = make_pii(*pii);
            return generate(real, cfg, model, p ? &*p : nullptr);
        },
        py::arg("real"), py::arg("strategy") = "hybrid", py::arg("k") = 20, py::arg("d_min") = 2,
        py::arg("seed") = 0, py::arg("model") = nullptr, py::arg("pii") = py::none(), py::arg("policy") = "");
    m.def(
        "assemble",
        [](const std::string& real, const std::vector<std::string>& decoys, std::uint64_t seed) {
            auto s = assemble_sweetwords(real, decoys, seed);
            return py::make_tuple(s.sweetwords, s.true_index);
        },
        py::arg("real"), py::arg("decoys"), py::arg("seed"));

    m.def("flatness_score", &flatness_score, py::arg("p"), py::arg("k"));
    m.def(
        "attacker_rank",
        [](const std::string& level, const std::vector<std::string>& sweetwords, const CorpusModel* model) {
            AttackerModel am;
            am.level = parse_attacker_level(level);
            if (am.level == AttackerLevel::A3 || am.level == AttackerLevel::A4) am.corpus = model;
            return attacker_rank(am, sweetwords);
        },
        py::arg("level"), py::arg("sweetwords"), py::arg("model") = nullptr);
    m.def(
        "sweep",
        [](const std::vector<std::string>& reals, const std::vector<std::string>& generators,
           const std::vector<std::string>& levels, const CorpusModel* model, std::size_t k, std::uint64_t seed,
           unsigned threads) {
            std::vector<GeneratorSpec> gens;
            for (const auto& g : generators) gens.push_back({g, make_config(g, k, 2, 0, "")});
            std::vector<AttackerLevel> lv;
            for (const auto& l : levels) lv.push_back(parse_attacker_level(l));
            std::vector<SweepInput> inputs;
            for (const auto& r : reals) inputs.push_back({r, std::nullopt});
            SweepResources res{model, model};
            py::gil_scoped_release release;
            return sweep_csv(sweep(gens, lv, inputs, res, seed, threads));
        },
        py::arg("reals"), py::arg("generators"), py::arg("levels"), py::arg("model") = nullptr, py::arg("k") = 20,
        py::arg("seed") = 0, py::arg("threads") = 1, "Flatness sweep as CSV text.");

    py::class_<CheckerIndex>(m, "CheckerIndex")
        .def(py::init<>())
        .def("request", [](CheckerIndex& idx, const std::string& line) { return handle_request(idx, line); })
        .def("__len__", &CheckerIndex::size);

    m.def(
        "score_risk",
        [](double ip, double geo, bool device, double history, bool honey) {
            return score_risk(ResponderConfig{}, RiskContext{ip, geo, device, history}, honey);
        },
        py::arg("ip_reputation") = 0.0, py::arg("geo_anomaly") = 0.0, py::arg("device_mismatch") = false,
        py::arg("history_anomaly") = 0.0, py::arg("honey_event") = false);
    m.def(
        "decide_action",
        [](double risk, bool honey) { return to_string(decide_action(ResponderConfig{}, risk, honey)); },
        py::arg("risk"), py::arg("honey_event"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"honeyauth"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
