#include "honeyauth/cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include <pthread.h>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "honeyauth/auth_service.hpp"
#include "honeyauth/config.hpp"
#include "honeyauth/crackcalc.hpp"
#include "honeyauth/errors.hpp"
#include "honeyauth/gauntlet.hpp"
#include "honeyauth/plaintexts.hpp"
#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct ModelOptions {
    std::string corpus;
    std::string model;

    void add(CLI::App* cmd) {
        cmd->add_option("--corpus", corpus, "Plaintext corpus to train on (one password per line)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--model", model, "Trained model JSON")->check(CLI::ExistingFile);
    }

    std::optional<CorpusModel> load() const {
        if (!model.empty()) return CorpusModel::from_json(read_file(model));
        if (!corpus.empty()) return train_model(read_lines(corpus));
        return std::nullopt;
    }
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << content;
    if (!f.flush()) throw Error("write failed for " + path);
}

// Blocks SIGINT/SIGTERM for this thread and every thread started afterwards,
// then waits for one of them.
struct SignalWaiter {
    sigset_t set;
    SignalWaiter() {
        sigemptyset(&set);
        sigaddset(&set, SIGINT);
        sigaddset(&set, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &set, nullptr);
    }
    int wait() {
        int sig = 0;
        sigwait(&set, &sig);
        return sig;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    for (auto& part : split(text, ',')) {
        auto t = std::string(trim(part));
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

GeneratorConfig generator_config(const AppConfig& cfg, Strategy strategy, std::size_t k, std::size_t d_min,
                                 std::uint64_t seed) {
    GeneratorConfig g;
    g.strategy = strategy;
    g.k = k;
    g.d_min = d_min;
    g.seed = seed;
    g.policy = cfg.policy;
    return g;
}

const CorpusModel* require_model(const std::optional<CorpusModel>& model, std::string_view why) {
    if (!model) throw UsageError(std::string(why) + " needs --corpus or --model");
    return &*model;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"honeyauth: honeyword generation, storage, detection and evaluation", "honeyauth"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string config_path;
    unsigned threads = 1;
    app.add_option("--config", config_path, "INI config with [policy], [responder], [authgate], [kdf.<id>]")
        ->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "Worker threads for generation, hashing and simulation")
        ->check(CLI::Range(1u, 256u));

    // gen
    auto* gen = app.add_subcommand("gen", "Generate and assemble sweetword sets (prints plaintext)");
    std::string gen_real, gen_accounts, gen_strategy = "hybrid", gen_out, gen_policy, gen_pii;
    std::size_t gen_k = 20, gen_dmin = 2;
    std::uint64_t gen_seed = 0;
    bool gen_ack = false;
    ModelOptions gen_model;
    auto* gen_real_opt = gen->add_option("--real", gen_real, "Single real password");
    auto* gen_accounts_opt = gen->add_option("--accounts", gen_accounts, "Accounts file (uid<TAB>password or JSON lines)")
                                 ->check(CLI::ExistingFile);
    gen_real_opt->excludes(gen_accounts_opt);
    gen->add_option("--strategy", gen_strategy, "typo | random | corpus | hybrid")->capture_default_str();
    gen->add_option("--k", gen_k, "Sweetwords per account")->capture_default_str();
    gen->add_option("--d-min", gen_dmin, "Minimum edit distance from the real password")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Master seed")->capture_default_str();
    gen->add_option("--policy", gen_policy, "Policy file (overrides [policy] in --config)")->check(CLI::ExistingFile);
    gen->add_option("--pii", gen_pii, "PII JSON for --real");
    gen->add_option("--out", gen_out, "Output file (default stdout)");
    gen->add_flag("--i-understand-plaintext", gen_ack, "Acknowledge that decoys are printed in plaintext");
    gen_model.add(gen);

    // enroll
    auto* enroll_cmd = app.add_subcommand("enroll", "Hash sweetword sets into a credential store");
    std::string en_plain, en_store, en_kdf = "argon2id", en_checker;
    std::uint64_t en_seed = 0;
    enroll_cmd->add_option("--plaintexts", en_plain, "Sweetword sets written by gen")->required()->check(CLI::ExistingFile);
    enroll_cmd->add_option("--store", en_store, "Credential store (created or extended)")->required();
    enroll_cmd->add_option("--kdf", en_kdf, "KDF profile id")->capture_default_str();
    auto* en_seed_opt = enroll_cmd->add_option("--seed", en_seed, "Derive salts from this seed (reproducible test stores)");
    enroll_cmd->add_option("--checker", en_checker, "Register true indexes with this honeychecker host:port");

    // validate-policy
    auto* vp = app.add_subcommand("validate-policy", "Parse a policy and check stored sets against it");
    std::string vp_policy, vp_store, vp_plain;
    vp->add_option("--policy", vp_policy, "Policy file")->required()->check(CLI::ExistingFile);
    vp->add_option("--store", vp_store, "Credential store")->check(CLI::ExistingFile);
    vp->add_option("--plaintexts", vp_plain, "Sweetword sets for policy compliance checks")->check(CLI::ExistingFile);

    // serve-checker
    auto* sc = app.add_subcommand("serve-checker", "Run the honeychecker TCP service");
    std::string sc_bind;
    std::size_t sc_max_conn = 64;
    sc->add_option("--bind", sc_bind, "host:port (default HC_BIND or 127.0.0.1:7070)");
    sc->add_option("--max-connections", sc_max_conn, "Concurrent connection limit")->capture_default_str();

    // serve-auth
    auto* sa = app.add_subcommand("serve-auth", "Run the demo HTTP login service");
    std::string sa_store, sa_checker, sa_policy, sa_alerts, sa_listen = "127.0.0.1:8080", sa_fail;
    sa->add_option("--store", sa_store, "Credential store")->required()->check(CLI::ExistingFile);
    sa->add_option("--checker", sa_checker, "Honeychecker host:port (default HC_BIND or 127.0.0.1:7070)");
    sa->add_option("--policy", sa_policy, "Policy file")->check(CLI::ExistingFile);
    sa->add_option("--alerts", sa_alerts, "Alert log (JSON lines, appended)")->required();
    sa->add_option("--listen", sa_listen, "host:port for HTTP")->capture_default_str();
    sa->add_option("--fail-mode", sa_fail, "fail-closed | fail-open-real-only");

    // login
    auto* lg = app.add_subcommand("login", "Send one login to a running serve-auth");
    std::string lg_server = "127.0.0.1:8080", lg_uid, lg_password;
    RiskContext lg_ctx;
    lg->add_option("--server", lg_server, "serve-auth host:port")->capture_default_str();
    lg->add_option("--uid", lg_uid, "Account id")->required();
    lg->add_option("--password", lg_password, "Password")->required();
    lg->add_option("--ip-reputation", lg_ctx.ip_reputation, "Risk signal in [0,1]");
    lg->add_option("--geo-anomaly", lg_ctx.geo_anomaly, "Risk signal in [0,1]");
    lg->add_option("--history-anomaly", lg_ctx.history_anomaly, "Risk signal in [0,1]");
    lg->add_flag("--device-mismatch", lg_ctx.device_mismatch, "Unrecognised device");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Attack sweetword sets with one attacker level");
    std::string sim_plain, sim_generator = "hybrid", sim_level, sim_out;
    std::size_t sim_k = 20, sim_dmin = 2, sim_budget = 1;
    std::uint64_t sim_seed = 0;
    ModelOptions sim_model;
    sim->add_option("--store-plaintexts", sim_plain, "Sweetword sets from gen, or an accounts file to generate from")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--generator", sim_generator, "Generator label / strategy")->capture_default_str();
    sim->add_option("--level", sim_level, "A1 | A2 | A3 | A4")->required();
    sim->add_option("--k", sim_k, "Sweetwords per account")->capture_default_str();
    sim->add_option("--d-min", sim_dmin, "Minimum edit distance when generating")->capture_default_str();
    sim->add_option("--budget", sim_budget, "Guesses per account")->capture_default_str();
    sim->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
    sim->add_option("--out", sim_out, "CSV output (default stdout)");
    sim_model.add(sim);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Every generator against every attacker level, as CSV");
    std::string sw_plain, sw_generators = "typo,random,corpus,hybrid", sw_levels = "A1,A2,A3,A4", sw_out;
    std::size_t sw_k = 20, sw_dmin = 2;
    std::uint64_t sw_seed = 0;
    bool sw_no_pii = false;
    ModelOptions sw_model;
    sw->add_option("--store-plaintexts", sw_plain, "Accounts file with real passwords")
        ->required()
        ->check(CLI::ExistingFile);
    sw->add_option("--generators", sw_generators, "Comma-separated strategies")->capture_default_str();
    sw->add_option("--levels", sw_levels, "Comma-separated attacker levels")->capture_default_str();
    sw->add_option("--k", sw_k, "Sweetwords per account")->capture_default_str();
    sw->add_option("--d-min", sw_dmin, "Minimum edit distance")->capture_default_str();
    sw->add_option("--seed", sw_seed, "Master seed")->capture_default_str();
    sw->add_option("--out", sw_out, "CSV output (default stdout)");
    sw->add_flag("--no-pii", sw_no_pii, "Deny A4 access to account PII");
    sw_model.add(sw);

    // crackcalc
    auto* cc = app.add_subcommand("crackcalc", "Entropy and cracking-time estimates");
    int cc_len = 0, cc_alpha = 0;
    double cc_rate = 0;
    std::string cc_budget;
    bool cc_tables = false;
    cc->add_option("--length", cc_len, "Password length")->check(CLI::PositiveNumber);
    cc->add_option("--alphabet", cc_alpha, "Alphabet size")->check(CLI::Range(2, 1 << 20));
    cc->add_option("--rate", cc_rate, "Guesses per second")->check(CLI::PositiveNumber);
    cc->add_option("--budget", cc_budget, "Guess budget (integer or e.g. 5e9)");
    cc->add_flag("--tables", cc_tables, "Print exhaustive and budget tables for the KDF registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        AppConfig cfg = config_path.empty() ? AppConfig{} : load_config(config_path);

        if (gen->parsed()) {
            if (!gen_ack) throw UsageError("gen prints plaintext decoys; pass --i-understand-plaintext");
            if (gen_real.empty() && gen_accounts.empty()) throw UsageError("gen needs --real or --accounts");
            if (!gen_policy.empty()) cfg.policy = load_policy(gen_policy);
            if (!gen_pii.empty() && gen_real.empty()) throw UsageError("--pii applies to --real only");
            auto strategy = parse_strategy(gen_strategy);
            auto model = gen_model.load();
            if ((strategy == Strategy::corpus || strategy == Strategy::hybrid))
                require_model(model, std::string(to_string(strategy)) + " strategy");
            auto g = generator_config(cfg, strategy, gen_k, gen_dmin, gen_seed);
            const CorpusModel* m = model ? &*model : nullptr;
            if (!gen_real.empty()) {
                std::optional<PiiRecord> pii;
                if (!gen_pii.empty()) pii = pii_from_json(gen_pii);
                auto decoys = generate(gen_real, g, m, pii ? &*pii : nullptr);
                auto set = assemble_sweetwords(gen_real, decoys, gen_seed);
                std::string text;
                for (const auto& w : set.sweetwords) text += w + "\n";
                emit(gen_out, text, out);
                err << "true_index " << set.true_index << "\n";
            } else {
                auto sets = generate_sets(load_accounts(gen_accounts), g, m, threads);
                std::string text;
                for (const auto& s : sets) text += serialize_plaintext(s) + "\n";
                emit(gen_out, text, out);
                err << "generated " << sets.size() << " sweetword sets (k=" << gen_k << ")\n";
            }
            return kExitOk;
        }

        if (enroll_cmd->parsed()) {
            auto records = load_plaintexts(en_plain);
            const auto& profile = cfg.kdfs.get(en_kdf);
            CredentialStore store;
            if (std::filesystem::exists(en_store)) store = load_store(en_store);
            std::uint64_t seed = en_seed;
            if (en_seed_opt->count() == 0) {
                auto r = random_bytes(8);
                seed = 0;
                for (auto b : r) seed = (seed << 8) | b;
            }
            std::optional<TcpCheckerClient> checker;
            if (!en_checker.empty()) {
                checker.emplace(Endpoint::parse(en_checker));
                if (!checker->ping()) throw CheckerUnavailable("honeychecker at " + en_checker + " did not answer PING");
            }
            enroll_all(store, records, profile, seed, threads);
            if (checker)
                for (const auto& r : records) checker->set(r.uid, r.sweetwords.size(), r.true_index);
            else
                err << "warning: no --checker given; true indexes were not registered anywhere\n";
            save_store(store, en_store);
            err << "enrolled " << records.size() << " accounts into " << en_store << "\n";
            return kExitOk;
        }

        if (vp->parsed()) {
            Policy policy = load_policy(vp_policy);
            out << render_policy(policy);
            bool clean = true;
            std::optional<CredentialStore> store;
            if (!vp_store.empty()) {
                store = load_store(vp_store);
                out << "# store " << store->size() << " records\n";
            }
            if (!vp_plain.empty()) {
                for (const auto& r : load_plaintexts(vp_plain)) {
                    auto report = check_sweetword_set(policy, r.sweetwords);
                    nlohmann::ordered_json j;
                    j["uid"] = r.uid;
                    j["status"] = std::string(to_string(report.status));
                    j["offending"] = report.offending;
                    if (store) {
                        const auto* rec = store->find(r.uid);
                        j["in_store"] = rec != nullptr;
                        if (!rec || rec->k() != r.sweetwords.size()) clean = false;
                    }
                    if (report.status != SetStatus::OK) clean = false;
                    out << j.dump() << "\n";
                }
            }
            return clean ? kExitOk : kExitRuntime;
        }

        if (sc->parsed()) {
            Endpoint bind = sc_bind.empty() ? default_checker_endpoint() : Endpoint::parse(sc_bind);
            SignalWaiter signals;
            CheckerIndex index;
            CheckerServerOptions opts;
            opts.max_connections = sc_max_conn;
            CheckerServer server(index, opts);
            server.start(bind);
            out << "listening " << bind.host << ":" << server.port() << std::endl;
            signals.wait();
            server.stop();
            return kExitOk;
        }

        if (sa->parsed()) {
            if (!sa_policy.empty()) cfg.policy = load_policy(sa_policy);
            if (!sa_fail.empty()) cfg.fail_mode = parse_fail_mode(sa_fail);
            auto store = load_store(sa_store);
            Endpoint checker_ep = sa_checker.empty() ? default_checker_endpoint() : Endpoint::parse(sa_checker);
            SignalWaiter signals;
            TcpCheckerClient checker(checker_ep);
            Responder responder(cfg.responder);
            std::mutex err_mutex;
            auto report = [&err, &err_mutex](const std::string& msg) {
                std::lock_guard lock(err_mutex);
                err << "operational: " << msg << std::endl;
            };
            AlertLog alert_log(sa_alerts);
            BackgroundAlertSink alerts(alert_log, report);
            GateOptions opts;
            opts.fail_mode = cfg.fail_mode;
            opts.on_operational_error = report;
            AuthGate gate(store, cfg.kdfs, checker, responder, &alerts, opts);
            AuthService service(gate);
            auto listen = Endpoint::parse(sa_listen);
            service.start(listen);
            out << "listening " << listen.host << ":" << service.port() << std::endl;
            signals.wait();
            service.stop();
            return kExitOk;
        }

        if (lg->parsed()) {
            auto ep = Endpoint::parse(lg_server);
            httplib::Client client(ep.host, ep.port);
            client.set_connection_timeout(5);
            nlohmann::ordered_json body;
            body["uid"] = lg_uid;
            body["password"] = lg_password;
            body["context"] = {{"ip_reputation", lg_ctx.ip_reputation},
                               {"geo_anomaly", lg_ctx.geo_anomaly},
                               {"device_mismatch", lg_ctx.device_mismatch},
                               {"history_anomaly", lg_ctx.history_anomaly}};
            auto res = client.Post("/login", body.dump(), "application/json");
            if (!res) throw Error("no response from " + ep.str() + ": " + httplib::to_string(res.error()));
            out << res->body << "\n";
            return kExitOk;
        }

        if (sim->parsed()) {
            auto level = parse_attacker_level(sim_level);
            auto model = sim_model.load();
            auto text = read_file(sim_plain);
            std::vector<Account> accounts;
            if (looks_like_plaintexts(text)) {
                auto records = parse_plaintexts(text);
                for (const auto& r : records)
                    if (r.sweetwords.size() != sim_k)
                        throw ConfigError("record '" + r.uid + "' has k=" + std::to_string(r.sweetwords.size()) +
                                          " but --k is " + std::to_string(sim_k));
                accounts = to_accounts(records);
            } else {
                auto strategy = parse_strategy(sim_generator);
                const CorpusModel* m = nullptr;
                if (strategy == Strategy::corpus || strategy == Strategy::hybrid)
                    m = require_model(model, std::string(to_string(strategy)) + " strategy");
                GeneratorSpec spec{sim_generator, generator_config(cfg, strategy, sim_k, sim_dmin, 0)};
                auto inputs = to_sweep_inputs(parse_accounts(text));
                accounts = generate_accounts(spec, inputs, m, sim_seed, threads);
            }
            AttackerModel am;
            am.level = level;
            am.guess_budget = sim_budget;
            if (level == AttackerLevel::A3 || level == AttackerLevel::A4)
                am.corpus = require_model(model, std::string(to_string(level)) + " attacker");
            am.pii_access = level == AttackerLevel::A4;
            AttackerRanker ranker(am);
            auto report = simulate(accounts, ranker, sim_seed, {sim_budget, threads});
            std::vector<SweepRow> rows{{sim_generator, level, report}};
            emit(sim_out, sweep_csv(rows), out);
            return kExitOk;
        }

        if (sw->parsed()) {
            auto model = sw_model.load();
            std::vector<GeneratorSpec> generators;
            for (const auto& name : split_list(sw_generators)) {
                auto strategy = parse_strategy(name);
                if (strategy == Strategy::corpus || strategy == Strategy::hybrid)
                    require_model(model, name + " generator");
                generators.push_back({name, generator_config(cfg, strategy, sw_k, sw_dmin, 0)});
            }
            std::vector<AttackerLevel> levels;
            for (const auto& name : split_list(sw_levels)) {
                levels.push_back(parse_attacker_level(name));
                if (levels.back() == AttackerLevel::A3 || levels.back() == AttackerLevel::A4)
                    require_model(model, name + " attacker");
            }
            if (generators.empty() || levels.empty()) throw UsageError("sweep needs at least one generator and level");
            auto inputs = to_sweep_inputs(load_accounts(sw_plain));
            SweepResources res;
            res.generator_model = model ? &*model : nullptr;
            res.attacker_model = res.generator_model;
            res.attacker_pii = !sw_no_pii;
            auto rows = sweep(generators, levels, inputs, res, sw_seed, threads);
            emit(sw_out, sweep_csv(rows), out);
            return kExitOk;
        }

        if (cc->parsed()) {
            const bool single = cc_len > 0 || cc_alpha > 0 || cc_rate > 0;
            if (!single && !cc_tables && cc_budget.empty())
                throw UsageError("crackcalc needs --length/--alphabet/--rate, --budget/--rate or --tables");
            std::ostringstream s;
            if (cc_len > 0 || cc_alpha > 0) {
                if (cc_len <= 0 || cc_alpha <= 0) throw UsageError("--length and --alphabet go together");
                s << "entropy_bits " << std::fixed;
                s.precision(2);
                s << crack::entropy_bits(cc_len, cc_alpha) << "\n";
                s.unsetf(std::ios::floatfield);
                s << "keyspace " << crack::keyspace(cc_len, cc_alpha) << "\n";
                if (cc_rate > 0) s << "exhaustive " << crack::exhaustive_time(cc_len, cc_alpha, cc_rate).human() << "\n";
            }
            if (!cc_budget.empty()) {
                if (cc_rate <= 0) throw UsageError("--budget needs --rate");
                crack::Guesses budget;
                if (cc_budget.find_first_of("eE.") != std::string::npos) {
                    double b = -1;
                    try {
                        b = std::stod(cc_budget);
                    } catch (const std::exception&) {
                    }
                    if (!(b >= 0)) throw UsageError("--budget must be non-negative");
                    budget = crack::Guesses(b);
                } else {
                    try {
                        budget = crack::Guesses(cc_budget);
                    } catch (const std::exception&) {
                        throw UsageError("--budget must be a non-negative integer");
                    }
                    if (budget < 0) throw UsageError("--budget must be non-negative");
                }
                s << "budget " << budget << " " << crack::budget_time(budget, cc_rate).human() << "\n";
            }
            if (cc_tables) s << crack::render_tables(cfg.kdfs.table_profiles());
            out << s.str();
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace honeyauth
