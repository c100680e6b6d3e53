#include "qfh/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfh/oracles.hpp"
#include "qfh/rng.hpp"
#include "qfh/search.hpp"

namespace qfh {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json clause_json(const BoundClause& clause) {
    return ordered_json{{"applicable", clause.applicable}, {"advisory", clause.advisory},
                        {"pass", clause.pass},             {"lhs", clause.lhs},
                        {"rhs", clause.rhs},               {"note", clause.note}};
}

Word read_query(const std::string& word_text, const std::string& word_file) {
    if (word_text.empty() == word_file.empty())
        throw std::invalid_argument("pass the query with exactly one of --word or --word-file");
    if (!word_text.empty()) return parse_word(word_text);
    std::ifstream in(word_file);
    if (!in) throw std::runtime_error("cannot open word file: " + word_file);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) return parse_word(line);
    throw std::runtime_error("word file has no word: " + word_file);
}

struct LoadedInstance {
    std::vector<Word> dictionary;
    std::size_t original_n = 0;
    std::shared_ptr<FingerprintHash> hash;
    std::vector<std::string> notes;
};

LoadedInstance load_instance(const std::string& dict_path, const std::string& code_path, bool pad,
                             std::uint64_t seed) {
    LoadedInstance loaded;
    loaded.dictionary = load_dictionary_file(dict_path);
    loaded.original_n = loaded.dictionary.size();
    if ((loaded.original_n & (loaded.original_n - 1)) != 0) {
        if (!pad)
            throw std::invalid_argument("dictionary size must be a power of two; rerun with --pad to repeat entry 0");
        std::size_t n = 1;
        while (n < loaded.original_n) n <<= 1;
        while (loaded.dictionary.size() < n) loaded.dictionary.push_back(loaded.dictionary.front());
        loaded.notes.push_back("padded dictionary from " + std::to_string(loaded.original_n) + " to " +
                               std::to_string(n) + " entries by repeating entry 0; success probability is diluted");
    }

    LinearCode code = load_code_file(code_path);
    if (code.m != loaded.dictionary.front().size)
        throw std::invalid_argument("code message length does not match dictionary word length");
    CodeMetrics metrics;
    if (code.m <= 20) {
        metrics = min_distance_exact(code);
    } else {
        metrics = min_distance_sampled(code, 100000, seed ^ 1);
        loaded.notes.push_back("epsilon estimated from 100000 sampled messages; bound verdicts are advisory");
    }
    if (metrics.d_min == 0) loaded.notes.push_back("degenerate code: distinct words can share a codeword");
    loaded.hash = std::make_shared<FingerprintHash>(std::move(code), metrics);
    return loaded;
}

IterationPolicy parse_policy(const std::string& text) {
    if (text == "exact") return IterationPolicy::exact();
    if (text == "blind") return IterationPolicy::blind();
    if (text.rfind("fixed:", 0) == 0) {
        const int t = std::stoi(text.substr(6));
        if (t < 0) throw std::invalid_argument("fixed iteration count must be non-negative");
        return IterationPolicy::fixed(t);
    }
    throw std::invalid_argument("policy must be exact, blind or fixed:<t>");
}

int exit_code_for(const RunReport& report) {
    if (report.status == "found") return 0;
    if (report.status == "hash-nonzero") return 4;
    return 3;
}

void print_search_summary(std::ostream& out, const RunReport& report, std::size_t original_n) {
    out << "n=" << report.n << " m=" << report.m << " l=" << report.l << " s=" << report.s
        << " epsilon=" << report.epsilon << (report.epsilon_exact ? " (exact)" : " (sampled)") << "\n";
    out << "p_good=" << report.p_good << " theta=" << report.theta << " t=" << report.t
        << " policy=" << report.policy << "\n";
    out << "pr_success_exact=" << report.pr_success_exact << " bound_lower=" << report.bound_lower
        << " qubits=" << report.qubits << " queries=" << report.queries << "\n";
    if (report.shots > 0) {
        out << "shots=" << report.shots << " found=" << report.found << " not_found=" << report.not_found
            << " hash_nonzero=" << report.hash_nonzero << "\n";
        // modal verified index over the good outcomes
        std::uint64_t best_index = 0;
        int best_count = -1;
        const int s = report.s;
        for (const auto& [basis, count] : report.histogram) {
            const bool good_block = ((basis >> 1) & ((1ull << (s + 1)) - 1)) == 0;
            if (!good_block) continue;
            if (count > best_count) {
                best_count = count;
                best_index = basis >> (s + 2);
            }
        }
        if (best_count >= 0) {
            if (original_n != 0 && best_index >= original_n) best_index = 0;
            out << "top measured index: " << best_index << " (" << best_count << "/" << report.shots
                << " shots)" << "\n";
        }
    }
    for (const auto& note : report.notes) out << "note: " << note << "\n";
    out << "checks: success_bound " << (report.checks.success_bound.ok() ? "ok" : "FAIL") << ", query_budget "
        << (report.checks.query_budget.ok() ? "ok" : "FAIL") << ", qubit_budget "
        << (report.checks.qubit_budget.ok() ? "ok" : "FAIL") << "\n";
    out << "status=" << report.status << "\n";
}

int cmd_gen_dict(std::uint64_t n, int m, std::uint64_t seed, const std::string& out_path) {
    if (n < 1 || n > (1u << 20)) throw std::invalid_argument("gen-dict needs 1 <= n <= 2^20");
    std::mt19937_64 gen(seed ^ 2);
    std::vector<Word> words;
    words.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) words.push_back(random_word(gen, m));
    save_dictionary_file(out_path, words);
    std::cout << "wrote " << n << " words of length " << m << " to " << out_path << "\n";
    return 0;
}

int cmd_gen_code(int m, int rate, int s_override, std::uint64_t seed, const std::string& out_path) {
    const int s = s_override > 0 ? s_override : default_code_exponent(m, rate);
    LinearCode code = generate_random_linear_code(m, s, seed ^ 1);
    save_code_file(out_path, code);
    CodeMetrics metrics = (m <= 20) ? min_distance_exact(code) : min_distance_sampled(code, 100000, seed ^ 4);
    std::cout << "wrote code m=" << m << " l=" << code.l << " (s=" << s << ") to " << out_path << "\n";
    std::cout << "d_min" << (metrics.exact ? "=" : "<=") << metrics.d_min << " epsilon"
              << (metrics.exact ? "=" : ">=") << metrics.epsilon << (metrics.exact ? " (exact)" : " (sampled)")
              << "\n";
    if (metrics.d_min == 0) std::cout << "warning: degenerate code, distinct words can share a codeword\n";
    return 0;
}

int cmd_search(const std::string& dict_path, const std::string& code_path, const std::string& word_text,
               const std::string& word_file, const std::string& policy_text, int shots, std::uint64_t seed,
               bool pad, bool json, const std::string& dump_state_path) {
    LoadedInstance loaded = load_instance(dict_path, code_path, pad, seed);
    SearchInstance instance;
    instance.dictionary = loaded.dictionary;
    instance.query = read_query(word_text, word_file);
    if (instance.query.size != loaded.hash->spec().m)
        throw std::invalid_argument("query length does not match dictionary word length");
    instance.hash = loaded.hash;
    instance.policy = parse_policy(policy_text);
    instance.seed = seed ^ 3;
    instance.shots = shots;

    RunReport report = run_search(instance);
    report.seed = seed;  // report the command seed, not the derived stream
    for (auto& note : loaded.notes) report.notes.push_back(note);

    if (!dump_state_path.empty()) {
        PipelineStages stages = run_pipeline(instance);
        save_state_file(dump_state_path, stages.final, stages.layout);
        report.notes.push_back("final state dumped to " + dump_state_path);
    }

    if (json) std::cout << report_to_json(report, "search") << "\n";
    else print_search_summary(std::cout, report, loaded.original_n);
    return exit_code_for(report);
}

int cmd_analyze(const std::string& dict_path, const std::string& code_path, const std::string& word_text,
                const std::string& word_file, bool pad, bool json) {
    LoadedInstance loaded = load_instance(dict_path, code_path, pad, /*seed=*/0);
    SearchInstance instance;
    instance.dictionary = loaded.dictionary;
    instance.query = read_query(word_text, word_file);
    if (instance.query.size != loaded.hash->spec().m)
        throw std::invalid_argument("query length does not match dictionary word length");
    instance.hash = loaded.hash;
    instance.policy = IterationPolicy::exact();
    instance.shots = 0;

    RunReport report = run_search(instance);
    for (auto& note : loaded.notes) report.notes.push_back(note);
    if (json) {
        std::cout << report_to_json(report, "analyze") << "\n";
        return 0;
    }

    const std::vector<OverlapRow> table = overlap_table(instance.dictionary, instance.query, *loaded.hash);
    std::cout << "n=" << report.n << " m=" << report.m << " l=" << report.l << " s=" << report.s
              << " epsilon=" << report.epsilon << (report.epsilon_exact ? " (exact)" : " (sampled)") << "\n";
    std::cout << "   j    d_j   1-d/l      good amplitude * sqrt(n)\n";
    for (const auto& row : table) {
        const double expected = 1.0 - static_cast<double>(row.d) / report.l;
        std::printf("%4llu %6d %8.5f %14.10f\n", static_cast<unsigned long long>(row.j), row.d, expected,
                    row.alpha0);
    }
    std::cout << "p_good=" << report.p_good << " theta=" << report.theta << "\n";
    const int t_blind = choose_iterations(report.p_good > 0 ? report.p_good : 1.0, IterationPolicy::blind(),
                                          report.n);
    std::cout << "t_exact=" << report.t << " t_blind=" << t_blind << "\n";
    std::cout << "pr_success_exact=" << report.pr_success_exact << " bound_lower=" << report.bound_lower << "\n";
    std::cout << "qubits=" << report.qubits << " queries=" << report.queries << "\n";
    for (const auto& note : report.notes) std::cout << "note: " << note << "\n";
    return 0;
}

int cmd_sweep(const std::vector<std::uint64_t>& n_list, int m, int trials, int rate,
              const std::string& policy_text, std::uint64_t master_seed, const std::string& out_path) {
    if (trials < 0) throw std::invalid_argument("trials must be non-negative");
    for (std::uint64_t n : n_list)
        if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("sweep sizes must be powers of two");
    const IterationPolicy policy = parse_policy(policy_text);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write sweep file: " + out_path);
    out << sweep_csv_header() << "\n";
    if (trials == 0) {
        std::cout << "rows=0 pass=0 fail=0\n";
        return 0;
    }

    const int s = default_code_exponent(m, rate);
    const std::size_t total = n_list.size() * static_cast<std::size_t>(trials);
    std::vector<RunReport> reports(total);
    std::atomic<std::size_t> cursor{0};
    const int workers = std::min<int>(threads_from_env(), static_cast<int>(total));

    auto work = [&]() {
        for (;;) {
            const std::size_t run = cursor.fetch_add(1);
            if (run >= total) return;
            const std::uint64_t n = n_list[run / static_cast<std::size_t>(trials)];
            const std::uint64_t run_seed = derive_seed(master_seed, run);

            SearchInstance instance;
            instance.hash = make_fingerprint_hash(m, s, run_seed ^ 1);
            std::mt19937_64 dict_gen(run_seed ^ 2);
            instance.dictionary.reserve(n);
            for (std::uint64_t j = 0; j < n; ++j) instance.dictionary.push_back(random_word(dict_gen, m));
            instance.query = instance.dictionary[dict_gen() % n];
            instance.policy = policy;
            instance.seed = run_seed ^ 3;
            instance.shots = 0;
            reports[run] = run_search(instance);
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::size_t pass = 0;
    for (const auto& report : reports) {
        out << sweep_csv_row(report) << "\n";
        if (report.checks.all_ok()) ++pass;
    }
    std::cout << "rows=" << total << " pass=" << pass << " fail=" << (total - pass) << "\n";
    return pass == total ? 0 : 3;
}

int cmd_verify_bounds(int m, double epsilon, int s, bool json) {
    const WidthCheck check = check_min_width(m, epsilon, s);
    if (json) {
        ordered_json j{{"schema", 1},       {"command", "verify-bounds"}, {"m", m},
                       {"epsilon", epsilon}, {"s", s},                    {"applicable", check.applicable},
                       {"bound", check.bound}, {"pass", check.pass},      {"note", check.note}};
        std::cout << j.dump(2) << "\n";
    } else if (!check.applicable) {
        std::cout << "width bound not applicable: " << check.note << "\n";
    } else {
        std::cout << "required width >= " << check.bound << " qubits, given s=" << s << ": "
                  << (check.pass ? "pass" : "FAIL") << "\n";
    }
    return check.pass || !check.applicable ? 0 : 3;
}

}  // namespace

std::string report_to_json(const RunReport& report, const std::string& command) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["n"] = report.n;
    j["m"] = report.m;
    j["l"] = report.l;
    j["s"] = report.s;
    j["epsilon"] = report.epsilon;
    j["epsilon_exact"] = report.epsilon_exact;
    j["d_profile"] = report.d_profile;
    j["p_good"] = report.p_good;
    j["theta"] = report.theta;
    j["t"] = report.t;
    j["a"] = report.a;
    j["pr_success_exact"] = report.pr_success_exact;
    j["bound_lower"] = report.bound_lower;
    j["qubits"] = report.qubits;
    j["queries"] = report.queries;
    j["shots"] = report.shots;
    ordered_json hist = ordered_json::object();
    for (const auto& [basis, count] : report.histogram) hist[std::to_string(basis)] = count;
    j["histogram"] = std::move(hist);
    j["tallies"] = ordered_json{{"found", report.found},
                                {"not_found", report.not_found},
                                {"hash_nonzero", report.hash_nonzero}};
    j["matches"] = report.matches;
    j["seed"] = report.seed;
    j["policy"] = report.policy;
    j["status"] = report.status;
    j["amplification_refused"] = report.amplification_refused;
    j["notes"] = report.notes;
    j["checks"] = ordered_json{{"success_bound", clause_json(report.checks.success_bound)},
                               {"query_budget", clause_json(report.checks.query_budget)},
                               {"qubit_budget", clause_json(report.checks.qubit_budget)}};
    return j.dump(2);
}

std::string sweep_csv_header() { return "n,m,l,s,epsilon,t,p_good,a,pr_exact,bound,pass"; }

std::string sweep_csv_row(const RunReport& report) {
    std::string row;
    row += std::to_string(report.n) + "," + std::to_string(report.m) + "," + std::to_string(report.l) + "," +
           std::to_string(report.s) + ",";
    row += fmt_double(report.epsilon) + "," + std::to_string(report.t) + ",";
    row += fmt_double(report.p_good) + "," + fmt_double(report.a) + "," + fmt_double(report.pr_success_exact) +
           "," + fmt_double(report.bound_lower) + ",";
    row += report.checks.all_ok() ? "1" : "0";
    return row;
}

int threads_from_env() {
    const char* raw = std::getenv("QFH_THREADS");
    long value = 0;
    if (raw && *raw) {
        char* end = nullptr;
        value = std::strtol(raw, &end, 10);
        if (!end || *end != '\0' || value < 0) throw std::invalid_argument("QFH_THREADS must be a non-negative integer");
    }
    if (value == 0) value = static_cast<long>(std::thread::hardware_concurrency());
    if (value < 1) value = 1;
    if (value > 256) value = 256;
    return static_cast<int>(value);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"quantum fingerprint-hash dictionary search simulator"};
    app.require_subcommand(1);

    // gen-dict
    std::uint64_t gd_n = 0, gd_seed = 0;
    int gd_m = 0;
    std::string gd_out;
    auto* gen_dict = app.add_subcommand("gen-dict", "write a random dictionary file");
    gen_dict->add_option("--n", gd_n, "number of words")->required();
    gen_dict->add_option("--m", gd_m, "word length (1..64)")->required();
    gen_dict->add_option("--seed", gd_seed, "master seed");
    gen_dict->add_option("--out", gd_out, "output path")->required();

    // gen-code
    int gc_m = 0, gc_c = 4, gc_s = 0;
    std::uint64_t gc_seed = 0;
    std::string gc_out;
    auto* gen_code = app.add_subcommand("gen-code", "write a random linear code file");
    gen_code->add_option("--m", gc_m, "message length (1..24)")->required();
    gen_code->add_option("--c", gc_c, "length target l >= c*m (default 4)");
    gen_code->add_option("--s", gc_s, "explicit length exponent, overrides --c");
    gen_code->add_option("--seed", gc_seed, "master seed");
    gen_code->add_option("--out", gc_out, "output path")->required();

    // search
    std::string se_dict, se_code, se_word, se_word_file, se_policy = "exact", se_dump;
    int se_shots = 100;
    std::uint64_t se_seed = 0;
    bool se_pad = false, se_json = false;
    auto* search_cmd = app.add_subcommand("search", "run the amplified dictionary search");
    search_cmd->add_option("--dict", se_dict, "dictionary file")->required();
    search_cmd->add_option("--code", se_code, "code file")->required();
    search_cmd->add_option("--word", se_word, "query word");
    search_cmd->add_option("--word-file", se_word_file, "file holding the query word");
    search_cmd->add_option("--policy", se_policy, "exact | blind | fixed:<t>");
    search_cmd->add_option("--shots", se_shots, "measurement shots (default 100)");
    search_cmd->add_option("--seed", se_seed, "master seed");
    search_cmd->add_flag("--pad", se_pad, "pad dictionary to a power of two by repeating entry 0");
    search_cmd->add_flag("--json", se_json, "emit the JSON report");
    search_cmd->add_option("--dump-state", se_dump, "debug: write the final state vector");

    // analyze
    std::string an_dict, an_code, an_word, an_word_file;
    bool an_pad = false, an_json = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "print exact per-slot quantities, no shots");
    analyze_cmd->add_option("--dict", an_dict, "dictionary file")->required();
    analyze_cmd->add_option("--code", an_code, "code file")->required();
    analyze_cmd->add_option("--word", an_word, "query word");
    analyze_cmd->add_option("--word-file", an_word_file, "file holding the query word");
    analyze_cmd->add_flag("--pad", an_pad, "pad dictionary to a power of two by repeating entry 0");
    analyze_cmd->add_flag("--json", an_json, "emit the JSON report");

    // sweep
    std::vector<std::uint64_t> sw_n_list;
    int sw_m = 0, sw_trials = 0, sw_c = 4;
    std::uint64_t sw_seed = 0;
    std::string sw_out, sw_policy = "exact";
    auto* sweep_cmd = app.add_subcommand("sweep", "bound checks over random instances, CSV output");
    sweep_cmd->add_option("--n-list", sw_n_list, "dictionary sizes")->required()->delimiter(',');
    sweep_cmd->add_option("--m", sw_m, "word length")->required();
    sweep_cmd->add_option("--trials", sw_trials, "instances per size")->required();
    sweep_cmd->add_option("--c", sw_c, "code length target (default 4)");
    sweep_cmd->add_option("--policy", sw_policy, "exact | blind | fixed:<t>");
    sweep_cmd->add_option("--seed", sw_seed, "master seed");
    sweep_cmd->add_option("--out", sw_out, "output CSV path")->required();

    // verify-bounds
    int vb_m = 0, vb_s = 0;
    double vb_epsilon = 0.0;
    bool vb_json = false;
    auto* verify_cmd = app.add_subcommand("verify-bounds", "check the hash width lower bound");
    verify_cmd->add_option("--m", vb_m, "word length")->required();
    verify_cmd->add_option("--epsilon", vb_epsilon, "overlap bound in [0, 1]")->required();
    verify_cmd->add_option("--s", vb_s, "claimed hash width in qubits")->required();
    verify_cmd->add_flag("--json", vb_json, "emit a JSON verdict");

    try {
        app.parse(argc, argv);
        if (*gen_dict) return cmd_gen_dict(gd_n, gd_m, gd_seed, gd_out);
        if (*gen_code) return cmd_gen_code(gc_m, gc_c, gc_s, gc_seed, gc_out);
        if (*search_cmd)
            return cmd_search(se_dict, se_code, se_word, se_word_file, se_policy, se_shots, se_seed, se_pad,
                              se_json, se_dump);
        if (*analyze_cmd) return cmd_analyze(an_dict, an_code, an_word, an_word_file, an_pad, an_json);
        if (*sweep_cmd) return cmd_sweep(sw_n_list, sw_m, sw_trials, sw_c, sw_policy, sw_seed, sw_out);
        if (*verify_cmd) return cmd_verify_bounds(vb_m, vb_epsilon, vb_s, vb_json);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qfh
