// Acceptance gate: every release-blocking behavior checked in one binary,
// one verdict line each. Exit code is the number of failed checks.
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qfh/oracles.hpp"
#include "qfh/qstate.hpp"
#include "qfh/rng.hpp"
#include "qfh/search.hpp"

using namespace qfh;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

std::vector<Word> random_dictionary(std::mt19937_64& gen, std::size_t n, int m) {
    std::vector<Word> words;
    words.reserve(n);
    for (std::size_t k = 0; k < n; ++k) words.push_back(random_word(gen, m));
    return words;
}

std::shared_ptr<FingerprintHash> orthogonal_hash() {
    LinearCode code{1, 4, 2, 0, {1, 1, 1, 1}};
    return std::make_shared<FingerprintHash>(code, min_distance_exact(code));
}

double max_stage_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < a.dim(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// 1. After conversion the per-slot good amplitude (scaled by sqrt(n)) must be
//    1 on a matching slot and within 1 - d_min/l in magnitude elsewhere.
Verdict check_conversion_envelope() {
    const int runs = 50;
    const int m = 8;
    const int s = default_code_exponent(m, 4);
    double worst_residue = 0.0;
    for (int run = 0; run < runs; ++run) {
        const std::uint64_t seed = derive_seed(1, run);
        const auto hash = make_fingerprint_hash(m, s, seed ^ 1);
        std::mt19937_64 gen(seed ^ 2);
        std::vector<Word> dictionary = random_dictionary(gen, 16, m);
        const Word query = dictionary[gen() % dictionary.size()];
        const double envelope = hash->spec().epsilon;  // 1 - d_min/l

        for (const OverlapRow& row : overlap_table(dictionary, query, *hash)) {
            const bool match = dictionary[row.j] == query;
            const double residue = match ? std::abs(row.alpha0 - 1.0)
                                         : std::max(0.0, std::abs(row.alpha0) - envelope);
            worst_residue = std::max(worst_residue, residue);
        }
    }
    return {worst_residue <= 1e-12,
            fmt("%d instances (n=16, m=%d), worst envelope residue %.3g (allowed 1e-12)", runs, m, worst_residue)};
}

// 2. With pairwise-orthogonal hash states the amplified good mass must follow
//    sin^2((2t+1) theta); at n = 4 one round reaches certainty.
Verdict check_amplification_closed_form() {
    double worst = 0.0;
    double off_certainty = -1.0;
    std::string detail;
    for (std::uint64_t n : {4ull, 16ull, 64ull}) {
        const auto hash = orthogonal_hash();
        std::mt19937_64 gen(n);
        std::vector<Word> dictionary(n, Word{0, 1});
        const std::uint64_t planted = gen() % n;
        dictionary[planted] = Word{1, 1};

        const RegisterLayout layout = layout_for(n, *hash);
        StateVector state = build_dictionary_state(dictionary, *hash, layout);
        apply_conversion(state, Word{1, 1}, *hash, layout);
        const GoodMask mask{layout};
        const double p_good = probability_of(state, mask);
        const double theta = std::asin(std::sqrt(p_good));
        const int t = choose_iterations(p_good, IterationPolicy::exact(), n);

        const AmplifiedState amplified = grover_iterate(state, mask, t);
        const double measured = probability_of(amplified.final, mask);
        const double predicted = std::pow(std::sin((2.0 * t + 1.0) * theta), 2.0);
        worst = std::max(worst, std::abs(measured - predicted));
        if (n == 4) {
            off_certainty = std::abs(measured - 1.0);
            if (t != 1) return {false, fmt("expected one round at n=4, policy chose t=%d", t)};
        }
        detail += fmt("n=%llu t=%d ", static_cast<unsigned long long>(n), t);
    }
    const bool pass = worst <= 1e-9 && off_certainty <= 1e-12;
    return {pass, detail + fmt("| worst closed-form gap %.3g (allowed 1e-9), n=4 certainty gap %.3g (allowed 1e-12)",
                               worst, off_certainty)};
}

// 3. Success mass never drops below sin^2((2t+1)theta) / (1 + (n-1) eps^2),
//    and the query count stays within the square-root budget.
Verdict check_success_floor_sweep() {
    const int m = 8;
    const int s = default_code_exponent(m, 4);
    int rows = 0, bound_ok = 0, queries_ok = 0;
    double worst_margin = 1e9;
    for (std::uint64_t n : {4ull, 16ull, 64ull, 256ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            const std::uint64_t seed = derive_seed(3, rows);
            SearchInstance instance;
            instance.hash = make_fingerprint_hash(m, s, seed ^ 1);
            std::mt19937_64 gen(seed ^ 2);
            instance.dictionary = random_dictionary(gen, n, m);
            instance.query = instance.dictionary[gen() % n];
            instance.policy = IterationPolicy::exact();
            instance.shots = 0;
            const RunReport report = run_search(instance);

            const double eps = report.epsilon;
            const double floor = std::pow(std::sin((2.0 * report.t + 1.0) * report.theta), 2.0) /
                                 (1.0 + (static_cast<double>(n) - 1.0) * eps * eps);
            const double margin = report.pr_success_exact - floor;
            worst_margin = std::min(worst_margin, margin);
            if (margin >= -1e-9) ++bound_ok;
            if (report.queries <= std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n))) + 1.0)
                ++queries_ok;
            ++rows;
        }
    }
    const bool pass = bound_ok == rows && queries_ok == rows;
    return {pass, fmt("bound held in %d/%d rows (worst margin %.3g), query budget in %d/%d", bound_ok, rows,
                      worst_margin, queries_ok, rows)};
}

// 4. Register accounting: exactly log2(n) + s + 2 qubits, inside the
//    2 log2(n) + log2(m) + 8 budget. Integers, zero tolerance.
Verdict check_register_accounting() {
    int instances = 0, exact_ok = 0, budget_ok = 0;
    for (std::uint64_t n : {4ull, 16ull, 64ull, 256ull}) {
        for (int m : {4, 8, 16}) {
            const int s = default_code_exponent(m, 4);
            const std::uint64_t seed = derive_seed(4, instances);
            SearchInstance instance;
            instance.hash = make_fingerprint_hash(m, s, seed ^ 1);
            std::mt19937_64 gen(seed ^ 2);
            instance.dictionary = random_dictionary(gen, n, m);
            instance.query = instance.dictionary[gen() % n];
            instance.shots = 0;
            const RunReport report = run_search(instance);

            ++instances;
            if (report.qubits == std::countr_zero(n) + report.s + 2) ++exact_ok;
            const double budget = 2.0 * std::log2(static_cast<double>(n)) + std::log2(static_cast<double>(m)) + 8.0;
            if (report.qubits <= budget) ++budget_ok;
        }
    }
    const bool pass = exact_ok == instances && budget_ok == instances;
    return {pass, fmt("exact count in %d/%d instances, memory budget in %d/%d", exact_ok, instances, budget_ok,
                      instances)};
}

// 5. The gate-level pipeline and the explicit-matrix replay agree at every
//    stage boundary on instances small enough to afford dense matrices.
Verdict check_dense_replay_agreement() {
    struct Config { std::uint64_t n; int m; int s; };
    const Config configs[] = {{4, 4, 4}, {8, 5, 4}, {4, 6, 5}, {8, 6, 5}, {2, 3, 3}};
    double worst = 0.0;
    int runs = 0;
    for (int run = 0; run < 20; ++run) {
        const Config& config = configs[run % 5];
        const std::uint64_t seed = derive_seed(5, run);
        SearchInstance instance;
        instance.hash = make_fingerprint_hash(config.m, config.s, seed ^ 1);
        std::mt19937_64 gen(seed ^ 2);
        instance.dictionary = random_dictionary(gen, config.n, config.m);
        if (run % 2 == 0) {
            instance.query = instance.dictionary[gen() % config.n];
        } else {
            do {
                instance.query = random_word(gen, config.m);
            } while (!classical_search(instance.dictionary, instance.query).empty());
        }
        instance.policy = (run % 3 == 0) ? IterationPolicy::exact() : IterationPolicy::blind();

        bool structured_refused = false, dense_refused = false;
        PipelineStages structured, dense;
        try { structured = run_pipeline(instance); } catch (const std::domain_error&) { structured_refused = true; }
        try { dense = dense_pipeline(instance); } catch (const std::domain_error&) { dense_refused = true; }
        if (structured_refused != dense_refused)
            return {false, fmt("run %d: one route refused amplification, the other did not", run)};
        ++runs;
        if (structured_refused) continue;

        worst = std::max(worst, max_stage_diff(structured.prepared, dense.prepared));
        worst = std::max(worst, max_stage_diff(structured.dictionary, dense.dictionary));
        worst = std::max(worst, max_stage_diff(structured.converted, dense.converted));
        worst = std::max(worst, max_stage_diff(structured.final, dense.final));
        if (structured.t != dense.t) return {false, fmt("run %d: iteration counts differ", run)};
    }
    return {worst <= 1e-10, fmt("%d instances, worst stage deviation %.3g (allowed 1e-10)", runs, worst)};
}

// 6. Reversibility and geometry: forward/inverse round trip, unit norms at
//    every stage, and the overlap identity <psi(w)|psi(w')> = 1 - d/l checked
//    over every word pair.
Verdict check_invariants() {
    // round trip on random wide states
    double worst_round_trip = 0.0;
    for (int run = 0; run < 6; ++run) {
        const int m = 4 + run % 3;
        const int s = default_code_exponent(m, 4);
        const auto hash = make_fingerprint_hash(m, s, derive_seed(6, run));
        std::mt19937_64 gen(run + 1);
        StateVector state(2 + hash->block_width() + 1);
        for (std::uint64_t k = 0; k < state.dim(); ++k) state[k] = 2.0 * uniform53(gen) - 1.0;
        const double norm = state.norm();
        for (std::uint64_t k = 0; k < state.dim(); ++k) state[k] /= norm;
        const StateVector original = state;
        const Word w = random_word(gen, m);
        hash->apply_forward(state.amps(), 1, w);
        hash->apply_inverse(state.amps(), 1, w);
        worst_round_trip = std::max(worst_round_trip, max_stage_diff(state, original));
    }
    if (worst_round_trip > 1e-12)
        return {false, fmt("forward/inverse round trip drifted by %.3g (allowed 1e-12)", worst_round_trip)};

    // stage norms across random pipelines
    double worst_norm = 0.0;
    for (int run = 0; run < 10; ++run) {
        const int m = 5;
        const int s = default_code_exponent(m, 4);
        const std::uint64_t seed = derive_seed(60, run);
        SearchInstance instance;
        instance.hash = make_fingerprint_hash(m, s, seed ^ 1);
        std::mt19937_64 gen(seed ^ 2);
        instance.dictionary = random_dictionary(gen, 8, m);
        instance.query = instance.dictionary[gen() % 8];
        const PipelineStages stages = run_pipeline(instance);
        for (const StateVector* state : {&stages.prepared, &stages.dictionary, &stages.converted, &stages.final})
            worst_norm = std::max(worst_norm, std::abs(state->norm() - 1.0));
    }
    if (worst_norm > 1e-10) return {false, fmt("stage norm drifted by %.3g (allowed 1e-10)", worst_norm)};

    // overlap identity, every pair of words
    double worst_overlap = 0.0;
    for (int m : {4, 8}) {
        const int s = default_code_exponent(m, 4);
        const auto hash = make_fingerprint_hash(m, s, 1000 + m);
        const std::uint64_t count = 1ull << m;
        std::vector<StateVector> states;
        states.reserve(count);
        for (std::uint64_t bits = 0; bits < count; ++bits) states.push_back(hash->state_of(Word{bits, m}));
        const int l = hash->code().l;
        for (std::uint64_t u = 0; u < count; ++u)
            for (std::uint64_t v = u; v < count; ++v) {
                const double overlap = inner_product(states[u], states[v]);
                const int d = pair_distance(hash->code(), Word{u, m}, Word{v, m});
                worst_overlap = std::max(worst_overlap,
                                         std::abs(overlap - (1.0 - static_cast<double>(d) / l)));
            }
    }
    if (worst_overlap > 1e-12)
        return {false, fmt("overlap identity violated by %.3g (allowed 1e-12)", worst_overlap)};
    return {true, fmt("round trip %.3g, stage norms %.3g, overlap identity %.3g", worst_round_trip, worst_norm,
                      worst_overlap)};
}

// 7. Measurement sampling: 10^5 shots land within three sigma of every exact
//    outcome probability, and equal seeds give equal histograms.
Verdict check_sampling_consistency() {
    const int shots = 100000;

    // pipeline fixture: orthogonal code, conversion only (four flat outcomes)
    SearchInstance instance;
    instance.hash = orthogonal_hash();
    instance.dictionary = {Word{0, 1}, Word{1, 1}, Word{0, 1}, Word{0, 1}};
    instance.query = Word{1, 1};
    instance.policy = IterationPolicy::fixed(0);
    const PipelineStages stages = run_pipeline(instance);

    // handcrafted fixture: fifteen distinct probabilities k/120
    StateVector ramp(4);
    for (std::uint64_t k = 1; k < 16; ++k) ramp[k] = std::sqrt(static_cast<double>(k) / 120.0);

    double worst_sigma = 0.0;
    const StateVector* fixtures[] = {&stages.final, &ramp};
    for (const StateVector* fixture : fixtures) {
        const std::uint64_t mask = fixture->dim() - 1;
        const auto outcomes = sample(*fixture, mask, shots, 7777);
        const auto counts = histogram(outcomes);
        const auto again = histogram(sample(*fixture, mask, shots, 7777));
        if (counts != again) return {false, "identical seeds produced different histograms"};

        int total = 0;
        for (const auto& [basis, count] : counts) total += count;
        if (total != shots) return {false, fmt("histogram total %d != %d shots", total, shots)};

        for (std::uint64_t basis = 0; basis < fixture->dim(); ++basis) {
            const double p = probability_of(*fixture, basis);
            const auto it = counts.find(basis);
            const int count = it == counts.end() ? 0 : it->second;
            if (p <= 1e-12) {
                if (count != 0) return {false, fmt("outcome %llu has zero probability but %d counts",
                                                   static_cast<unsigned long long>(basis), count)};
                continue;
            }
            const double sigma = std::sqrt(shots * p * (1.0 - p));
            const double pull = std::abs(count - shots * p) / sigma;
            worst_sigma = std::max(worst_sigma, pull);
        }
    }
    return {worst_sigma <= 3.0, fmt("2 fixtures x %d shots, worst deviation %.2f sigma (allowed 3)", shots,
                                    worst_sigma)};
}

// 8. Planted-word search at n = 64, m = 16 with a random code whose measured
//    pairwise overlap stays within 0.30: verified-found rate over 100 runs of
//    100 shots must reach 0.85. The random-code overlap is measured exactly
//    per run; runs that miss the 0.30 precondition are counted.
Verdict check_planted_word_success() {
    const std::uint64_t n = 64;
    const int m = 16;
    const int s = default_code_exponent(m, 4);
    const int runs = 100, shots = 100;

    int precondition_met = 0;
    double min_epsilon = 1.0;
    long long found_total = 0;
    double pr_exact_sum = 0.0;
    for (int run = 0; run < runs; ++run) {
        const std::uint64_t seed = derive_seed(8, run);
        SearchInstance instance;
        instance.hash = make_fingerprint_hash(m, s, seed ^ 1);
        const double eps = instance.hash->spec().epsilon;
        min_epsilon = std::min(min_epsilon, eps);
        if (eps <= 0.3) ++precondition_met;

        std::mt19937_64 gen(seed ^ 2);
        instance.dictionary = random_dictionary(gen, n, m);
        instance.query = random_word(gen, m);
        instance.dictionary[gen() % n] = instance.query;
        instance.policy = IterationPolicy::exact();
        instance.seed = seed ^ 3;
        instance.shots = shots;
        const RunReport report = run_search(instance);
        found_total += report.found;
        pr_exact_sum += report.pr_success_exact;
    }
    const double found_rate = static_cast<double>(found_total) / (runs * shots);
    const double pr_mean = pr_exact_sum / runs;
    const bool pass = precondition_met == runs && found_rate >= 0.85;
    return {pass, fmt("found rate %.4f (needs >= 0.85), exact pr mean %.4f; codes with overlap <= 0.30: %d/%d "
                      "(min measured %.4f)", found_rate, pr_mean, precondition_met, runs, min_epsilon)};
}

// 9. Width checker: accepts every shipped hash fixture, rejects a register
//    far below the information-theoretic floor.
Verdict check_width_checker() {
    struct Fixture { int m; int s; std::uint64_t seed; };
    const Fixture fixtures[] = {{4, 4, 42}, {6, 4, 13}, {8, 5, 7}, {16, 6, 11}, {5, 3, 31}, {4, 3, 9}};
    int applicable = 0;
    for (const Fixture& fixture : fixtures) {
        const auto hash = make_fingerprint_hash(fixture.m, fixture.s, fixture.seed);
        const WidthCheck check = check_min_width(*hash);
        if (!check.applicable) continue;
        ++applicable;
        if (!check.pass)
            return {false, fmt("fixture m=%d s=%d seed=%llu rejected: width %d < bound %.3f", fixture.m, fixture.s,
                               static_cast<unsigned long long>(fixture.seed), check.width, check.bound)};
    }
    if (applicable < 3) return {false, fmt("only %d fixtures were checkable", applicable)};

    const WidthCheck violation = check_min_width(65536, 0.01, 2);
    if (!violation.applicable || violation.pass)
        return {false, fmt("synthetic violation slipped through (bound %.3f, width 2)", violation.bound)};
    return {true, fmt("%d fixtures accepted; 2-qubit register against a %.2f-qubit floor rejected", applicable,
                      violation.bound)};
}

struct Criterion {
    int id;
    const char* label;
    Verdict (*run)();
    double time_limit_s;  // 0 = no stated limit
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "conversion amplitudes stay inside the code envelope", check_conversion_envelope, 10.0},
        {2, "amplified good mass follows sin^2((2t+1)theta)", check_amplification_closed_form, 5.0},
        {3, "success floor and query budget over 100 random rows", check_success_floor_sweep, 120.0},
        {4, "register count is log2(n)+s+2 and within budget", check_register_accounting, 0.0},
        {5, "gate pipeline equals the dense-matrix replay", check_dense_replay_agreement, 60.0},
        {6, "reversibility, norms and the overlap identity", check_invariants, 0.0},
        {7, "sampled frequencies match exact probabilities", check_sampling_consistency, 0.0},
        {8, "planted-word found rate at n=64 m=16", check_planted_word_success, 120.0},
        {9, "hash width checker accepts fixtures, rejects violation", check_width_checker, 0.0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict verdict;
        try {
            verdict = criterion.run();
        } catch (const std::exception& e) {
            verdict = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s) {
            verdict.pass = false;
            verdict.detail += fmt(" [exceeded %.0fs budget]", criterion.time_limit_s);
        }
        if (!verdict.pass) ++failures;
        std::printf("[%s] %d. %s | %s | %.2fs\n", verdict.pass ? "PASS" : "FAIL", criterion.id, criterion.label,
                    verdict.detail.c_str(), elapsed);
    }
    std::printf("%d/9 checks passed\n", 9 - failures);
    return failures;
}
