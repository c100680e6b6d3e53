#include "qfh/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "qfh/rng.hpp"

namespace qfh {

namespace {

int index_bits_for(std::uint64_t n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("dictionary size must be a power of two (pad first)");
    return std::countr_zero(n);
}

void check_instance(const SearchInstance& instance) {
    if (!instance.hash) throw std::invalid_argument("search instance has no hash");
    const int m = instance.hash->spec().m;
    if (instance.query.size != m) throw std::invalid_argument("query length does not match hash");
    for (const Word& w : instance.dictionary)
        if (w.size != m) throw std::invalid_argument("dictionary word length does not match hash");
}

}  // namespace

std::string policy_name(const IterationPolicy& policy) {
    switch (policy.kind) {
        case IterationPolicy::Kind::Exact: return "exact";
        case IterationPolicy::Kind::Blind: return "blind";
        case IterationPolicy::Kind::Fixed: return "fixed:" + std::to_string(policy.fixed_t);
    }
    return "?";
}

RegisterLayout layout_for(std::uint64_t n, const QuantumHash& hash) {
    return make_layout(index_bits_for(n), hash.block_width() - 1);
}

StateVector build_dictionary_state(std::span<const Word> dictionary, const QuantumHash& hash,
                                   const RegisterLayout& layout) {
    if (dictionary.size() != layout.n()) throw std::invalid_argument("dictionary size does not match layout");
    StateVector state = zero_state(layout);
    uniform_index_and_flag(state, layout);
    auto amps = state.amps();
    const std::size_t block = layout.block_size();
    for (std::uint64_t j = 0; j < layout.n(); ++j)
        hash.apply_forward(amps.subspan(j * block, block), 1, dictionary[j]);
    return state;
}

void apply_conversion(StateVector& state, const Word& query, const QuantumHash& hash,
                      const RegisterLayout& layout) {
    if (state.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    // One full-span application: the index register rides above the block.
    hash.apply_inverse(state.amps(), 1, query);
}

double good_probability(const StateVector& state, const RegisterLayout& layout) {
    return probability_of(state, GoodMask{layout});
}

int choose_iterations(double p_good, const IterationPolicy& policy, std::uint64_t n) {
    const double root_n = std::sqrt(static_cast<double>(n));
    const int cap = static_cast<int>(std::ceil(std::numbers::pi / 4.0 * root_n * 2.0));
    int t = 0;
    switch (policy.kind) {
        case IterationPolicy::Kind::Exact: {
            if (p_good <= 0.0)
                throw std::domain_error("query absent and code orthogonal; amplification undefined");
            const double theta = std::asin(std::sqrt(std::min(p_good, 1.0)));
            t = static_cast<int>(std::lround(std::numbers::pi / (4.0 * theta) - 0.5));
            t = std::max(t, 0);
            break;
        }
        case IterationPolicy::Kind::Blind:
            t = static_cast<int>(std::floor(std::numbers::pi / 4.0 * root_n));
            break;
        case IterationPolicy::Kind::Fixed:
            if (policy.fixed_t < 0) throw std::invalid_argument("fixed iteration count must be non-negative");
            t = policy.fixed_t;
            break;
    }
    return std::min(t, cap);
}

AmplifiedState grover_iterate(const StateVector& converted, const GoodMask& mask, int t) {
    if (t < 0) throw std::invalid_argument("iteration count must be non-negative");
    AmplifiedState out;
    out.psi = converted;
    out.theta = std::asin(std::sqrt(std::min(1.0, probability_of(converted, mask))));
    out.t = t;
    out.final = converted;
    for (int round = 0; round < t; ++round) {
        phase_flip(out.final, mask);
        reflect_about(out.final, out.psi);
    }
    return out;
}

MeasureResult measure_and_decode(const StateVector& final, const RegisterLayout& layout, int shots,
                                 std::uint64_t seed, std::span<const Word> dictionary, const Word& query) {
    if (final.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    if (dictionary.size() != layout.n()) throw std::invalid_argument("dictionary size does not match layout");
    MeasureResult result;
    const std::uint64_t all_bits = layout.dim() - 1;
    std::vector<std::uint64_t> outcomes = sample(final, all_bits, shots, seed);
    result.histogram = histogram(outcomes);
    result.outcomes.reserve(outcomes.size());
    for (std::uint64_t basis : outcomes) {
        SearchOutcome outcome;
        outcome.measured_index = layout.index_of(basis);
        outcome.hash_block_zero = layout.hash_block_of(basis) == 0;
        if (!outcome.hash_block_zero) {
            outcome.status = OutcomeStatus::HashNonzero;
            ++result.hash_nonzero;
        } else {
            outcome.verified = dictionary[outcome.measured_index] == query;
            outcome.status = outcome.verified ? OutcomeStatus::Found : OutcomeStatus::NotFound;
            ++(outcome.verified ? result.found : result.not_found);
        }
        result.outcomes.push_back(outcome);
    }
    return result;
}

PipelineStages run_pipeline(const SearchInstance& instance) {
    check_instance(instance);
    PipelineStages stages;
    stages.layout = layout_for(instance.dictionary.size(), *instance.hash);

    stages.prepared = zero_state(stages.layout);
    uniform_index_and_flag(stages.prepared, stages.layout);

    stages.dictionary = build_dictionary_state(instance.dictionary, *instance.hash, stages.layout);

    stages.converted = stages.dictionary;
    apply_conversion(stages.converted, instance.query, *instance.hash, stages.layout);

    stages.p_good = good_probability(stages.converted, stages.layout);
    stages.theta = std::asin(std::sqrt(std::min(1.0, stages.p_good)));
    stages.t = choose_iterations(stages.p_good, instance.policy, stages.layout.n());

    AmplifiedState amplified = grover_iterate(stages.converted, GoodMask{stages.layout}, stages.t);
    stages.final = std::move(amplified.final);
    return stages;
}

RunReport run_search(const SearchInstance& instance) {
    check_instance(instance);
    const QuantumHash& hash = *instance.hash;
    RunReport report;
    report.n = instance.dictionary.size();
    report.m = hash.spec().m;
    report.s = hash.block_width() - 1;
    report.epsilon = hash.spec().epsilon;
    report.epsilon_exact = hash.spec().epsilon_exact;
    report.seed = instance.seed;
    report.policy = policy_name(instance.policy);
    report.shots = instance.shots;
    report.matches = classical_search(instance.dictionary, instance.query);

    const RegisterLayout layout = layout_for(report.n, hash);
    const GoodMask mask{layout};

    if (const LinearCode* code = hash.linear_code()) {
        report.l = code->l;
        report.d_profile.reserve(instance.dictionary.size());
        for (const Word& w : instance.dictionary)
            report.d_profile.push_back(pair_distance(*code, w, instance.query));
    } else {
        report.l = 0;
        report.d_profile.assign(instance.dictionary.size(), -1);
    }

    StateVector state = build_dictionary_state(instance.dictionary, hash, layout);
    apply_conversion(state, instance.query, hash, layout);
    report.p_good = good_probability(state, layout);
    report.theta = std::asin(std::sqrt(std::min(1.0, report.p_good)));

    bool refused = false;
    int t = 0;
    try {
        t = choose_iterations(report.p_good, instance.policy, layout.n());
    } catch (const std::domain_error&) {
        refused = true;
    }
    report.amplification_refused = refused;
    if (refused) {
        report.notes.push_back("query absent and code orthogonal; amplification undefined, state left unamplified");
        t = 0;
    }
    report.t = t;
    report.a = std::pow(std::sin((2.0 * t + 1.0) * report.theta), 2.0);

    // Amplify in place: flip, then reflect about a kept copy of the
    // conversion output.
    if (t > 0) {
        const StateVector axis = state;
        for (int round = 0; round < t; ++round) {
            phase_flip(state, mask);
            reflect_about(state, axis);
        }
    }

    report.pr_success_exact = 0.0;
    for (std::uint64_t j : report.matches) report.pr_success_exact += probability_of(state, layout.good_index(j));
    const double n = static_cast<double>(report.n);
    report.bound_lower = report.a / (1.0 + (n - 1.0) * report.epsilon * report.epsilon);

    const Resources resources = resource_report(report.n, report.s, t);
    report.qubits = resources.qubits;
    report.queries = resources.queries;

    if (instance.shots > 0) {
        MeasureResult measured = measure_and_decode(state, layout, instance.shots, instance.seed,
                                                    instance.dictionary, instance.query);
        report.histogram = std::move(measured.histogram);
        report.found = measured.found;
        report.not_found = measured.not_found;
        report.hash_nonzero = measured.hash_nonzero;
        if (report.hash_nonzero * 2 > instance.shots) report.status = "hash-nonzero";
        else if (report.found > 0 && report.found >= report.not_found) report.status = "found";
        else report.status = "not-found";
    } else {
        report.status = report.matches.empty() || refused ? "not-found" : "found";
        report.notes.push_back("no shots requested; status taken from exact quantities");
    }

    report.checks = check_success_bound(report);
    return report;
}

std::vector<Word> load_dictionary_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dictionary file: " + path);
    std::vector<Word> words;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (words.size() >= (1u << 20)) throw std::runtime_error("dictionary file exceeds 2^20 entries");
        Word w = parse_word(line);
        if (!words.empty() && w.size != words.front().size)
            throw std::runtime_error("dictionary words must all have the same length");
        words.push_back(w);
    }
    if (words.empty()) throw std::runtime_error("dictionary file is empty: " + path);
    return words;
}

void save_dictionary_file(const std::string& path, std::span<const Word> dictionary) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dictionary file: " + path);
    for (const Word& w : dictionary) out << to_string(w) << "\n";
}

}  // namespace qfh
