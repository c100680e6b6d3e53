#include "qfh/qhash.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qfh {

FingerprintHash::FingerprintHash(LinearCode code, CodeMetrics metrics) : code_(std::move(code)) {
    if (code_.l != (1 << code_.s)) throw std::invalid_argument("fingerprint code length must be 2^s");
    spec_ = HashSpec{code_.m, metrics.epsilon, code_.s, metrics.exact};
}

StateVector FingerprintHash::state_of(const Word& w) const {
    const Codeword cw = encode(code_, w);
    StateVector state(block_width());
    const double amp = 1.0 / std::sqrt(static_cast<double>(code_.l));
    for (int i = 0; i < code_.l; ++i)
        state[(static_cast<std::uint64_t>(i) << 1) | static_cast<std::uint64_t>(cw.bit(i))] = amp;
    return state;
}

void FingerprintHash::apply_forward(std::span<double> amps, int block_lsb, const Word& w) const {
    apply_hadamards(amps, block_lsb + 1, code_.s);
    apply_codeword_xor(amps, encode(code_, w), block_lsb, block_lsb + 1);
}

void FingerprintHash::apply_inverse(std::span<double> amps, int block_lsb, const Word& w) const {
    apply_codeword_xor(amps, encode(code_, w), block_lsb, block_lsb + 1);
    apply_hadamards(amps, block_lsb + 1, code_.s);
}

double FingerprintHash::overlap(const Word& w, const Word& w2) const {
    return 1.0 - static_cast<double>(pair_distance(code_, w, w2)) / static_cast<double>(code_.l);
}

void apply_forward(const QuantumHash& hash, StateVector& block_state, const Word& w) {
    if (block_state.qubits() != hash.block_width()) throw std::invalid_argument("state is not one hash block");
    hash.apply_forward(block_state.amps(), 0, w);
}

void apply_inverse(const QuantumHash& hash, StateVector& block_state, const Word& w) {
    if (block_state.qubits() != hash.block_width()) throw std::invalid_argument("state is not one hash block");
    hash.apply_inverse(block_state.amps(), 0, w);
}

double epsilon_stability_check(const QuantumHash& hash) {
    const int m = hash.spec().m;
    if (m > 10) throw std::invalid_argument("exhaustive stability check is limited to m <= 10");
    const std::uint64_t total = 1ull << m;
    std::vector<StateVector> states;
    states.reserve(total);
    for (std::uint64_t v = 0; v < total; ++v) states.push_back(hash.state_of(Word{v, m}));
    double worst = 0.0;
    for (std::uint64_t v = 0; v < total; ++v)
        for (std::uint64_t u = v + 1; u < total; ++u)
            worst = std::max(worst, std::abs(inner_product(states[v], states[u])));
    return worst;
}

double epsilon_stability_check(const QuantumHash& hash, std::uint64_t trials, std::uint64_t seed) {
    const int m = hash.spec().m;
    std::mt19937_64 gen(seed);
    const std::uint64_t mask = word_mask(m);
    double worst = 0.0;
    for (std::uint64_t k = 0; k < trials; ++k) {
        const std::uint64_t v = gen() & mask;
        std::uint64_t u = gen() & mask;
        while (u == v) u = gen() & mask;
        worst = std::max(worst, std::abs(inner_product(hash.state_of(Word{v, m}), hash.state_of(Word{u, m}))));
    }
    return worst;
}

double min_qubits_bound(int m, double epsilon) {
    if (m < 2) throw std::invalid_argument("qubit bound needs m >= 2");
    if (epsilon < 0.0 || epsilon >= 1.0) throw std::invalid_argument("qubit bound needs 0 <= epsilon < 1");
    const double inner = std::log2(1.0 + std::sqrt(2.0 / (1.0 - epsilon)));
    return std::log2(static_cast<double>(m)) - std::log2(inner) - 1.0;
}

std::shared_ptr<FingerprintHash> make_fingerprint_hash(int m, int s, std::uint64_t seed) {
    LinearCode code = generate_random_linear_code(m, s, seed);
    CodeMetrics metrics = (m <= 20) ? min_distance_exact(code)
                                    : min_distance_sampled(code, 100000, seed ^ 0x5eedull);
    return std::make_shared<FingerprintHash>(std::move(code), metrics);
}

}  // namespace qfh
