#include "qfh/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

#include "qfh/rng.hpp"

namespace qfh {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr int kMaxQubits = 26;  // 512 MiB of 8-byte reals

void check_same_dim(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("state dimensions differ");
}

}  // namespace

RegisterLayout make_layout(int idx_bits, int hash_idx_bits) {
    if (idx_bits < 0 || hash_idx_bits < 1) throw std::invalid_argument("layout needs idx_bits >= 0 and s >= 1");
    RegisterLayout layout{idx_bits, hash_idx_bits};
    if (layout.qubits() > kMaxQubits) throw std::invalid_argument("register budget exceeded: more than 26 qubits");
    return layout;
}

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits) throw std::invalid_argument("state size must be 1..26 qubits");
    amps_.assign(1ull << qubits, 0.0);
}

double StateVector::norm() const {
    double sum = 0.0;
    for (double a : amps_) sum += a * a;
    return std::sqrt(sum);
}

std::vector<std::uint64_t> GoodMask::indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(layout.n());
    for (std::uint64_t j = 0; j < layout.n(); ++j) out.push_back(layout.good_index(j));
    return out;
}

void apply_hadamard_bit(std::span<double> amps, int bit) {
    const std::size_t stride = std::size_t{1} << bit;
    if (stride * 2 > amps.size()) throw std::invalid_argument("hadamard bit outside span");
    for (std::size_t base = 0; base < amps.size(); base += stride * 2) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const double lo = amps[k];
            const double hi = amps[k + stride];
            amps[k] = (lo + hi) * kInvSqrt2;
            amps[k + stride] = (lo - hi) * kInvSqrt2;
        }
    }
}

void apply_hadamards(std::span<double> amps, int first_bit, int count) {
    for (int b = 0; b < count; ++b) apply_hadamard_bit(amps, first_bit + b);
}

void apply_codeword_xor(std::span<double> amps, const Codeword& cw, int target_bit, int index_first_bit) {
    if (cw.length <= 0 || (cw.length & (cw.length - 1)) != 0)
        throw std::invalid_argument("codeword length must be a power of two");
    const std::uint64_t tmask = 1ull << target_bit;
    const std::uint64_t imask = static_cast<std::uint64_t>(cw.length - 1);
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if (k & tmask) continue;
        const std::uint64_t i = (k >> index_first_bit) & imask;
        if (cw.bit(static_cast<int>(i))) std::swap(amps[k], amps[k | tmask]);
    }
}

StateVector zero_state(const RegisterLayout& layout) {
    StateVector state(layout.qubits());
    state[0] = 1.0;
    return state;
}

void uniform_index_and_flag(StateVector& state, const RegisterLayout& layout) {
    if (state.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    if (std::abs(state[0] - 1.0) > 1e-12 || std::abs(state.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("uniform_index_and_flag expects the all-zero state");
    state[0] = 0.0;
    const double amp = 1.0 / std::sqrt(static_cast<double>(layout.n()));
    for (std::uint64_t j = 0; j < layout.n(); ++j) state[layout.good_index(j)] = amp;
}

void hadamard_hash_index(StateVector& state, const RegisterLayout& layout) {
    if (state.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    apply_hadamards(state.amps(), 2, layout.hash_idx_bits);
}

void codeword_xor(StateVector& state, const RegisterLayout& layout, const LinearCode& code, const Word& w) {
    if (state.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    if (code.s != layout.hash_idx_bits) throw std::invalid_argument("code length does not match hash register");
    apply_codeword_xor(state.amps(), encode(code, w), 1, 2);
}

void reflect_about(StateVector& state, const StateVector& axis) {
    check_same_dim(state, axis);
    if (std::abs(axis.norm() - 1.0) > 1e-8) throw std::invalid_argument("reflection axis must be unit length");
    const double ip = inner_product(axis, state);
    auto s = state.amps();
    auto a = axis.amps();
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = 2.0 * ip * a[k] - s[k];
}

void phase_flip(StateVector& state, std::span<const std::uint64_t> indices) {
    for (std::uint64_t k : indices) {
        if (k >= state.dim()) throw std::invalid_argument("phase flip index out of range");
        state[k] = -state[k];
    }
}

void phase_flip(StateVector& state, const GoodMask& mask) {
    if (state.dim() != mask.layout.dim()) throw std::invalid_argument("state does not match mask layout");
    for (std::uint64_t j = 0; j < mask.layout.n(); ++j) {
        const std::uint64_t k = mask.layout.good_index(j);
        state[k] = -state[k];
    }
}

double inner_product(const StateVector& a, const StateVector& b) {
    check_same_dim(a, b);
    double sum = 0.0;
    auto av = a.amps();
    auto bv = b.amps();
    for (std::size_t k = 0; k < av.size(); ++k) sum += av[k] * bv[k];
    return sum;
}

double probability_of(const StateVector& state, std::uint64_t basis) {
    if (basis >= state.dim()) throw std::invalid_argument("basis index out of range");
    return state[basis] * state[basis];
}

double probability_of(const StateVector& state, const GoodMask& mask) {
    if (state.dim() != mask.layout.dim()) throw std::invalid_argument("state does not match mask layout");
    double sum = 0.0;
    for (std::uint64_t j = 0; j < mask.layout.n(); ++j) sum += probability_of(state, mask.layout.good_index(j));
    return sum;
}

std::vector<std::uint64_t> sample(const StateVector& state, std::uint64_t keep_mask, int shots, std::uint64_t seed) {
    if (shots < 0) throw std::invalid_argument("shot count must be non-negative");
    std::mt19937_64 gen(seed);
    std::vector<double> draws(static_cast<std::size_t>(shots));
    for (auto& u : draws) u = uniform53(gen);

    // One pass over the amplitudes against the sorted draws; outcomes are
    // reported in the original draw order so the sequence is seed-stable.
    std::vector<std::uint32_t> order(draws.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return draws[x] < draws[y]; });

    std::vector<std::uint64_t> outcomes(draws.size(), 0);
    auto amps = state.amps();
    double cum = 0.0;
    std::size_t next = 0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t k = 0; k < amps.size() && next < order.size(); ++k) {
        const double p = amps[k] * amps[k];
        if (p > 0.0) last_nonzero = k;
        cum += p;
        while (next < order.size() && draws[order[next]] < cum) outcomes[order[next++]] = k & keep_mask;
    }
    // Rounding can leave cum slightly below 1; park the stragglers on the
    // last state that carried probability.
    while (next < order.size()) outcomes[order[next++]] = last_nonzero & keep_mask;
    return outcomes;
}

std::map<std::uint64_t, int> histogram(std::span<const std::uint64_t> outcomes) {
    std::map<std::uint64_t, int> counts;
    for (std::uint64_t k : outcomes) ++counts[k];
    return counts;
}

void save_state_file(const std::string& path, const StateVector& state, const RegisterLayout& layout) {
    if (state.dim() != layout.dim()) throw std::invalid_argument("state does not match layout");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    unsigned char header[16] = {'Q', 'F', 'S', '1'};
    header[4] = static_cast<unsigned char>(layout.qubits());
    header[5] = static_cast<unsigned char>(layout.idx_bits);
    header[6] = static_cast<unsigned char>(layout.hash_idx_bits);
    header[7] = 0;
    const std::uint64_t dim = state.dim();
    for (int b = 0; b < 8; ++b) header[8 + b] = static_cast<unsigned char>((dim >> (8 * b)) & 0xff);
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    for (double a : state.amps()) {
        std::uint64_t bits;
        std::memcpy(&bits, &a, sizeof bits);
        unsigned char raw[8];
        for (int b = 0; b < 8; ++b) raw[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xff);
        out.write(reinterpret_cast<const char*>(raw), sizeof raw);
    }
    if (!out) throw std::runtime_error("short write on state file: " + path);
}

StateVector load_state_file(const std::string& path, RegisterLayout& layout_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    unsigned char header[16];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || header[0] != 'Q' || header[1] != 'F' || header[2] != 'S' || header[3] != '1')
        throw std::runtime_error("bad state file header");
    layout_out = make_layout(header[5], header[6]);
    if (layout_out.qubits() != header[4]) throw std::runtime_error("state file header is inconsistent");
    std::uint64_t dim = 0;
    for (int b = 0; b < 8; ++b) dim |= static_cast<std::uint64_t>(header[8 + b]) << (8 * b);
    if (dim != layout_out.dim()) throw std::runtime_error("state file dimension mismatch");
    StateVector state(layout_out.qubits());
    for (std::uint64_t k = 0; k < dim; ++k) {
        unsigned char raw[8];
        in.read(reinterpret_cast<char*>(raw), sizeof raw);
        if (!in) throw std::runtime_error("state file truncated");
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(raw[b]) << (8 * b);
        double a;
        std::memcpy(&a, &bits, sizeof a);
        state[k] = a;
    }
    return state;
}

}  // namespace qfh
