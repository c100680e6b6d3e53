#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qfh/gf2code.hpp"

namespace qfh {

// Register order, most significant first: dictionary index j (idx_bits),
// hash index i (hash_idx_bits = s), hash target b, flag f. Basis integer is
// ((j * 2^(s+1) + (i * 2 + b)) * 2 + f, so f is bit 0, b is bit 1, i occupies
// bits 2..s+1 and j the bits above.
struct RegisterLayout {
    int idx_bits = 0;
    int hash_idx_bits = 0;  // s

    int qubits() const { return idx_bits + hash_idx_bits + 2; }
    std::uint64_t dim() const { return 1ull << qubits(); }
    std::uint64_t n() const { return 1ull << idx_bits; }
    int block_width() const { return hash_idx_bits + 1; }      // i plus b
    std::uint64_t block_size() const { return 1ull << (hash_idx_bits + 2); }
    std::uint64_t good_index(std::uint64_t j) const { return (j << (hash_idx_bits + 2)) | 1u; }
    std::uint64_t index_of(std::uint64_t basis) const { return basis >> (hash_idx_bits + 2); }
    std::uint64_t hash_block_of(std::uint64_t basis) const {
        return (basis >> 1) & ((1ull << (hash_idx_bits + 1)) - 1);
    }
    bool flag_of(std::uint64_t basis) const { return basis & 1u; }
};

RegisterLayout make_layout(int idx_bits, int hash_idx_bits);  // validates the 26-qubit budget

// Real amplitude vector over q qubits. Every operator in this simulator is
// real orthogonal, so no imaginary parts are carried.
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int qubits);  // all amplitudes zero

    int qubits() const { return qubits_; }
    std::uint64_t dim() const { return amps_.size(); }
    std::span<double> amps() { return amps_; }
    std::span<const double> amps() const { return amps_; }
    double& operator[](std::uint64_t k) { return amps_[k]; }
    double operator[](std::uint64_t k) const { return amps_[k]; }
    double norm() const;

  private:
    int qubits_ = 0;
    std::vector<double> amps_;
};

// Selects the n basis states |j>|0...0>|1>: hash block clear, flag set.
struct GoodMask {
    RegisterLayout layout;

    bool contains(std::uint64_t basis) const {
        return layout.flag_of(basis) && layout.hash_block_of(basis) == 0;
    }
    std::uint64_t count() const { return layout.n(); }
    std::vector<std::uint64_t> indices() const;
};

// In-place butterfly for one Hadamard gate at bit position `bit` of the span.
void apply_hadamard_bit(std::span<double> amps, int bit);

// Hadamard on `count` adjacent qubits starting at `first_bit`.
void apply_hadamards(std::span<double> amps, int first_bit, int count);

// XOR the codeword bit selected by the index register into the target qubit:
// swaps the target pair wherever codeword bit i is 1. Index register occupies
// `count` = log2(length) bits starting at index_first_bit.
void apply_codeword_xor(std::span<double> amps, const Codeword& cw, int target_bit, int index_first_bit);

StateVector zero_state(const RegisterLayout& layout);

// All-zero state -> amplitude 1/sqrt(n) on every |j>|0...0>|1>.
void uniform_index_and_flag(StateVector& state, const RegisterLayout& layout);

// Hadamard on the hash index register of every block; an involution.
void hadamard_hash_index(StateVector& state, const RegisterLayout& layout);

// Self-inverse codeword XOR conditioned on the hash index register.
void codeword_xor(StateVector& state, const RegisterLayout& layout, const LinearCode& code, const Word& w);

// state <- 2 <axis|state> axis - state. Throws if axis is not unit length
// within 1e-8.
void reflect_about(StateVector& state, const StateVector& axis);

void phase_flip(StateVector& state, std::span<const std::uint64_t> indices);
void phase_flip(StateVector& state, const GoodMask& mask);

double inner_product(const StateVector& a, const StateVector& b);
double probability_of(const StateVector& state, std::uint64_t basis);
double probability_of(const StateVector& state, const GoodMask& mask);

// Draw `shots` basis outcomes from the squared amplitudes, keep only the bits
// in keep_mask (other bits are marginalized out in place). Identical seeds
// give identical outcome sequences.
std::vector<std::uint64_t> sample(const StateVector& state, std::uint64_t keep_mask, int shots, std::uint64_t seed);

std::map<std::uint64_t, int> histogram(std::span<const std::uint64_t> outcomes);

// Debug dump: 16-byte header (magic "QFS1", qubit counts, dimension), then
// 2^q little-endian doubles.
void save_state_file(const std::string& path, const StateVector& state, const RegisterLayout& layout);
StateVector load_state_file(const std::string& path, RegisterLayout& layout_out);

}  // namespace qfh
