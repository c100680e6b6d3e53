#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "qfh/gf2code.hpp"
#include "qfh/qstate.hpp"

namespace qfh {

struct HashSpec {
    int m = 0;
    double epsilon = 1.0;
    int s = 0;
    bool epsilon_exact = false;
};

// Reversible hash into a small register: words map to unit states whose
// pairwise overlaps stay within epsilon. The search pipeline only uses this
// interface, never the concrete construction.
//
// The hash block sits at bits [block_lsb, block_lsb + block_width) of the
// span it is applied to; bits below block_lsb ride along unchanged, bits
// above act as parallel lanes. apply_inverse(state_of(w)) must give |0...0>.
class QuantumHash {
  public:
    virtual ~QuantumHash() = default;

    virtual const HashSpec& spec() const = 0;
    virtual int block_width() const = 0;
    virtual StateVector state_of(const Word& w) const = 0;
    virtual void apply_forward(std::span<double> amps, int block_lsb, const Word& w) const = 0;
    virtual void apply_inverse(std::span<double> amps, int block_lsb, const Word& w) const = 0;

    // Set when the hash is backed by a binary linear code; lets reports
    // carry distance profiles.
    virtual const LinearCode* linear_code() const { return nullptr; }
};

// Codeword-superposition hash: w maps to (1/sqrt(l)) sum_i |i>|E_i(w)>.
// Forward transform is Hadamards on the index register followed by the
// codeword XOR; the inverse undoes them in the opposite order. Block width
// is s + 1 (index register plus target qubit).
class FingerprintHash final : public QuantumHash {
  public:
    FingerprintHash(LinearCode code, CodeMetrics metrics);

    const HashSpec& spec() const override { return spec_; }
    int block_width() const override { return code_.s + 1; }
    StateVector state_of(const Word& w) const override;
    void apply_forward(std::span<double> amps, int block_lsb, const Word& w) const override;
    void apply_inverse(std::span<double> amps, int block_lsb, const Word& w) const override;
    const LinearCode* linear_code() const override { return &code_; }

    const LinearCode& code() const { return code_; }

    // Signed state overlap, equal to 1 - pair_distance / l; never negative
    // for binary codes.
    double overlap(const Word& w, const Word& w2) const;

  private:
    LinearCode code_;
    HashSpec spec_;
};

// Convenience wrappers for standalone block states (block_lsb = 0).
void apply_forward(const QuantumHash& hash, StateVector& block_state, const Word& w);
void apply_inverse(const QuantumHash& hash, StateVector& block_state, const Word& w);

// Max |<state_of(w)|state_of(w2)>| over distinct pairs, computed from the
// states themselves. Exhaustive for m <= 10.
double epsilon_stability_check(const QuantumHash& hash);

// Sampled variant for larger m: `trials` random distinct pairs.
double epsilon_stability_check(const QuantumHash& hash, std::uint64_t trials, std::uint64_t seed);

// Lower bound on the qubits any (m, epsilon)-stable hash needs:
// log2(m) - log2(log2(1 + sqrt(2 / (1 - epsilon)))) - 1. Requires m >= 2
// and epsilon < 1.
double min_qubits_bound(int m, double epsilon);

// Fingerprint hash from a fresh random code, metrics exact when m allows.
std::shared_ptr<FingerprintHash> make_fingerprint_hash(int m, int s, std::uint64_t seed);

}  // namespace qfh
