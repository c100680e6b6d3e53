#pragma once

#include <cstdint>
#include <vector>

#include "qfh/search.hpp"

namespace qfh {

// Small dense real matrix, row major. Only used by the cross-check route;
// the structured pipeline never touches it.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static DenseMatrix zero(std::size_t rows, std::size_t cols);
    static DenseMatrix identity(std::size_t n);
    static DenseMatrix hadamard();  // 2x2
    static DenseMatrix pauli_x();   // 2x2
};

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& v);

// n-fold Kronecker power.
DenseMatrix kron_power(const DenseMatrix& a, int n);

// Explicit operators for one hash block of a fingerprint hash, dimension
// 2^(s+1): the codeword-controlled target flip as a permutation matrix, and
// the forward/inverse block transforms assembled by matrix products.
DenseMatrix dense_codeword_xor(const LinearCode& code, const Word& w);
DenseMatrix dense_block_forward(const LinearCode& code, const Word& w);
DenseMatrix dense_block_inverse(const LinearCode& code, const Word& w);

// Whole-register operators for a layout (q <= 12).
DenseMatrix dense_preparation(const RegisterLayout& layout);                  // Hadamards on j, X on flag
DenseMatrix dense_dictionary_build(const RegisterLayout& layout, const LinearCode& code,
                                   std::span<const Word> dictionary);
DenseMatrix dense_conversion(const RegisterLayout& layout, const LinearCode& code, const Word& query);
std::vector<double> dense_good_phase_diag(const RegisterLayout& layout);      // +-1 diagonal
DenseMatrix dense_reflection(const std::vector<double>& axis);                // 2 aa^T - I

// Replays the whole pipeline through explicit matrices. Requires a
// code-backed hash and at most 12 qubits.
PipelineStages dense_pipeline(const SearchInstance& instance);

struct OverlapRow {
    std::uint64_t j = 0;
    int d = 0;         // codeword distance between V[j] and the query
    double alpha0 = 0; // good amplitude of block j after conversion, scaled by sqrt(n)
};

// Per-slot distances next to the good amplitudes read from the converted
// state; the two columns must satisfy alpha0 = 1 - d/l.
std::vector<OverlapRow> overlap_table(std::span<const Word> dictionary, const Word& query,
                                    const FingerprintHash& hash);

}  // namespace qfh
