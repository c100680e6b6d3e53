#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qfh/word.hpp"

namespace qfh {

// Codeword of a binary linear code: l bits packed into 64-bit blocks,
// bit i of the word is block i/64, position i%64.
struct Codeword {
    std::vector<std::uint64_t> blocks;
    int length = 0;

    bool bit(int i) const { return (blocks[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
    int weight() const;
    bool operator==(const Codeword&) const = default;
};

// Binary linear code given by an l x m generator over GF(2). Row i is the
// m-bit mask rows[i]; codeword bit i of message w is <rows[i], w> mod 2.
// l = 2^s so every codeword bit can be addressed by an s-qubit index.
struct LinearCode {
    int m = 0;
    int l = 0;
    int s = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> rows;
};

struct CodeMetrics {
    int d_min = 0;
    double epsilon = 1.0;  // 1 - d_min / l
    bool exact = false;
};

// Uniform random generator matrix, bit-identical for identical (m, s, seed).
// Requires 1 <= m <= 24 and 2^s >= max(m, 2). Rank deficiency is allowed;
// it shows up later as d_min = 0.
LinearCode generate_random_linear_code(int m, int s, std::uint64_t seed);

Codeword encode(const LinearCode& code, const Word& w);

// Distance between the codewords of w and w2; by linearity this is the
// weight of encode(w xor w2).
int pair_distance(const LinearCode& code, const Word& w, const Word& w2);

// Exhaustive minimum weight over all 2^m - 1 nonzero messages. Refuses
// m > 20; use min_distance_sampled there.
CodeMetrics min_distance_exact(const LinearCode& code);

// Upper estimate of d_min from `trials` random nonzero messages.
CodeMetrics min_distance_sampled(const LinearCode& code, std::uint64_t trials, std::uint64_t seed);

// Default code length exponent: the smallest s with 2^s >= rate * m.
int default_code_exponent(int m, int rate);

// Text format: header "gf2code m=<m> l=<l> seed=<seed>", then l rows of m
// characters in {0,1}, leftmost character is message bit 0.
void save_code(std::ostream& out, const LinearCode& code);
LinearCode load_code(std::istream& in);
void save_code_file(const std::string& path, const LinearCode& code);
LinearCode load_code_file(const std::string& path);

}  // namespace qfh
