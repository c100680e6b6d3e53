#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qfh/gf2code.hpp"

using namespace qfh;

namespace {

Codeword xor_codewords(Codeword a, const Codeword& b) {
    for (std::size_t k = 0; k < a.blocks.size(); ++k) a.blocks[k] ^= b.blocks[k];
    return a;
}

int hamming(const Codeword& a, const Codeword& b) { return xor_codewords(a, b).weight(); }

std::string codeword_string(const Codeword& cw) {
    std::string out;
    for (int i = 0; i < cw.length; ++i) out += cw.bit(i) ? '1' : '0';
    return out;
}

}  // namespace

TEST_CASE("word parse and format round trip") {
    const Word w = parse_word("0011");
    CHECK(w.size == 4);
    CHECK(w.bits == 0b1100);  // leftmost character is bit 0
    CHECK(to_string(w) == "0011");
    CHECK_THROWS_AS(parse_word("01x1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("01") ^ parse_word("011"), std::invalid_argument);
    CHECK((parse_word("0110") ^ parse_word("0101")) == parse_word("0011"));
}

TEST_CASE("generation is deterministic in (m, s, seed)") {
    const LinearCode a = generate_random_linear_code(6, 4, 123);
    const LinearCode b = generate_random_linear_code(6, 4, 123);
    CHECK(a.rows == b.rows);
    const LinearCode c = generate_random_linear_code(6, 4, 124);
    CHECK(a.rows != c.rows);
}

TEST_CASE("generation rejects bad shapes") {
    CHECK_THROWS_AS(generate_random_linear_code(0, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_linear_code(25, 6, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_linear_code(4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_linear_code(5, 2, 1), std::invalid_argument);  // 2^s < m
}

TEST_CASE("frozen fixture m=4 s=4 seed=42") {
    const LinearCode code = generate_random_linear_code(4, 4, 42);
    CHECK(codeword_string(encode(code, parse_word("0011"))) == "1110100010111001");
    CHECK(codeword_string(encode(code, parse_word("1000"))) == "0000100001100010");
    CHECK(pair_distance(code, parse_word("0011"), parse_word("0101")) == 5);

    const CodeMetrics metrics = min_distance_exact(code);
    CHECK(metrics.d_min == 3);
    CHECK(metrics.epsilon == doctest::Approx(0.8125).epsilon(1e-15));
    CHECK(metrics.exact);
}

TEST_CASE("encode is linear") {
    const LinearCode code = generate_random_linear_code(6, 4, 7);
    const Word zero{0, 6};
    CHECK(encode(code, zero).weight() == 0);
    for (std::uint64_t u = 0; u < 64; ++u)
        for (std::uint64_t v = 0; v < 64; ++v) {
            const Word wu{u, 6}, wv{v, 6};
            CHECK(encode(code, wu ^ wv) == xor_codewords(encode(code, wu), encode(code, wv)));
        }
}

TEST_CASE("pair distance equals the codeword hamming distance") {
    const LinearCode code = generate_random_linear_code(5, 3, 99);
    for (std::uint64_t u = 0; u < 32; ++u)
        for (std::uint64_t v = 0; v < 32; ++v) {
            const Word wu{u, 5}, wv{v, 5};
            CHECK(pair_distance(code, wu, wv) == hamming(encode(code, wu), encode(code, wv)));
        }
}

TEST_CASE("exact minimum distance matches the exhaustive pair scan") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const LinearCode code = generate_random_linear_code(6, 4, seed);
        int best = code.l + 1;
        for (std::uint64_t u = 0; u < 64; ++u)
            for (std::uint64_t v = u + 1; v < 64; ++v)
                best = std::min(best, pair_distance(code, Word{u, 6}, Word{v, 6}));
        CHECK(min_distance_exact(code).d_min == best);
    }
}

TEST_CASE("exact minimum distance refuses m > 20") {
    LinearCode code = generate_random_linear_code(22, 7, 5);
    CHECK_THROWS_AS(min_distance_exact(code), std::invalid_argument);
}

TEST_CASE("repetition column gives a zero-overlap code") {
    LinearCode code{1, 4, 2, 0, {1, 1, 1, 1}};
    const CodeMetrics metrics = min_distance_exact(code);
    CHECK(metrics.d_min == 4);
    CHECK(metrics.epsilon == 0.0);
    CHECK(codeword_string(encode(code, parse_word("1"))) == "1111");
}

TEST_CASE("rank-deficient code is flagged, not rejected") {
    LinearCode code{2, 4, 2, 0, {1, 1, 1, 1}};  // second message bit never used
    const CodeMetrics metrics = min_distance_exact(code);
    CHECK(metrics.d_min == 0);
    CHECK(metrics.epsilon == 1.0);
}

TEST_CASE("sampled minimum distance") {
    const LinearCode code = generate_random_linear_code(4, 4, 42);
    const CodeMetrics exact = min_distance_exact(code);
    const CodeMetrics sampled = min_distance_sampled(code, 5000, 11);
    CHECK_FALSE(sampled.exact);
    CHECK(sampled.d_min >= exact.d_min);  // an estimate can only miss upward
    CHECK(sampled.d_min == exact.d_min);  // 5000 draws over 15 messages cover them all
    const CodeMetrics again = min_distance_sampled(code, 5000, 11);
    CHECK(sampled.d_min == again.d_min);
    CHECK_THROWS_AS(min_distance_sampled(code, 0, 1), std::invalid_argument);
}

TEST_CASE("sampled estimate never undershoots the exact value at m = 16") {
    const LinearCode code = generate_random_linear_code(16, 6, 3);
    const CodeMetrics exact = min_distance_exact(code);
    for (std::uint64_t seed : {1ull, 9ull, 77ull})
        CHECK(min_distance_sampled(code, 2000, seed).d_min >= exact.d_min);
}

TEST_CASE("code file round trip") {
    const LinearCode code = generate_random_linear_code(4, 4, 42);
    std::stringstream buffer;
    save_code(buffer, code);
    const LinearCode loaded = load_code(buffer);
    CHECK(loaded.m == code.m);
    CHECK(loaded.l == code.l);
    CHECK(loaded.s == code.s);
    CHECK(loaded.seed == code.seed);
    CHECK(loaded.rows == code.rows);
}

TEST_CASE("code file text places message bit 0 leftmost") {
    std::stringstream buffer("gf2code m=2 l=2 seed=0\n10\n01\n");
    const LinearCode code = load_code(buffer);
    CHECK(code.rows == std::vector<std::uint32_t>{1, 2});
    const Codeword cw = encode(code, parse_word("10"));
    CHECK(cw.bit(0) == 1);
    CHECK(cw.bit(1) == 0);
}

TEST_CASE("code file loader rejects malformed input") {
    {
        std::stringstream bad("not-a-code m=2 l=2 seed=0\n10\n01\n");
        CHECK_THROWS_AS(load_code(bad), std::runtime_error);
    }
    {
        std::stringstream bad("gf2code m=2 l=2 seed=0\n101\n01\n");
        CHECK_THROWS_AS(load_code(bad), std::runtime_error);
    }
    {
        std::stringstream bad("gf2code m=2 l=3 seed=0\n10\n01\n10\n");
        CHECK_THROWS_AS(load_code(bad), std::runtime_error);
    }
    {
        std::stringstream bad("gf2code m=2 l=4 seed=0\n10\n01\n");
        CHECK_THROWS_AS(load_code(bad), std::runtime_error);
    }
}

TEST_CASE("default code exponent") {
    CHECK(default_code_exponent(1, 4) == 2);
    CHECK(default_code_exponent(3, 4) == 4);
    CHECK(default_code_exponent(8, 4) == 5);
    CHECK(default_code_exponent(16, 4) == 6);
    CHECK(default_code_exponent(16, 16) == 8);
}
