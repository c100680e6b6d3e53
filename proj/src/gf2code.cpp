#include "qfh/gf2code.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace qfh {

namespace {

void check_shape(const LinearCode& code) {
    if (code.m < 1 || code.m > 24) throw std::invalid_argument("code requires 1 <= m <= 24");
    if (code.s < 1 || code.l != (1 << code.s)) throw std::invalid_argument("code length must be a power of two");
    if (code.rows.size() != static_cast<std::size_t>(code.l)) throw std::invalid_argument("generator row count must equal l");
}

void check_word(const LinearCode& code, const Word& w) {
    if (w.size != code.m) throw std::invalid_argument("message length does not match code");
}

int codeword_weight(const std::vector<std::uint64_t>& blocks) {
    int w = 0;
    for (std::uint64_t b : blocks) w += std::popcount(b);
    return w;
}

CodeMetrics metrics_from(int d_min, int l, bool exact) {
    return CodeMetrics{d_min, 1.0 - static_cast<double>(d_min) / static_cast<double>(l), exact};
}

}  // namespace

int Codeword::weight() const { return codeword_weight(blocks); }

LinearCode generate_random_linear_code(int m, int s, std::uint64_t seed) {
    if (m < 1 || m > 24) throw std::invalid_argument("code requires 1 <= m <= 24");
    if (s < 1 || s > 20) throw std::invalid_argument("code exponent s must be 1..20");
    const int l = 1 << s;
    if (l < m) throw std::invalid_argument("code requires 2^s >= m");
    LinearCode code{m, l, s, seed, {}};
    code.rows.resize(static_cast<std::size_t>(l));
    std::mt19937_64 gen(seed);
    const std::uint64_t mask = word_mask(m);
    for (int i = 0; i < l; ++i) code.rows[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(gen() & mask);
    return code;
}

Codeword encode(const LinearCode& code, const Word& w) {
    check_shape(code);
    check_word(code, w);
    Codeword cw;
    cw.length = code.l;
    cw.blocks.assign(static_cast<std::size_t>((code.l + 63) / 64), 0);
    for (int i = 0; i < code.l; ++i) {
        const int bit = std::popcount(code.rows[static_cast<std::size_t>(i)] & static_cast<std::uint32_t>(w.bits)) & 1;
        if (bit) cw.blocks[static_cast<std::size_t>(i) >> 6] |= 1ull << (i & 63);
    }
    return cw;
}

int pair_distance(const LinearCode& code, const Word& w, const Word& w2) {
    return encode(code, w ^ w2).weight();
}

CodeMetrics min_distance_exact(const LinearCode& code) {
    check_shape(code);
    if (code.m > 20) throw std::invalid_argument("exact minimum distance is limited to m <= 20; use min_distance_sampled");
    // Gray-code walk: each step flips one message bit, so the running
    // codeword picks up one generator column.
    std::vector<std::vector<std::uint64_t>> columns(static_cast<std::size_t>(code.m));
    const std::size_t nblocks = static_cast<std::size_t>((code.l + 63) / 64);
    for (int j = 0; j < code.m; ++j) {
        columns[static_cast<std::size_t>(j)].assign(nblocks, 0);
        for (int i = 0; i < code.l; ++i)
            if ((code.rows[static_cast<std::size_t>(i)] >> j) & 1u)
                columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) >> 6] |= 1ull << (i & 63);
    }
    std::vector<std::uint64_t> acc(nblocks, 0);
    int best = code.l + 1;
    const std::uint64_t total = 1ull << code.m;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int flip = std::countr_zero(k);  // Gray code g(k) = g(k-1) xor bit
        const auto& col = columns[static_cast<std::size_t>(flip)];
        for (std::size_t b = 0; b < nblocks; ++b) acc[b] ^= col[b];
        const int w = codeword_weight(acc);
        if (w < best) {
            best = w;
            if (best == 0) break;
        }
    }
    return metrics_from(best, code.l, true);
}

CodeMetrics min_distance_sampled(const LinearCode& code, std::uint64_t trials, std::uint64_t seed) {
    check_shape(code);
    if (trials == 0) throw std::invalid_argument("sampled minimum distance needs at least one trial");
    std::mt19937_64 gen(seed);
    const std::uint64_t mask = word_mask(code.m);
    int best = code.l + 1;
    for (std::uint64_t k = 0; k < trials; ++k) {
        std::uint64_t msg = 0;
        while (msg == 0) msg = gen() & mask;
        const int w = encode(code, Word{msg, code.m}).weight();
        if (w < best) best = w;
    }
    return metrics_from(best, code.l, false);
}

int default_code_exponent(int m, int rate) {
    if (m < 1 || rate < 1) throw std::invalid_argument("code exponent needs m >= 1 and rate >= 1");
    int s = 1;
    while ((1 << s) < m * rate) ++s;
    return s;
}

void save_code(std::ostream& out, const LinearCode& code) {
    check_shape(code);
    out << "gf2code m=" << code.m << " l=" << code.l << " seed=" << code.seed << "\n";
    for (int i = 0; i < code.l; ++i) {
        std::string row(static_cast<std::size_t>(code.m), '0');
        for (int j = 0; j < code.m; ++j)
            if ((code.rows[static_cast<std::size_t>(i)] >> j) & 1u) row[static_cast<std::size_t>(j)] = '1';
        out << row << "\n";
    }
}

LinearCode load_code(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("code file is empty");
    LinearCode code;
    {
        std::istringstream hs(header);
        std::string tag, mfield, lfield, sfield;
        hs >> tag >> mfield >> lfield >> sfield;
        if (tag != "gf2code" || mfield.rfind("m=", 0) != 0 || lfield.rfind("l=", 0) != 0 ||
            sfield.rfind("seed=", 0) != 0)
            throw std::runtime_error("bad code file header: " + header);
        code.m = std::stoi(mfield.substr(2));
        code.l = std::stoi(lfield.substr(2));
        code.seed = std::stoull(sfield.substr(5));
    }
    if (code.m < 1 || code.m > 24) throw std::runtime_error("code file: m out of range");
    if (code.l < 2 || (code.l & (code.l - 1)) != 0) throw std::runtime_error("code file: l must be a power of two");
    code.s = std::countr_zero(static_cast<unsigned>(code.l));
    code.rows.reserve(static_cast<std::size_t>(code.l));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.size() != static_cast<std::size_t>(code.m))
            throw std::runtime_error("code file: row width does not match m");
        std::uint32_t row = 0;
        for (int j = 0; j < code.m; ++j) {
            if (line[static_cast<std::size_t>(j)] == '1') row |= 1u << j;
            else if (line[static_cast<std::size_t>(j)] != '0') throw std::runtime_error("code file: rows must be 0/1");
        }
        code.rows.push_back(row);
    }
    if (code.rows.size() != static_cast<std::size_t>(code.l))
        throw std::runtime_error("code file: expected l generator rows");
    return code;
}

void save_code_file(const std::string& path, const LinearCode& code) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write code file: " + path);
    save_code(out, code);
}

LinearCode load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    return load_code(in);
}

}  // namespace qfh
