#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfh {

// Fixed-length bit string, up to 64 bits. Bit j of `bits` is position j of the
// word; the text form writes position 0 leftmost ("0011" has bits 2 and 3 set).
struct Word {
    std::uint64_t bits = 0;
    int size = 0;

    bool bit(int pos) const { return (bits >> pos) & 1u; }
    bool operator==(const Word&) const = default;
};

inline std::uint64_t word_mask(int size) {
    return size >= 64 ? ~0ull : ((1ull << size) - 1);
}

inline Word operator^(Word a, Word b) {
    if (a.size != b.size) throw std::invalid_argument("word size mismatch in xor");
    return Word{a.bits ^ b.bits, a.size};
}

inline Word parse_word(std::string_view text) {
    if (text.empty() || text.size() > 64) throw std::invalid_argument("word length must be 1..64");
    Word w{0, static_cast<int>(text.size())};
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '1') w.bits |= 1ull << j;
        else if (text[j] != '0') throw std::invalid_argument("word may contain only 0 and 1");
    }
    return w;
}

inline std::string to_string(const Word& w) {
    std::string out(static_cast<std::size_t>(w.size), '0');
    for (int j = 0; j < w.size; ++j)
        if (w.bit(j)) out[static_cast<std::size_t>(j)] = '1';
    return out;
}

// One engine draw per word keeps generated streams reproducible.
inline Word random_word(std::mt19937_64& gen, int size) {
    if (size < 1 || size > 64) throw std::invalid_argument("word length must be 1..64");
    return Word{gen() & word_mask(size), size};
}

}  // namespace qfh
