#pragma once

#include <cstdint>
#include <random>

namespace qfh {

// splitmix64 step; used only to derive independent seeds, never as the
// sampling engine itself.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic per-slot seed for sweeps and batch runs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xa0761d6478bd642full * (index + 1));
    return splitmix64(s);
}

// 53-bit uniform double in [0, 1); avoids the implementation-defined
// std::uniform_real_distribution so identical seeds give identical streams
// everywhere.
inline double uniform53(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace qfh
