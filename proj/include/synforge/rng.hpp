#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace synforge {

// splitmix64 step; used to derive independent sub-seeds from one session seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t s = seed ^ (0xa0761d6478bd642fULL * (stream + 1));
    return splitmix64(s);
}

// Uniform double in [0,1) with 53 random bits. Avoids the
// implementation-defined behaviour of std::uniform_real_distribution
// so runs replay identically across standard libraries.
inline double rand_double01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n must be > 0.
inline uint64_t rand_below(std::mt19937_64& rng, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline bool rand_bit(std::mt19937_64& rng) {
    return (rng() >> 63) != 0;
}

// In-place Fisher-Yates with explicit bounded sampling (std::shuffle is
// implementation-defined).
template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rand_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Sample k distinct indices from [0, n) without replacement (partial Fisher-Yates).
inline std::vector<size_t> sample_without_replacement(size_t n, size_t k, std::mt19937_64& rng) {
    std::vector<size_t> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k && i < n; ++i) {
        size_t j = i + static_cast<size_t>(rand_below(rng, n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

} // namespace synforge
