#include "synforge/bitvec.hpp"

#include <bit>
#include <random>

#include "synforge/rng.hpp"

namespace synforge {

BitVec BitVec::from_string(std::string_view s) {
    BitVec v(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw ValidationError("bit string may contain only '0'/'1'");
    }
    return v;
}

BitVec BitVec::random(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitVec v(n);
    for (auto& w : v.w_) w = rng();
    if (n % 64) v.w_.back() &= (uint64_t(1) << (n % 64)) - 1;
    return v;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

size_t BitVec::weight() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw DimensionError("xor of vectors with different lengths");
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool masked_parity(const BitVec& v, const BitVec& mask) {
    if (v.size() != mask.size())
        throw DimensionError("masked_parity: vector and mask lengths differ");
    uint64_t acc = 0;
    auto vw = v.words();
    auto mw = mask.words();
    for (size_t i = 0; i < vw.size(); ++i) acc ^= vw[i] & mw[i];
    return std::popcount(acc) & 1;
}

} // namespace synforge
