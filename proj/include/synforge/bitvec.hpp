#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synforge/errors.hpp"

namespace synforge {

// Dense GF(2) vector packed into 64-bit words.
//
// Bit order convention, used by every serialized format in this project:
// position 0 is the leftmost character of the ASCII '0'/'1' string and the
// first transmitted bit. Internally bit i lives in word i/64 at bit i%64.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s);
    static BitVec random(size_t n, uint64_t seed);

    std::string to_string() const;

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        if (v)
            w_[i >> 6] |= uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    size_t weight() const;
    bool is_zero() const;

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }
    friend bool operator==(const BitVec&, const BitVec&) = default;

    std::span<const uint64_t> words() const { return w_; }
    std::span<uint64_t> words() { return w_; }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Parity (sum mod 2) of v restricted to positions where mask = 1.
bool masked_parity(const BitVec& v, const BitVec& mask);

} // namespace synforge
