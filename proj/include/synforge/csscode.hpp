#pragma once

#include <optional>
#include <vector>

#include "synforge/bitmatrix.hpp"

namespace synforge {

// Binary linear code given by a generator and a matching parity-check
// matrix (G H^T = 0, rank G = k).
class ClassicalCode {
public:
    ClassicalCode(BitMatrix generator, BitMatrix parity_check);

    // Derives the parity check as a kernel basis of the generator.
    static ClassicalCode from_generator(BitMatrix generator);

    size_t length() const { return generator_.cols(); }
    size_t dimension() const { return generator_.rows(); }
    const BitMatrix& generator() const { return generator_; }
    const BitMatrix& parity_check() const { return parity_check_; }

    bool contains(const BitVec& v) const { return parity_check_.mul(v).is_zero(); }
    BitVec syndrome(const BitVec& v) const { return parity_check_.mul(v); }
    BitVec encode(const BitVec& message) const; // message length = dimension

private:
    BitMatrix generator_;
    BitMatrix parity_check_;
};

// The [3,1] repetition code.
ClassicalCode repetition_code();
// The [7,4] Hamming code in standard form.
ClassicalCode hamming_7_4();
// Its dual, the [7,3] simplex code; a subcode of hamming_7_4().
ClassicalCode hamming_7_4_dual();
// The [n,0] zero code.
ClassicalCode zero_code(size_t n);

// Nested pair C2 ⊆ C1; key bits label cosets of C2 in C1.
class CssCode {
public:
    CssCode(ClassicalCode c1, ClassicalCode c2);

    const ClassicalCode& c1() const { return c1_; }
    const ClassicalCode& c2() const { return c2_; }
    size_t length() const { return c1_.length(); }
    size_t key_length() const { return c1_.dimension() - c2_.dimension(); }

    // Canonical coset label of u + C2, read off reduced-echelon pivot
    // coordinates of the quotient; equal labels iff u1 + u2 lies in C2.
    BitVec coset_label(const BitVec& u) const;

    // Nearest-codeword decode of v in C1 via the coset-leader table.
    // success reflects the decoder's belief: leader weight within the
    // code's correction radius.
    struct Decoded {
        BitVec codeword;
        BitVec error;
        bool success = false;
    };
    Decoded decode_c1(const BitVec& v) const;

    size_t correction_radius() const { return t_; }

private:
    ClassicalCode c1_;
    ClassicalCode c2_;
    BitMatrix c2_rref_;                 // reduced basis of C2
    std::vector<size_t> c2_pivots_;
    BitMatrix quotient_rref_;           // complement basis of C2 in C1
    std::vector<size_t> quotient_pivots_;
    std::vector<BitVec> leader_;        // coset leader per syndrome value
    size_t t_ = 0;

    BitVec reduce_mod_c2(BitVec u) const;
};

// Shipped exemplar pairs: the smallest nontrivial CSS constructions.
CssCode css_repetition();   // C1 = repetition [3,1], C2 = zero code
CssCode css_hamming_dual(); // C1 = Hamming [7,4], C2 = its dual [7,3]

struct ExtractResult {
    BitVec key;          // bob's coset label, length = key_length
    bool success = false;
};

// Shor-Preskill key extraction: Alice picks a random codeword u of C1 and
// broadcasts w + u; Bob holds received = w + e, subtracts the broadcast to
// get u + e, decodes in C1, and keys the coset of the decoded word. Only
// bit values enter; no phase information exists in this module.
ExtractResult extract_key(const BitVec& w, const BitVec& received, const BitVec& u,
                          const CssCode& code);

// Alice-side view used in tests: given her u, the label Bob must reproduce.
BitVec alice_key_label(const BitVec& u, const CssCode& code);

// One-way key rate 1 - 2 H2(p).
double one_way_rate(double p);
double binary_entropy(double p);
// Root of the one-way rate in (0, 1/2), by bisection to the given tolerance.
double one_way_rate_root(double tol = 1e-6);

} // namespace synforge
