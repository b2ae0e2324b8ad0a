#include "synforge/csscode.hpp"

#include <cmath>
#include <deque>

namespace synforge {

ClassicalCode::ClassicalCode(BitMatrix generator, BitMatrix parity_check)
    : generator_(std::move(generator)), parity_check_(std::move(parity_check)) {
    if (parity_check_.rows() > 0 && parity_check_.cols() != generator_.cols())
        throw DimensionError("generator and parity check have different lengths");
    if (generator_.rank() != generator_.rows())
        throw ValidationError("generator rows are linearly dependent");
    for (size_t r = 0; r < generator_.rows(); ++r)
        if (!parity_check_.mul(generator_.row(r)).is_zero())
            throw ValidationError("generator row fails the parity check");
    if (parity_check_.rank() + generator_.rows() != generator_.cols())
        throw ValidationError("parity check does not cut the code out exactly");
}

ClassicalCode ClassicalCode::from_generator(BitMatrix generator) {
    // Rows of the parity check form a basis of ker G.
    auto sol = generator.solve(BitVec(generator.rows()));
    BitMatrix h = BitMatrix::from_rows(sol.kernel);
    if (h.rows() == 0) h = BitMatrix(0, generator.cols());
    return ClassicalCode(std::move(generator), std::move(h));
}

BitVec ClassicalCode::encode(const BitVec& message) const {
    if (message.size() != dimension()) throw DimensionError("encode: message length != k");
    BitVec word(length());
    for (size_t i = 0; i < dimension(); ++i)
        if (message.get(i)) word ^= generator_.row(i);
    return word;
}

ClassicalCode repetition_code() {
    return ClassicalCode(BitMatrix::from_strings({"111"}),
                         BitMatrix::from_strings({"110", "011"}));
}

ClassicalCode hamming_7_4() {
    return ClassicalCode(BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"}),
                         BitMatrix::from_strings({"1101100", "1011010", "0111001"}));
}

ClassicalCode hamming_7_4_dual() {
    // Generator = Hamming parity check; parity check = Hamming generator.
    return ClassicalCode(BitMatrix::from_strings({"1101100", "1011010", "0111001"}),
                         BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"}));
}

ClassicalCode zero_code(size_t n) {
    return ClassicalCode(BitMatrix(0, n), BitMatrix::identity(n));
}

CssCode css_repetition() { return CssCode(repetition_code(), zero_code(3)); }

CssCode css_hamming_dual() { return CssCode(hamming_7_4(), hamming_7_4_dual()); }

namespace {

size_t code_min_distance(const ClassicalCode& c) {
    // Exemplar codes are tiny; enumerate the 2^k codewords.
    size_t best = c.length() + 1;
    size_t k = c.dimension();
    for (uint64_t m = 1; m < (uint64_t(1) << k); ++m) {
        BitVec msg(k);
        for (size_t i = 0; i < k; ++i)
            if ((m >> i) & 1) msg.set(i, true);
        best = std::min(best, c.encode(msg).weight());
    }
    return best;
}

} // namespace

CssCode::CssCode(ClassicalCode c1, ClassicalCode c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
    if (c1_.length() != c2_.length())
        throw DimensionError("C1 and C2 have different lengths");
    for (size_t r = 0; r < c2_.dimension(); ++r)
        if (!c1_.generator().row_space_contains(c2_.generator().row(r)))
            throw ValidationError("C2 is not a subcode of C1");
    if (c1_.length() > 24)
        throw ValidationError("syndrome table decoding is limited to length 24");

    auto r2 = c2_.generator().rref();
    c2_rref_ = BitMatrix::from_rows(std::move(r2.rows));
    c2_pivots_ = std::move(r2.pivot_cols);

    // Complement basis: C1 generators reduced mod C2, reduced again.
    BitMatrix residues(0, c1_.length());
    for (size_t r = 0; r < c1_.dimension(); ++r) {
        BitVec res = reduce_mod_c2(c1_.generator().row(r));
        if (!res.is_zero()) residues.append_row(std::move(res));
    }
    auto rq = residues.rref();
    quotient_rref_ = BitMatrix::from_rows(std::move(rq.rows));
    quotient_pivots_ = std::move(rq.pivot_cols);
    if (quotient_rref_.rows() != key_length())
        throw ValidationError("quotient basis has unexpected dimension");

    // Coset-leader table of C1 by breadth-first search over error weights.
    const size_t n = c1_.length();
    const size_t syndromes = size_t(1) << c1_.parity_check().rows();
    leader_.assign(syndromes, BitVec());
    std::vector<bool> seen(syndromes, false);
    std::deque<BitVec> frontier;
    frontier.push_back(BitVec(n));
    auto syn_index = [&](const BitVec& e) {
        BitVec s = c1_.syndrome(e);
        size_t v = 0;
        for (size_t i = 0; i < s.size(); ++i)
            if (s.get(i)) v |= size_t(1) << i;
        return v;
    };
    seen[0] = true;
    leader_[0] = BitVec(n);
    size_t found = 1;
    while (!frontier.empty() && found < syndromes) {
        BitVec e = std::move(frontier.front());
        frontier.pop_front();
        for (size_t i = 0; i < n; ++i) {
            if (e.get(i)) continue;
            BitVec e2 = e;
            e2.set(i, true);
            size_t s = syn_index(e2);
            if (!seen[s]) {
                seen[s] = true;
                leader_[s] = e2;
                ++found;
            }
            if (e2.weight() < 6) frontier.push_back(std::move(e2)); // covering-radius cap
        }
    }
    for (size_t s = 0; s < syndromes; ++s)
        if (!seen[s]) throw ValidationError("incomplete coset leader table");

    t_ = (code_min_distance(c1_) - 1) / 2;
}

BitVec CssCode::reduce_mod_c2(BitVec u) const {
    for (size_t r = 0; r < c2_rref_.rows(); ++r)
        if (u.get(c2_pivots_[r])) u ^= c2_rref_.row(r);
    return u;
}

BitVec CssCode::coset_label(const BitVec& u) const {
    if (!c1_.contains(u)) throw MembershipError("coset_label: vector is not in C1");
    BitVec res = reduce_mod_c2(u);
    BitVec label(key_length());
    for (size_t i = 0; i < quotient_pivots_.size(); ++i)
        if (res.get(quotient_pivots_[i])) label.set(i, true);
    return label;
}

CssCode::Decoded CssCode::decode_c1(const BitVec& v) const {
    BitVec s = c1_.syndrome(v);
    size_t idx = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s.get(i)) idx |= size_t(1) << i;
    Decoded d;
    d.error = leader_[idx];
    d.codeword = v ^ d.error;
    d.success = d.error.weight() <= t_;
    return d;
}

ExtractResult extract_key(const BitVec& w, const BitVec& received, const BitVec& u,
                          const CssCode& code) {
    if (!code.c1().contains(u)) throw MembershipError("extract_key: u is not a codeword of C1");
    BitVec broadcast = w ^ u;            // public
    BitVec noisy_code = received ^ broadcast; // u + e
    auto dec = code.decode_c1(noisy_code);
    ExtractResult res;
    res.success = dec.success;
    res.key = code.coset_label(dec.codeword);
    return res;
}

BitVec alice_key_label(const BitVec& u, const CssCode& code) {
    return code.coset_label(u);
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double one_way_rate(double p) {
    if (p < 0.0 || p > 0.5) throw ValidationError("one_way_rate: p outside [0, 0.5]");
    return 1.0 - 2.0 * binary_entropy(p);
}

double one_way_rate_root(double tol) {
    double lo = 1e-12, hi = 0.5 - 1e-12;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (one_way_rate(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace synforge
