#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "synforge/pauli.hpp"

namespace synforge {

// N shared pairs in the Bell basis, labeled per pair by two bits
// (phase bit a, flip bit b): 00=Phi+, 01=Psi+, 10=Phi-, 11=Psi-.
// The all-zero pattern is the perfect N-EPR state.
struct BellPattern {
    BitVec a; // phase-error bits
    BitVec b; // bit-flip bits

    BellPattern() = default;
    explicit BellPattern(size_t n) : a(n), b(n) {}
    BellPattern(BitVec a_, BitVec b_);

    size_t pairs() const { return a.size(); }
    bool is_perfect() const { return a.is_zero() && b.is_zero(); }

    friend bool operator==(const BellPattern&, const BellPattern&) = default;
};

// Pauli noise per transmission: either iid per-pair probabilities or an
// explicit finite mixture of Pauli masks (a correlated strategy).
class PauliChannel {
public:
    struct Component {
        double prob;
        PauliOp op;
    };
    enum class Kind { iid, correlated };

    static PauliChannel iid(double p_i, double p_x, double p_y, double p_z);
    static PauliChannel depolarizing(double q); // p_x = p_y = p_z = q/3
    // Symmetric channel whose sifted bit-flip rate (and phase rate) is qber.
    static PauliChannel for_qber(double qber);
    static PauliChannel correlated(std::vector<Component> components, size_t n_pairs);

    Kind kind() const { return kind_; }
    double p_i() const { return p_[0]; }
    double p_x() const { return p_[1]; }
    double p_y() const { return p_[2]; }
    double p_z() const { return p_[3]; }
    const std::vector<Component>& components() const { return components_; }
    // Fixed pair count for correlated channels, 0 for iid (any N).
    size_t fixed_pairs() const { return n_pairs_; }

private:
    PauliChannel() = default;
    Kind kind_ = Kind::iid;
    double p_[4] = {1, 0, 0, 0};
    std::vector<Component> components_;
    size_t n_pairs_ = 0;
};

// Sample an error pattern: an X error at pair j sets b_j, Z sets a_j, Y both.
BellPattern apply_channel(size_t n_pairs, const PauliChannel& ch, uint64_t seed);

// Eigenvalue of the symmetric operator M ⊗ M on the pattern: Z-type
// operators read the flip bits under their support, X-type the phase bits.
int measure_symmetric(const BellPattern& pat, const PauliOp& m);

// Pre-shared perfect EPR pairs (equivalently pre-shared secret pad bits).
struct AncillaPool {
    size_t remaining = 0;
};

struct BreedOutcome {
    int alice; // ±1, uniformly random
    int bob;   // ±1; alice * bob equals the operator eigenvalue
};

// Breeding measurement: consumes one ancilla pair, leaves the pattern
// untouched, and reveals the eigenvalue only through the outcome product.
BreedOutcome breed_measure(const BellPattern& pat, const PauliOp& m, AncillaPool& pool,
                           std::mt19937_64& rng);

// Probability that a sampled pattern has at most t_flip flip bits and at
// most t_phase phase bits. Exact: joint DP for iid channels, component sum
// for correlated mixtures.
double good_space_weight(const PauliChannel& ch, size_t n_pairs, size_t t_flip, size_t t_phase);

// Oracle route for iid channels: enumerate all 4^N patterns. N <= 12.
double good_space_weight_exhaustive(const PauliChannel& ch, size_t n_pairs, size_t t_flip,
                                    size_t t_phase);
// Same enumeration with the pattern loop parallelized; sums partial chunks
// in fixed order so the result is bit-identical to the serial route.
double good_space_weight_exhaustive_omp(const PauliChannel& ch, size_t n_pairs, size_t t_flip,
                                        size_t t_phase);

// An error-correcting map on Bell patterns together with the radius of the
// good space it is guaranteed to clean.
struct Corrector {
    size_t t_flip = 0;
    size_t t_phase = 0;
    std::function<BellPattern(const BellPattern&)> map;
};

// Zeroes every pattern inside the radius, leaves the rest untouched.
Corrector radius_corrector(size_t t_flip, size_t t_phase);

struct FidelityReport {
    double bound = 0;            // good-space weight
    double success_fraction = 0; // Monte-Carlo estimate
    double sigma = 0;            // binomial std error at the bound
    size_t trials = 0;
    bool satisfied = false;      // success_fraction >= bound - 3 sigma
};

// Monte-Carlo check of the fidelity lower bound: sampled patterns run
// through the corrector must reach the all-zero pattern at least as often
// as the good-space weight predicts (within 3 sigma).
FidelityReport fidelity_bound_check(const PauliChannel& ch, size_t n_pairs,
                                    const Corrector& corrector, size_t trials, uint64_t seed);

// Trial counting split out for the serial/parallel comparison; identical
// counts per (seed, trials) regardless of thread count.
size_t count_corrected_serial(const PauliChannel& ch, size_t n_pairs, const Corrector& corrector,
                              size_t trials, uint64_t seed);
size_t count_corrected_omp(const PauliChannel& ch, size_t n_pairs, const Corrector& corrector,
                           size_t trials, uint64_t seed);

} // namespace synforge
