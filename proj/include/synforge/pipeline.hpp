#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synforge/bellsim.hpp"
#include "synforge/bitmatrix.hpp"
#include "synforge/cascade.hpp"

namespace synforge {

struct SessionConfig {
    size_t signals = 20000;       // M transmitted pairs
    size_t test_sample = 1000;    // m sampled per basis
    PauliChannel channel = PauliChannel::iid(1, 0, 0, 0);
    double max_pz = 0.11;         // abort threshold, Z-basis rate
    double max_px = 0.11;         // abort threshold, X-basis rate
    double sample_delta = 1e-6;   // Hoeffding failure probability
    CascadeConfig cascade;
    size_t pa_safety_margin = 32; // extra parities on top of n*H2(px+eps)
    size_t verify_rounds = 50;
    uint64_t seed = 1;

    void validate() const;
};

// Corollary-of-the-protocol bookkeeping: raw block length n, encrypted
// parities s, privacy-amplification parities t; the session nets
// n - t output bits minus the s secret bits it burned.
struct KeyLedger {
    size_t n = 0;
    size_t s = 0;
    size_t t = 0;
    long long gross = 0; // n - t
    long long net = 0;   // n - t - s
};

struct RunReport {
    double p_hat_z = -1.0;
    double p_hat_x = -1.0;
    double sample_epsilon = 0.0;
    bool aborted = false;
    std::string abort_stage; // sampling | reconciliation | verification
    bool residual_error = false;
    bool keys_equal = false;
    KeyLedger ledger;
    uint64_t transcript_digest = 0;
    size_t pad_pool_size = 0;
    size_t pad_consumed = 0; // includes pad bits sunk by an aborted stage
    bool footnote_check = false; // net matches the coset-rate recomputation
    size_t sifted = 0;
    size_t tested = 0;
    size_t discarded = 0; // basis mismatches
};

// Everything a session produces. Final keys stay in memory; reports and
// transcripts are what gets serialized.
struct SessionOutcome {
    RunReport report;
    Transcript transcript;
    BitVec alice_final;
    BitVec bob_final;
    BitMatrix pa_matrix;
};

struct Transmission {
    BitVec alice_bits;  // length M
    BitVec alice_bases; // 0 = Z, 1 = X
    BitVec bob_bits;
    BitVec bob_bases;
    BellPattern pattern; // true error pattern, for diagnostics
    std::vector<size_t> sifted_positions;
};

// BB84 transmission in the Bell-pattern picture: when bases match, Bob's
// sifted bit differs from Alice's by the flip bit (Z basis) or the phase
// bit (X basis) of the pair.
Transmission simulate_transmission(const SessionConfig& cfg);

struct SampleEstimate {
    double p_hat_z = 0.0;
    double p_hat_x = 0.0;
    double epsilon = 0.0;   // one-sided Hoeffding deviation for m and delta
    bool abort = false;
    std::string diagnostic;
    std::vector<size_t> tested_positions; // removed from the key
};

// Disjoint random samples of test_sample positions per basis; aborts when
// an observed rate plus the sampling deviation crosses its threshold.
SampleEstimate estimate_and_test(const Transmission& tx, const SessionConfig& cfg);

double hoeffding_epsilon(size_t m, double delta);

// final = G key with G = random_full_rank(n - t, n, seed); G is published.
BitVec privacy_amplify(const BitVec& key, size_t t, uint64_t seed, BitMatrix* published = nullptr);

// Full pipeline: transmission, sifting, sampling test, encrypted Cascade,
// verification, privacy amplification, ledger.
SessionOutcome run_session(const SessionConfig& cfg);

// FNV-1a over the canonical transcript serialization.
uint64_t transcript_digest(const Transcript& t);

struct SweepRow {
    double qber = 0.0;
    size_t n = 0, s = 0, t = 0;
    long long gross = 0, net = 0;
    bool aborted = false;
    bool keys_equal = false;
    uint64_t seed = 0;
};

// One session per (qber, seed) grid point; rows come back sorted by
// (qber, seed) regardless of how the loop was scheduled.
std::vector<SweepRow> run_sweep(const SessionConfig& base, const std::vector<double>& qber_grid,
                                size_t seeds, bool parallel = true);

} // namespace synforge
