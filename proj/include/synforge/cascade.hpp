#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "synforge/bitvec.hpp"

namespace synforge {

// Pre-shared one-time pad. Each bit may be consumed at most once; the same
// drawn bit encrypts both parties' announcements of one parity, so the
// public XOR of the pair reveals the relative parity and nothing else.
class PadPool {
public:
    explicit PadPool(BitVec pad) : pad_(std::move(pad)) {}
    static PadPool random(size_t n_bits, uint64_t seed) {
        return PadPool(BitVec::random(n_bits, seed));
    }

    size_t size() const { return pad_.size(); }
    size_t cursor() const { return cursor_; }
    size_t remaining() const { return pad_.size() - cursor_; }

    struct Draw {
        bool bit;
        size_t index;
    };
    Draw take() {
        if (cursor_ >= pad_.size()) throw ResourceExhausted("one-time pad exhausted");
        Draw d{pad_.get(cursor_), cursor_};
        ++cursor_;
        return d;
    }

private:
    BitVec pad_;
    size_t cursor_ = 0;
};

enum class Sender { alice, bob };

inline const char* sender_name(Sender s) { return s == Sender::alice ? "A" : "B"; }

// One announcement by one party. The two entries of a parity comparison
// share round and pad_index.
struct TranscriptEntry {
    uint32_t round = 0;   // announcement-event sequence number
    Sender sender = Sender::alice;
    BitVec mask;          // positions whose parity is announced
    bool bit = false;     // announced (encrypted) parity
    bool encrypted = true;
    int64_t pad_index = -1;
};

struct Transcript {
    std::vector<TranscriptEntry> entries;

    size_t events() const;  // distinct announcement events
};

// Secret bits sacrificed: one per encrypted announcement event (the parties
// reuse the same pad bit for the two sides of a comparison).
size_t leakage(const Transcript& t);

// One side of the reconciliation session. Owns its key privately; everything
// the peer (or an eavesdropper) learns flows through encrypted_parity().
// Queries are strictly alternating request/response, so the in-process calls
// could be replaced by a socket-backed channel without touching the protocol.
class Party {
public:
    Party(Sender role, BitVec key) : role_(role), key_(std::move(key)) {}

    Sender role() const { return role_; }
    size_t key_length() const { return key_.size(); }

    bool encrypted_parity(const BitVec& mask, bool pad_bit) const {
        return masked_parity(key_, mask) ^ pad_bit;
    }
    void flip(size_t i) { key_.flip(i); }

    // Readout by the key's owner at the end of the session.
    const BitVec& key() const { return key_; }

private:
    Sender role_;
    BitVec key_;
};

struct CascadeConfig {
    size_t passes = 4;
    double block_factor = 0.73; // k1 = ceil(block_factor / qber_estimate)
    size_t k1_override = 0;     // 0 = heuristic
    double error_headroom = 1.5;
};

// Pad bits the pool must hold before a run starts: all block parities plus
// headroom * expected-errors BINARY descents.
size_t cascade_pad_budget(size_t n, double qber_estimate, const CascadeConfig& cfg);

struct CascadeResult {
    BitVec corrected_bob_key;
    Transcript transcript;
    size_t pad_consumed = 0;
    size_t corrections = 0;
    bool aborted = false;
    std::string abort_reason;
};

// Interactive reconciliation with every announced parity one-time-pad
// encrypted. Bob's key is corrected in place on his state machine; the
// returned transcript records every announcement of both parties.
CascadeResult run_cascade(const BitVec& alice_key, const BitVec& bob_key, double qber_estimate,
                          const CascadeConfig& cfg, PadPool& pool, uint64_t seed);

// Dichotomic error search on one block with odd relative parity. Announces
// the block parity first (throws ProtocolError if it comes out even), then
// ceil(log2 |block|) halving parities, and returns an index where the keys
// disagree. Entries are appended to t; round_counter advances per event.
size_t run_binary(Party& alice, Party& bob, const std::vector<size_t>& block, PadPool& pool,
                  Transcript& t, uint32_t& round_counter);

// rounds random-mask comparisons; equal keys always pass, unequal keys slip
// through with probability 2^-rounds. Announcements are encrypted and
// recorded like every other parity.
bool verify_equal(Party& alice, Party& bob, size_t rounds, PadPool& pool, Transcript& t,
                  uint32_t& round_counter, uint64_t seed);

// Convenience overload used by tests: fresh parties, local transcript.
bool verify_equal(const BitVec& alice_key, const BitVec& bob_key, size_t rounds, PadPool& pool,
                  uint64_t seed);

} // namespace synforge
