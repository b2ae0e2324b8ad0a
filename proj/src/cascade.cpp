#include "synforge/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "synforge/rng.hpp"

namespace synforge {

size_t Transcript::events() const {
    std::set<int64_t> idx;
    size_t unencrypted = 0;
    for (const auto& e : entries) {
        if (e.encrypted)
            idx.insert(e.pad_index);
        else
            ++unencrypted;
    }
    return idx.size() + unencrypted / 2;
}

size_t leakage(const Transcript& t) {
    std::set<int64_t> idx;
    for (const auto& e : t.entries)
        if (e.encrypted) idx.insert(e.pad_index);
    return idx.size();
}

namespace {

size_t first_block_size(size_t n, double qber_estimate, const CascadeConfig& cfg) {
    if (cfg.k1_override) return std::min(cfg.k1_override, n);
    if (qber_estimate <= 0.0) return n;
    double k = std::ceil(cfg.block_factor / qber_estimate);
    if (k >= static_cast<double>(n)) return n;
    return std::max<size_t>(1, static_cast<size_t>(k));
}

BitVec mask_of(const std::vector<size_t>& idx, size_t n) {
    BitVec m(n);
    for (size_t i : idx) m.set(i, true);
    return m;
}

// Announces one parity pair: a single pad bit encrypts both sides, the two
// entries land in the transcript, and the relative parity (pads cancel in
// the public XOR) is returned.
bool announce_pair(Party& alice, Party& bob, const BitVec& mask, PadPool& pool, Transcript& t,
                   uint32_t& round_counter) {
    PadPool::Draw d = pool.take();
    bool ya = alice.encrypted_parity(mask, d.bit);
    bool yb = bob.encrypted_parity(mask, d.bit);
    t.entries.push_back({round_counter, Sender::alice, mask, ya, true,
                         static_cast<int64_t>(d.index)});
    t.entries.push_back({round_counter, Sender::bob, mask, yb, true,
                         static_cast<int64_t>(d.index)});
    ++round_counter;
    return ya ^ yb;
}

// Halving loop of BINARY; the block's relative parity is already known odd.
// The final announced mask is a singleton, the step that forces a
// single-position Z parity into the public transcript.
size_t binary_descend(Party& alice, Party& bob, std::vector<size_t> block, PadPool& pool,
                      Transcript& t, uint32_t& round_counter) {
    const size_t n = alice.key_length();
    while (block.size() > 1) {
        size_t half = (block.size() + 1) / 2;
        std::vector<size_t> first(block.begin(), block.begin() + half);
        bool odd = announce_pair(alice, bob, mask_of(first, n), pool, t, round_counter);
        if (odd)
            block = std::move(first);
        else
            block.assign(block.begin() + half, block.end());
    }
    return block[0];
}

} // namespace

size_t run_binary(Party& alice, Party& bob, const std::vector<size_t>& block, PadPool& pool,
                  Transcript& t, uint32_t& round_counter) {
    if (block.empty()) throw ProtocolError("run_binary: empty block");
    const size_t n = alice.key_length();
    bool odd = announce_pair(alice, bob, mask_of(block, n), pool, t, round_counter);
    if (!odd) throw ProtocolError("run_binary: block relative parity is even");
    return binary_descend(alice, bob, block, pool, t, round_counter);
}

size_t cascade_pad_budget(size_t n, double qber_estimate, const CascadeConfig& cfg) {
    size_t k1 = first_block_size(n, qber_estimate, cfg);
    size_t block_parities = 0;
    size_t k = k1;
    for (size_t p = 0; p < cfg.passes; ++p) {
        block_parities += (n + k - 1) / k;
        k = std::min(n, k * 2);
    }
    double expected_errors = std::ceil(cfg.error_headroom * qber_estimate * static_cast<double>(n));
    size_t per_error = static_cast<size_t>(std::ceil(std::log2(static_cast<double>(k1)))) + 3;
    return block_parities + static_cast<size_t>(expected_errors) * per_error;
}

CascadeResult run_cascade(const BitVec& alice_key, const BitVec& bob_key, double qber_estimate,
                          const CascadeConfig& cfg, PadPool& pool, uint64_t seed) {
    if (alice_key.size() != bob_key.size())
        throw DimensionError("run_cascade: key lengths differ");
    if (qber_estimate < 0.0 || qber_estimate >= 0.5)
        throw ValidationError("run_cascade: qber_estimate outside [0, 0.5)");

    const size_t n = alice_key.size();
    CascadeResult res;
    if (pool.remaining() < cascade_pad_budget(n, qber_estimate, cfg)) {
        res.aborted = true;
        res.abort_reason = "pad pool smaller than the cascade budget";
        res.corrected_bob_key = bob_key;
        return res;
    }

    Party alice(Sender::alice, alice_key);
    Party bob(Sender::bob, bob_key);
    uint32_t round = 0;

    // Blocks keep their announced relative parity up to date as corrections
    // land; any processed block that turns odd goes back on the FIFO queue.
    struct BlockRecord {
        std::vector<size_t> idx;
        BitVec mask;
        bool odd = false;
    };
    std::vector<BlockRecord> records;
    std::deque<size_t> queue;

    auto on_correction = [&](size_t i) {
        bob.flip(i);
        ++res.corrections;
        for (size_t r = 0; r < records.size(); ++r) {
            if (!records[r].mask.get(i)) continue;
            records[r].odd = !records[r].odd;
            if (records[r].odd) queue.push_back(r);
        }
    };

    auto drain_queue = [&]() {
        while (!queue.empty()) {
            size_t r = queue.front();
            queue.pop_front();
            if (!records[r].odd) continue; // toggled back while queued
            size_t i = binary_descend(alice, bob, records[r].idx, pool, res.transcript, round);
            on_correction(i);
        }
    };

    try {
        size_t k = first_block_size(n, qber_estimate, cfg);
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;

        for (size_t pass = 0; pass < cfg.passes; ++pass) {
            if (pass > 0) {
                std::mt19937_64 rng(derive_seed(seed, pass));
                fisher_yates(order, rng);
            }
            for (size_t begin = 0; begin < n; begin += k) {
                size_t end = std::min(begin + k, n);
                BlockRecord rec;
                rec.idx.assign(order.begin() + begin, order.begin() + end);
                rec.mask = mask_of(rec.idx, n);
                rec.odd = announce_pair(alice, bob, rec.mask, pool, res.transcript, round);
                records.push_back(std::move(rec));
                if (records.back().odd) {
                    size_t r = records.size() - 1;
                    size_t i = binary_descend(alice, bob, records[r].idx, pool, res.transcript, round);
                    on_correction(i);
                }
                drain_queue();
            }
            k = std::min(n, k * 2);
        }
    } catch (const ResourceExhausted& e) {
        res.aborted = true;
        res.abort_reason = e.what();
    }

    res.corrected_bob_key = bob.key();
    res.pad_consumed = leakage(res.transcript);
    return res;
}

bool verify_equal(Party& alice, Party& bob, size_t rounds, PadPool& pool, Transcript& t,
                  uint32_t& round_counter, uint64_t seed) {
    const size_t n = alice.key_length();
    std::mt19937_64 rng(seed);
    bool equal = true;
    for (size_t r = 0; r < rounds; ++r) {
        BitVec mask(n);
        auto w = mask.words();
        for (auto& word : w) word = rng();
        if (n % 64) w[w.size() - 1] &= (uint64_t(1) << (n % 64)) - 1;
        if (announce_pair(alice, bob, mask, pool, t, round_counter)) equal = false;
    }
    return equal;
}

bool verify_equal(const BitVec& alice_key, const BitVec& bob_key, size_t rounds, PadPool& pool,
                  uint64_t seed) {
    Party alice(Sender::alice, alice_key);
    Party bob(Sender::bob, bob_key);
    Transcript t;
    uint32_t round = 0;
    return verify_equal(alice, bob, rounds, pool, t, round, seed);
}

} // namespace synforge
