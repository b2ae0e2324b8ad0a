#include "synforge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "synforge/csscode.hpp"
#include "synforge/rng.hpp"

namespace synforge {

void SessionConfig::validate() const {
    if (signals == 0) throw ValidationError("signals must be positive");
    if (2 * test_sample >= signals)
        throw ValidationError("2*test_sample must be smaller than signals");
    if (max_pz <= 0.0 || max_pz >= 0.5 || max_px <= 0.0 || max_px >= 0.5)
        throw ValidationError("abort thresholds must lie in (0, 0.5)");
    if (sample_delta <= 0.0 || sample_delta >= 1.0)
        throw ValidationError("sample_delta must lie in (0, 1)");
}

Transmission simulate_transmission(const SessionConfig& cfg) {
    cfg.validate();
    const size_t m = cfg.signals;
    Transmission tx;
    tx.alice_bits = BitVec::random(m, derive_seed(cfg.seed, 101));
    tx.alice_bases = BitVec::random(m, derive_seed(cfg.seed, 102));
    tx.bob_bases = BitVec::random(m, derive_seed(cfg.seed, 103));
    tx.pattern = apply_channel(m, cfg.channel, derive_seed(cfg.seed, 104));
    tx.bob_bits = tx.alice_bits;
    for (size_t j = 0; j < m; ++j) {
        if (tx.alice_bases.get(j) != tx.bob_bases.get(j)) continue;
        bool err = tx.alice_bases.get(j) ? tx.pattern.a.get(j)  // X basis: phase bit
                                         : tx.pattern.b.get(j); // Z basis: flip bit
        if (err) tx.bob_bits.flip(j);
        tx.sifted_positions.push_back(j);
    }
    return tx;
}

double hoeffding_epsilon(size_t m, double delta) {
    return std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(m)));
}

SampleEstimate estimate_and_test(const Transmission& tx, const SessionConfig& cfg) {
    SampleEstimate est;
    est.epsilon = hoeffding_epsilon(cfg.test_sample, cfg.sample_delta);

    std::vector<size_t> z_sifted, x_sifted;
    for (size_t j : tx.sifted_positions)
        (tx.alice_bases.get(j) ? x_sifted : z_sifted).push_back(j);

    if (z_sifted.size() < cfg.test_sample || x_sifted.size() < cfg.test_sample) {
        est.abort = true;
        est.diagnostic = "insufficient sifted data for the test samples";
        return est;
    }

    std::mt19937_64 rng(derive_seed(cfg.seed, 105));
    auto sample = [&](const std::vector<size_t>& from) {
        std::vector<size_t> picked;
        for (size_t k : sample_without_replacement(from.size(), cfg.test_sample, rng))
            picked.push_back(from[k]);
        return picked;
    };
    std::vector<size_t> z_test = sample(z_sifted);
    std::vector<size_t> x_test = sample(x_sifted);

    auto rate = [&](const std::vector<size_t>& positions) {
        size_t errs = 0;
        for (size_t j : positions)
            if (tx.alice_bits.get(j) != tx.bob_bits.get(j)) ++errs;
        return static_cast<double>(errs) / static_cast<double>(positions.size());
    };
    est.p_hat_z = rate(z_test);
    est.p_hat_x = rate(x_test);

    if (est.p_hat_z + est.epsilon > cfg.max_pz || est.p_hat_x + est.epsilon > cfg.max_px) {
        est.abort = true;
        est.diagnostic = "estimated error rate too high";
    }
    est.tested_positions = std::move(z_test);
    est.tested_positions.insert(est.tested_positions.end(), x_test.begin(), x_test.end());
    std::sort(est.tested_positions.begin(), est.tested_positions.end());
    return est;
}

BitVec privacy_amplify(const BitVec& key, size_t t, uint64_t seed, BitMatrix* published) {
    if (t >= key.size()) {
        if (published) *published = BitMatrix(0, key.size());
        return BitVec(); // empty key; caller flags it
    }
    BitMatrix g = BitMatrix::random_full_rank(key.size() - t, key.size(), seed);
    BitVec final_key = g.mul_omp(key);
    if (published) *published = std::move(g);
    return final_key;
}

uint64_t transcript_digest(const Transcript& t) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    };
    for (const auto& e : t.entries) {
        for (char c : std::to_string(e.round)) mix(c);
        mix(*sender_name(e.sender));
        for (char c : e.mask.to_string()) mix(c);
        mix(e.bit ? '1' : '0');
        mix(e.encrypted ? 'e' : 'p');
        for (char c : std::to_string(e.pad_index)) mix(c);
        mix('\n');
    }
    return h;
}

SessionOutcome run_session(const SessionConfig& cfg) {
    cfg.validate();
    SessionOutcome out;
    RunReport& rep = out.report;

    Transmission tx = simulate_transmission(cfg);
    rep.sifted = tx.sifted_positions.size();
    rep.discarded = cfg.signals - rep.sifted;

    SampleEstimate est = estimate_and_test(tx, cfg);
    rep.p_hat_z = est.p_hat_z;
    rep.p_hat_x = est.p_hat_x;
    rep.sample_epsilon = est.epsilon;
    rep.tested = est.tested_positions.size();
    if (est.abort) {
        rep.aborted = true;
        rep.abort_stage = "sampling";
        return out;
    }

    // Reconciled block: sifted positions not consumed by the test.
    std::vector<size_t> key_positions;
    {
        std::set<size_t> tested(est.tested_positions.begin(), est.tested_positions.end());
        for (size_t j : tx.sifted_positions)
            if (!tested.count(j)) key_positions.push_back(j);
    }
    const size_t n = key_positions.size();
    BitVec alice_key(n), bob_key(n);
    size_t z_count = 0;
    for (size_t i = 0; i < n; ++i) {
        alice_key.set(i, tx.alice_bits.get(key_positions[i]));
        bob_key.set(i, tx.bob_bits.get(key_positions[i]));
        if (!tx.alice_bases.get(key_positions[i])) ++z_count;
    }
    rep.ledger.n = n;

    // Bit-disagreement estimate for the key block: basis-weighted mix of the
    // two sampled rates, floored so block sizing stays finite.
    double mix = n ? (est.p_hat_z * static_cast<double>(z_count) +
                      est.p_hat_x * static_cast<double>(n - z_count)) /
                         static_cast<double>(n)
                   : 0.0;
    double qber_est = std::max(mix, n ? 1.0 / static_cast<double>(n) : 0.0);

    size_t pool_size = cascade_pad_budget(n, qber_est, cfg.cascade) + cfg.verify_rounds;
    PadPool pool = PadPool::random(pool_size, derive_seed(cfg.seed, 106));
    rep.pad_pool_size = pool_size;

    CascadeResult cas =
        run_cascade(alice_key, bob_key, qber_est, cfg.cascade, pool, derive_seed(cfg.seed, 107));
    out.transcript = std::move(cas.transcript);
    if (cas.aborted) {
        rep.aborted = true;
        rep.abort_stage = "reconciliation";
        rep.pad_consumed = pool.cursor(); // sunk cost of the aborted session
        rep.transcript_digest = transcript_digest(out.transcript);
        return out;
    }
    bob_key = cas.corrected_bob_key;

    Party alice(Sender::alice, alice_key);
    Party bob(Sender::bob, bob_key);
    uint32_t round = out.transcript.entries.empty()
                         ? 0
                         : out.transcript.entries.back().round + 1;
    bool equal = verify_equal(alice, bob, cfg.verify_rounds, pool, out.transcript, round,
                              derive_seed(cfg.seed, 108));
    rep.keys_equal = equal;
    rep.pad_consumed = pool.cursor();
    rep.transcript_digest = transcript_digest(out.transcript);
    rep.ledger.s = leakage(out.transcript);
    if (!equal) {
        rep.aborted = true;
        rep.abort_stage = "verification";
        rep.residual_error = true;
        return out;
    }

    // Privacy amplification sized from the X-basis (phase) estimate.
    double px = std::min(0.5, est.p_hat_x + est.epsilon);
    size_t t = static_cast<size_t>(
                   std::ceil(static_cast<double>(n) * binary_entropy(px))) +
               cfg.pa_safety_margin;
    rep.ledger.t = t;
    out.alice_final = privacy_amplify(alice_key, t, derive_seed(cfg.seed, 109), &out.pa_matrix);
    out.bob_final = privacy_amplify(bob_key, t, derive_seed(cfg.seed, 109));

    rep.ledger.gross = static_cast<long long>(n) - static_cast<long long>(t);
    rep.ledger.net = rep.ledger.gross - static_cast<long long>(rep.ledger.s);

    // Footnote consistency: recompute the net rate the coset way, with s
    // taken from the transcript and t from the published matrix shape.
    long long coset_net = static_cast<long long>(n) -
                          static_cast<long long>(leakage(out.transcript)) -
                          (static_cast<long long>(n) - static_cast<long long>(out.pa_matrix.rows()));
    rep.footnote_check = (coset_net == rep.ledger.net);
    return out;
}

std::vector<SweepRow> run_sweep(const SessionConfig& base, const std::vector<double>& qber_grid,
                                size_t seeds, bool parallel) {
    if (qber_grid.empty()) throw ValidationError("sweep grid is empty");
    for (double q : qber_grid)
        if (q <= 0.0 || q >= 0.5) throw ValidationError("sweep qber outside (0, 0.5)");
    const long total = static_cast<long>(qber_grid.size() * seeds);
    std::vector<SweepRow> rows(total);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < total; ++i) {
        size_t gi = static_cast<size_t>(i) / seeds;
        uint64_t seed = static_cast<uint64_t>(i) % seeds + 1;
        SessionConfig cfg = base;
        cfg.channel = PauliChannel::for_qber(qber_grid[gi]);
        cfg.seed = seed;
        SessionOutcome s = run_session(cfg);
        SweepRow& r = rows[i];
        r.qber = qber_grid[gi];
        r.seed = seed;
        r.n = s.report.ledger.n;
        r.s = s.report.ledger.s;
        r.t = s.report.ledger.t;
        r.gross = s.report.ledger.gross;
        r.net = s.report.ledger.net;
        r.aborted = s.report.aborted;
        r.keys_equal = s.report.keys_equal;
    }
    return rows;
}

} // namespace synforge
