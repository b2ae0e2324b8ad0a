#include "synforge/bellsim.hpp"

#include <cmath>

#include "synforge/rng.hpp"

namespace synforge {

namespace {
constexpr double kProbTol = 1e-12;
}

BellPattern::BellPattern(BitVec a_, BitVec b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size())
        throw DimensionError("BellPattern: phase and flip strings have different lengths");
}

PauliChannel PauliChannel::iid(double p_i, double p_x, double p_y, double p_z) {
    for (double p : {p_i, p_x, p_y, p_z})
        if (p < 0.0 || p > 1.0) throw ValidationError("channel probability outside [0,1]");
    if (std::abs(p_i + p_x + p_y + p_z - 1.0) > kProbTol)
        throw ValidationError("channel probabilities do not sum to 1");
    PauliChannel ch;
    ch.kind_ = Kind::iid;
    ch.p_[0] = p_i;
    ch.p_[1] = p_x;
    ch.p_[2] = p_y;
    ch.p_[3] = p_z;
    return ch;
}

PauliChannel PauliChannel::depolarizing(double q) {
    return iid(1.0 - q, q / 3.0, q / 3.0, q / 3.0);
}

PauliChannel PauliChannel::for_qber(double qber) {
    // flip rate = p_x + p_y = qber, phase rate = p_z + p_y = qber
    return iid(1.0 - 1.5 * qber, qber / 2.0, qber / 2.0, qber / 2.0);
}

PauliChannel PauliChannel::correlated(std::vector<Component> components, size_t n_pairs) {
    if (components.empty()) throw ValidationError("correlated channel needs at least one component");
    double sum = 0.0;
    for (const auto& c : components) {
        if (c.prob < 0.0 || c.prob > 1.0) throw ValidationError("component probability outside [0,1]");
        if (c.op.size() != n_pairs)
            throw DimensionError("component operator does not act on the declared pair count");
        sum += c.prob;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw ValidationError("component probabilities do not sum to 1");
    PauliChannel ch;
    ch.kind_ = Kind::correlated;
    ch.components_ = std::move(components);
    ch.n_pairs_ = n_pairs;
    return ch;
}

BellPattern apply_channel(size_t n_pairs, const PauliChannel& ch, uint64_t seed) {
    std::mt19937_64 rng(seed);
    BellPattern pat(n_pairs);
    if (ch.kind() == PauliChannel::Kind::correlated) {
        if (ch.fixed_pairs() != n_pairs)
            throw DimensionError("correlated channel is fixed to a different pair count");
        double u = rand_double01(rng);
        double acc = 0.0;
        const auto& comps = ch.components();
        size_t pick = comps.size() - 1;
        for (size_t i = 0; i < comps.size(); ++i) {
            acc += comps[i].prob;
            if (u < acc) {
                pick = i;
                break;
            }
        }
        pat.b ^= comps[pick].op.x_mask;
        pat.a ^= comps[pick].op.z_mask;
        return pat;
    }
    const double px = ch.p_x(), py = ch.p_y(), pz = ch.p_z();
    for (size_t j = 0; j < n_pairs; ++j) {
        double u = rand_double01(rng);
        if (u < px) {
            pat.b.set(j, true);
        } else if (u < px + py) {
            pat.b.set(j, true);
            pat.a.set(j, true);
        } else if (u < px + py + pz) {
            pat.a.set(j, true);
        }
    }
    return pat;
}

int measure_symmetric(const BellPattern& pat, const PauliOp& m) {
    if (m.size() != pat.pairs())
        throw DimensionError("measure_symmetric: operator and pattern sizes differ");
    switch (css_type(m)) {
        case CssType::z_type:
            return masked_parity(pat.b, m.z_mask) ? -1 : +1;
        case CssType::x_type:
            return masked_parity(pat.a, m.x_mask) ? -1 : +1;
        case CssType::identity:
            return +1;
        case CssType::mixed:
            break;
    }
    throw ClassificationError("measure_symmetric: mixed operator " + m.to_string() +
                              " is not supported");
}

BreedOutcome breed_measure(const BellPattern& pat, const PauliOp& m, AncillaPool& pool,
                           std::mt19937_64& rng) {
    int eigen = measure_symmetric(pat, m); // validates the operator first
    if (pool.remaining == 0)
        throw ResourceExhausted("breed_measure: ancilla pool is empty");
    --pool.remaining;
    BreedOutcome out;
    out.alice = rand_bit(rng) ? +1 : -1;
    out.bob = out.alice * eigen;
    return out;
}

namespace {

// Joint DP over (flip count, phase count), saturating above the thresholds.
double good_space_weight_iid(const PauliChannel& ch, size_t n, size_t t_flip, size_t t_phase) {
    const size_t fb = std::min(t_flip, n) + 2;  // saturating buckets
    const size_t pb = std::min(t_phase, n) + 2;
    std::vector<double> dp(fb * pb, 0.0), next(fb * pb, 0.0);
    dp[0] = 1.0;
    auto at = [pb](std::vector<double>& v, size_t f, size_t p) -> double& {
        return v[f * pb + p];
    };
    const double pi = ch.p_i(), px = ch.p_x(), py = ch.p_y(), pz = ch.p_z();
    for (size_t j = 0; j < n; ++j) {
        std::fill(next.begin(), next.end(), 0.0);
        for (size_t f = 0; f < fb; ++f) {
            for (size_t p = 0; p < pb; ++p) {
                double w = at(dp, f, p);
                if (w == 0.0) continue;
                size_t f1 = std::min(f + 1, fb - 1);
                size_t p1 = std::min(p + 1, pb - 1);
                at(next, f, p) += w * pi;
                at(next, f1, p) += w * px;
                at(next, f, p1) += w * pz;
                at(next, f1, p1) += w * py;
            }
        }
        dp.swap(next);
    }
    double total = 0.0;
    for (size_t f = 0; f < fb - 1 && f <= t_flip; ++f)
        for (size_t p = 0; p < pb - 1 && p <= t_phase; ++p) total += at(dp, f, p);
    return total;
}

// Probability and (flip, phase) increments of pair label d in {0:I,1:X,2:Z,3:Y}.
inline double digit_prob(const PauliChannel& ch, unsigned d) {
    switch (d) {
        case 0: return ch.p_i();
        case 1: return ch.p_x();
        case 2: return ch.p_z();
        default: return ch.p_y();
    }
}

double exhaustive_chunk(const PauliChannel& ch, size_t n, size_t t_flip, size_t t_phase,
                        uint64_t begin, uint64_t end) {
    double sum = 0.0;
    for (uint64_t pat = begin; pat < end; ++pat) {
        double prob = 1.0;
        size_t flips = 0, phases = 0;
        uint64_t v = pat;
        for (size_t j = 0; j < n; ++j, v >>= 2) {
            unsigned d = v & 3;
            prob *= digit_prob(ch, d);
            flips += (d == 1 || d == 3);
            phases += (d == 2 || d == 3);
        }
        if (flips <= t_flip && phases <= t_phase) sum += prob;
    }
    return sum;
}

constexpr uint64_t kChunk = 1 << 14;

} // namespace

double good_space_weight(const PauliChannel& ch, size_t n_pairs, size_t t_flip, size_t t_phase) {
    if (ch.kind() == PauliChannel::Kind::correlated) {
        if (ch.fixed_pairs() != n_pairs)
            throw DimensionError("correlated channel is fixed to a different pair count");
        // Each mixture component is a fixed Pauli mask, so the good-space
        // weight is the exact sum of component probabilities whose pattern
        // lies inside the radius.
        double total = 0.0;
        for (const auto& c : ch.components())
            if (c.op.x_mask.weight() <= t_flip && c.op.z_mask.weight() <= t_phase)
                total += c.prob;
        return total;
    }
    return good_space_weight_iid(ch, n_pairs, t_flip, t_phase);
}

double good_space_weight_exhaustive(const PauliChannel& ch, size_t n_pairs, size_t t_flip,
                                    size_t t_phase) {
    if (ch.kind() != PauliChannel::Kind::iid)
        throw ValidationError("exhaustive enumeration expects an iid channel");
    if (n_pairs > 12) throw ValidationError("exhaustive enumeration supports at most 12 pairs");
    const uint64_t total = uint64_t(1) << (2 * n_pairs);
    double sum = 0.0;
    for (uint64_t begin = 0; begin < total; begin += kChunk)
        sum += exhaustive_chunk(ch, n_pairs, t_flip, t_phase, begin, std::min(begin + kChunk, total));
    return sum;
}

double good_space_weight_exhaustive_omp(const PauliChannel& ch, size_t n_pairs, size_t t_flip,
                                        size_t t_phase) {
    if (ch.kind() != PauliChannel::Kind::iid)
        throw ValidationError("exhaustive enumeration expects an iid channel");
    if (n_pairs > 12) throw ValidationError("exhaustive enumeration supports at most 12 pairs");
    const uint64_t total = uint64_t(1) << (2 * n_pairs);
    const long n_chunks = static_cast<long>((total + kChunk - 1) / kChunk);
    std::vector<double> partial(n_chunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < n_chunks; ++c) {
        uint64_t begin = static_cast<uint64_t>(c) * kChunk;
        partial[c] = exhaustive_chunk(ch, n_pairs, t_flip, t_phase, begin,
                                      std::min(begin + kChunk, total));
    }
    // Combine in chunk order so the result matches the serial route bit for bit.
    double sum = 0.0;
    for (double p : partial) sum += p;
    return sum;
}

Corrector radius_corrector(size_t t_flip, size_t t_phase) {
    Corrector c;
    c.t_flip = t_flip;
    c.t_phase = t_phase;
    c.map = [t_flip, t_phase](const BellPattern& pat) {
        if (pat.b.weight() <= t_flip && pat.a.weight() <= t_phase) return BellPattern(pat.pairs());
        return pat;
    };
    return c;
}

size_t count_corrected_serial(const PauliChannel& ch, size_t n_pairs, const Corrector& corrector,
                              size_t trials, uint64_t seed) {
    size_t ok = 0;
    for (size_t t = 0; t < trials; ++t) {
        BellPattern pat = apply_channel(n_pairs, ch, derive_seed(seed, t));
        if (corrector.map(pat).is_perfect()) ++ok;
    }
    return ok;
}

size_t count_corrected_omp(const PauliChannel& ch, size_t n_pairs, const Corrector& corrector,
                           size_t trials, uint64_t seed) {
    long n = static_cast<long>(trials);
    long ok = 0;
#pragma omp parallel for schedule(static) reduction(+ : ok)
    for (long t = 0; t < n; ++t) {
        BellPattern pat = apply_channel(n_pairs, ch, derive_seed(seed, static_cast<uint64_t>(t)));
        if (corrector.map(pat).is_perfect()) ++ok;
    }
    return static_cast<size_t>(ok);
}

FidelityReport fidelity_bound_check(const PauliChannel& ch, size_t n_pairs,
                                    const Corrector& corrector, size_t trials, uint64_t seed) {
    FidelityReport rep;
    rep.trials = trials;
    rep.bound = good_space_weight(ch, n_pairs, corrector.t_flip, corrector.t_phase);
    size_t ok = count_corrected_omp(ch, n_pairs, corrector, trials, seed);
    rep.success_fraction = trials ? static_cast<double>(ok) / static_cast<double>(trials) : 1.0;
    rep.sigma = trials ? std::sqrt(rep.bound * (1.0 - rep.bound) / static_cast<double>(trials)) : 0.0;
    rep.satisfied = rep.success_fraction >= rep.bound - 3.0 * rep.sigma;
    return rep;
}

} // namespace synforge
