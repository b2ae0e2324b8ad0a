#include "synforge/pauli.hpp"

#include <algorithm>
#include <numeric>

namespace synforge {

PauliOp::PauliOp(BitVec x, BitVec z) : x_mask(std::move(x)), z_mask(std::move(z)) {
    if (x_mask.size() != z_mask.size())
        throw DimensionError("PauliOp: x and z masks have different lengths");
}

PauliOp PauliOp::from_string(std::string_view s) {
    BitVec x(s.size()), z(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': break;
            case 'X': x.set(i, true); break;
            case 'Z': z.set(i, true); break;
            case 'Y': x.set(i, true); z.set(i, true); break;
            default:
                throw ValidationError("Pauli string may contain only I, X, Y, Z");
        }
    }
    return PauliOp(std::move(x), std::move(z));
}

std::string PauliOp::to_string() const {
    std::string s(size(), 'I');
    for (size_t i = 0; i < size(); ++i) {
        bool x = x_mask.get(i), z = z_mask.get(i);
        if (x && z)
            s[i] = 'Y';
        else if (x)
            s[i] = 'X';
        else if (z)
            s[i] = 'Z';
    }
    return s;
}

PauliOp PauliOp::z_with_support(const BitVec& mask) {
    return PauliOp(BitVec(mask.size()), mask);
}

PauliOp PauliOp::x_with_support(const BitVec& mask) {
    return PauliOp(mask, BitVec(mask.size()));
}

const char* css_type_name(CssType t) {
    switch (t) {
        case CssType::identity: return "identity";
        case CssType::x_type: return "X-type";
        case CssType::z_type: return "Z-type";
        case CssType::mixed: return "mixed";
    }
    return "?";
}

CssType css_type(const PauliOp& p) {
    bool has_x = !p.x_mask.is_zero();
    bool has_z = !p.z_mask.is_zero();
    if (has_x && has_z) return CssType::mixed;
    if (has_x) return CssType::x_type;
    if (has_z) return CssType::z_type;
    return CssType::identity;
}

bool commutes(const PauliOp& p, const PauliOp& q) {
    if (p.size() != q.size())
        throw DimensionError("commutes: operators act on different qubit counts");
    return !(masked_parity(p.x_mask, q.z_mask) ^ masked_parity(p.z_mask, q.x_mask));
}

CommutationReport analyze_set(const StabilizerSet& s) {
    CommutationReport rep;
    rep.types.reserve(s.ops.size());
    for (const auto& op : s.ops) {
        CssType t = css_type(op);
        rep.types.push_back(t);
        if (t == CssType::mixed) rep.all_css_like = false;
    }
    for (size_t i = 0; i < s.ops.size(); ++i)
        for (size_t j = i + 1; j < s.ops.size(); ++j)
            if (!commutes(s.ops[i], s.ops[j])) rep.anticommuting_pairs.emplace_back(i, j);
    return rep;
}

namespace {

// Anticommutation edges restricted to Z-candidate endpoints. For CSS-like
// sets edges only run between Z-type and X-type operators, so each edge's
// z-side index is well defined.
struct ConflictGraph {
    std::vector<size_t> z_candidates;               // indices of Z-type ops
    std::vector<std::pair<size_t, size_t>> edges;   // (z op index, x op index)
};

ConflictGraph build_conflicts(const StabilizerSet& s) {
    ConflictGraph g;
    std::vector<CssType> types;
    types.reserve(s.ops.size());
    for (size_t i = 0; i < s.ops.size(); ++i) {
        CssType t = css_type(s.ops[i]);
        if (t == CssType::mixed)
            throw ClassificationError("operator " + std::to_string(i) +
                                      " (" + s.ops[i].to_string() + ") is mixed; set is not CSS-like");
        types.push_back(t);
        if (t == CssType::z_type) g.z_candidates.push_back(i);
    }
    for (size_t i = 0; i < s.ops.size(); ++i) {
        if (types[i] != CssType::z_type) continue;
        const long m = static_cast<long>(s.ops.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (m > 256)
#endif
        for (long j = 0; j < m; ++j) {
            if (types[j] != CssType::x_type) continue;
            // Z vs X anticommute iff supports overlap in an odd number of sites.
            if (masked_parity(s.ops[i].z_mask, s.ops[static_cast<size_t>(j)].x_mask)) {
#ifdef _OPENMP
#pragma omp critical(conflict_edges)
#endif
                g.edges.emplace_back(i, static_cast<size_t>(j));
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool covers_all(const std::vector<std::pair<size_t, size_t>>& edges,
                const std::vector<bool>& removed_flag) {
    for (const auto& [zi, xj] : edges)
        if (!removed_flag[zi]) return false;
    return true;
}

} // namespace

NoncommutingSet find_noncommuting_set(const StabilizerSet& s) {
    ConflictGraph g = build_conflicts(s);
    NoncommutingSet out;
    if (g.edges.empty()) return out;

    const size_t n_ops = s.ops.size();
    const size_t nc = g.z_candidates.size();

    if (nc <= 20) {
        // Exact: enumerate candidate subsets in increasing cardinality and
        // return the first whose deletion clears every local conflict.
        for (size_t k = 1; k <= nc; ++k) {
            std::vector<size_t> comb(k);
            std::iota(comb.begin(), comb.end(), 0);
            for (;;) {
                std::vector<bool> removed(n_ops, false);
                for (size_t c : comb) removed[g.z_candidates[c]] = true;
                if (covers_all(g.edges, removed)) {
                    for (size_t c : comb) out.removed.push_back(g.z_candidates[c]);
                    return out;
                }
                // next combination
                size_t i = k;
                while (i > 0 && comb[i - 1] == nc - k + i - 1) --i;
                if (i == 0) break;
                ++comb[i - 1];
                for (size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
        out.feasible = false; // unreachable for CSS-like sets; kept for the contract
        return out;
    }

    // Greedy: delete the Z candidate with the most uncovered conflicts,
    // lowest index on ties.
    out.minimal_certified = false;
    std::vector<bool> removed(n_ops, false);
    for (;;) {
        std::vector<size_t> degree(n_ops, 0);
        bool any = false;
        for (const auto& [zi, xj] : g.edges) {
            if (!removed[zi]) {
                ++degree[zi];
                any = true;
            }
        }
        if (!any) break;
        size_t best = n_ops;
        for (size_t zi : g.z_candidates)
            if (!removed[zi] && degree[zi] > 0 && (best == n_ops || degree[zi] > degree[best]))
                best = zi;
        removed[best] = true;
        out.removed.push_back(best);
    }
    std::sort(out.removed.begin(), out.removed.end());
    return out;
}

} // namespace synforge
