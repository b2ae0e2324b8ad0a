#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synforge/bitvec.hpp"

namespace synforge {

// Pauli operator on n qubits in symplectic form: site j carries X when
// x_mask[j]=1, Z when z_mask[j]=1, Y when both. Operator phases are dropped;
// only commutation structure and parity eigenvalues are used downstream.
struct PauliOp {
    BitVec x_mask;
    BitVec z_mask;

    PauliOp() = default;
    PauliOp(BitVec x, BitVec z);

    size_t size() const { return x_mask.size(); }

    // Text form over {I,X,Y,Z}, e.g. "ZIZ".
    static PauliOp from_string(std::string_view s);
    std::string to_string() const;

    // Z-type / X-type operator with the given support mask.
    static PauliOp z_with_support(const BitVec& mask);
    static PauliOp x_with_support(const BitVec& mask);

    friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

enum class CssType { identity, x_type, z_type, mixed };

const char* css_type_name(CssType t);

CssType css_type(const PauliOp& p);

// True iff the symplectic inner product <p.x,q.z> + <p.z,q.x> vanishes mod 2.
bool commutes(const PauliOp& p, const PauliOp& q);

struct StabilizerSet {
    std::vector<PauliOp> ops;
};

// Per-operator CSS classification plus the local anticommutation graph.
// Operators here describe both sides of a symmetric measurement M ⊗ M, so
// the local commutation relation is the one-sided Pauli commutator.
struct CommutationReport {
    std::vector<CssType> types;
    std::vector<std::pair<size_t, size_t>> anticommuting_pairs; // i < j
    bool all_css_like = true; // no mixed operators
};

CommutationReport analyze_set(const StabilizerSet& s);

// A set R of Z-type operators whose deletion leaves every remaining pair
// locally commuting, with r = |R|.
struct NoncommutingSet {
    std::vector<size_t> removed;  // indices into s.ops, increasing
    bool feasible = true;         // false if no subset of Z-type ops works
    bool minimal_certified = true;// exact search ran; false for greedy fallback
    size_t r() const { return removed.size(); }
};

// Exact minimum-cardinality search when at most 20 Z-type candidates exist,
// greedy max-degree deletion (ties to the lowest index) beyond that.
// Requires every operator to be Z-type, X-type or identity.
NoncommutingSet find_noncommuting_set(const StabilizerSet& s);

} // namespace synforge
