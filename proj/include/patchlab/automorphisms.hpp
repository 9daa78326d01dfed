#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "patchlab/group.hpp"

namespace patchlab {

// The full automorphism group of a finite group, each automorphism stored
// as a permutation table of the base group's elements. Automorphisms are
// ordered lexicographically by table, so indices are canonical.
struct AutomorphismGroup {
    GroupPtr base;
    std::vector<std::vector<int>> autos;
    std::vector<std::optional<int>> inner_witness;  // minimal g with auto = conj by g
    FiniteGroup group;                              // abstract group, mul = composition
    int identity_index = 0;

    int size() const { return static_cast<int>(autos.size()); }
    int apply(int auto_idx, int x) const { return autos[auto_idx][x]; }
    // Index of f followed after g: (autos[f] o autos[g]).
    int compose_idx(int f, int g) const { return group.op(f, g); }
    int inverse_idx(int f) const { return group.inv[f]; }
    int index_of(const std::vector<int>& table) const;  // -1 if absent
    bool is_inner(int auto_idx) const { return inner_witness[auto_idx].has_value(); }
    int inner_of(int g) const;  // index of conjugation by g
    GroupPtr group_ptr() const { return group_ptr_; }
    GroupPtr group_ptr_;
};

using AutGroupPtr = std::shared_ptr<const AutomorphismGroup>;

// Exhaustive search over generator images restricted to elements of equal
// order. Throws ResourceLimit if base order exceeds max_order.
AutGroupPtr automorphism_group(GroupPtr g, int max_order = 256);

// Outer automorphism group Out = Aut/Inn with the projection by index.
struct OuterQuotient {
    AutGroupPtr aut;
    FiniteGroup out;
    std::vector<int> proj;  // auto index -> out element
    GroupPtr out_ptr;
};
OuterQuotient outer_quotient(AutGroupPtr aut);

// Completeness: trivial center and no outer automorphism.
struct CompletenessCertificate {
    // Exactly one of these is set.
    std::optional<GroupHom> int_isomorphism;   // complete: Int as iso G -> Aut(G)
    std::optional<int> central_element;        // a nontrivial central element
    std::optional<int> outer_automorphism;     // index of a non-inner automorphism
};

struct CompletenessResult {
    bool complete = false;
    CompletenessCertificate certificate;
};

CompletenessResult is_complete(GroupPtr g, int max_order = 256);

}  // namespace patchlab
