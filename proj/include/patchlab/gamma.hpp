#pragma once

#include <map>
#include <vector>

#include "patchlab/automorphisms.hpp"
#include "patchlab/group.hpp"

namespace patchlab {

// A finite group G with an action of a Galois-model group Gamma by
// automorphisms. This is the finite stand-in for "algebraic group over a
// field": the field appears only through its Galois group.
struct GammaGroup {
    GroupPtr gamma;
    GroupPtr g;
    AutGroupPtr auts;        // automorphism group of g
    std::vector<int> act;    // per gamma element: index into auts->autos

    int apply(int sigma, int x) const { return auts->autos[act[sigma]][x]; }
    int acting_auto(int sigma) const { return act[sigma]; }
    // Gamma acting on Aut(g) by conjugation with the structure action:
    // ^sigma(phi) = act(sigma) o phi o act(sigma)^-1.
    int apply_on_aut(int sigma, int auto_idx) const;
    bool trivial_action() const;
};

// Validates that act is a homomorphism Gamma -> Aut(g); throws
// ValidationError("NotAHomomorphism") with a witness pair (sigma, tau).
GammaGroup make_gamma_group(GroupPtr gamma, GroupPtr g, std::vector<int> auto_indices);
GammaGroup make_gamma_group_trivial(GroupPtr gamma, GroupPtr g);
// Convenience: action given on a generating set of gamma as automorphism
// tables of g; extended multiplicatively, rejected if inconsistent.
GammaGroup make_gamma_group_on_generators(GroupPtr gamma, GroupPtr g,
                                          const std::map<int, std::vector<int>>& images);

Subgroup fixed_points(const GammaGroup& a);

// Pullback of the action along f: Gamma' -> Gamma (f.dst must be a.gamma).
GammaGroup restrict_action(const GammaGroup& a, const GroupHom& f);

// Aut(g) as a GammaGroup over the same Gamma, action by conjugation.
GammaGroup aut_gamma_group(const GammaGroup& a);

struct EquivariantHom {
    GammaGroup src;
    GammaGroup dst;  // same gamma
    GroupHom hom;
};

EquivariantHom make_equivariant_hom(GammaGroup src, GammaGroup dst, GroupHom hom);

}  // namespace patchlab
