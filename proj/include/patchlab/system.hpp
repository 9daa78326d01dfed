#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "patchlab/gamma.hpp"

namespace patchlab {

// A factorization inverse system over a graph: Galois models Gamma_i at the
// vertices, Gamma_k at the edges, all mapping compatibly to Gamma_F. Fields
// shrink to the limit; Galois models grow, so all arrows point into Gamma_F.
struct FactorizationSystem {
    struct Triple {
        int left = 0, right = 0, edge = 0;
        GroupHom to_left;   // Gamma_k -> Gamma_{left}
        GroupHom to_right;  // Gamma_k -> Gamma_{right}
    };

    GroupPtr gamma_f;
    std::vector<GroupPtr> vertex_gamma;
    std::vector<GroupHom> vertex_to_f;  // Gamma_i -> Gamma_F
    std::vector<GroupPtr> edge_gamma;
    std::vector<Triple> triples;  // triples[k].edge == k
    bool limit_equalizer = false;
    // Whether the system was built from a subgroup lattice of gamma_f (the
    // structure maps are then inclusions). Arbitrary homomorphisms are
    // accepted; this records which kind a given system is.
    bool from_subgroup_lattice = false;
    std::string name;

    int vertices() const { return static_cast<int>(vertex_gamma.size()); }
    int edges() const { return static_cast<int>(edge_gamma.size()); }
    GroupHom edge_to_f(int k) const;  // composite along either leg
    bool is_tree() const;
};

// Validates triples, commuting squares and connectivity; computes the
// limit-equalizer flag (the images of the vertex maps generate Gamma_F).
FactorizationSystem make_system(GroupPtr gamma_f, std::vector<GroupPtr> vertex_gamma,
                                std::vector<GroupHom> vertex_to_f,
                                std::vector<GroupPtr> edge_gamma,
                                std::vector<FactorizationSystem::Triple> triples,
                                std::string name = {});

// Convenience form: all Galois models are subgroups of a master group and
// all maps are inclusions. edge_subgroups[k] must lie in both vertex
// subgroups of its triple.
FactorizationSystem subgroup_system(GroupPtr master,
                                    std::vector<std::vector<int>> vertex_subgroups,
                                    std::vector<std::vector<int>> edge_subgroups,
                                    std::vector<std::array<int, 3>> triples,  // (left, right, edge)
                                    std::string name = {});

// The elementwise equalizer check behind the flag: on each suite member,
// vertex-fixed tuples that agree on edges come from a unique global fixed
// point. The flag's generation criterion implies this for every suite.
bool verify_limit_equalizer(const FactorizationSystem& sys, const std::vector<GammaGroup>& suite);

// Restrictions of a Gamma_F-group along the structure maps, cached per use
// site. vertex(i) and edge(k) share the underlying group of `global`.
struct SystemRestrictions {
    GammaGroup global;
    std::vector<GammaGroup> vertex;
    std::vector<GammaGroup> edge;
};
SystemRestrictions restrict_over_system(const FactorizationSystem& sys, const GammaGroup& a);

// Exhaustive simultaneous factorization: a_k = a_{r_k}^-1 * a_{l_k} with
// a_i fixed by Gamma_i. Returns per-vertex witnesses or nullopt after the
// whole candidate space is covered.
struct FactorizationOutcome {
    std::optional<std::vector<int>> witness;
    long long candidates_examined = 0;
    long long candidate_space = 0;
};
FactorizationOutcome simultaneous_factorization(const FactorizationSystem& sys,
                                                const GammaGroup& a,
                                                const std::vector<int>& edge_elements);
// True when every edge tuple factors.
bool group_satisfies_factorization(const FactorizationSystem& sys, const GammaGroup& a);

}  // namespace patchlab
