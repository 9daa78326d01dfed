#pragma once

#include <string>
#include <vector>

#include "patchlab/patching.hpp"
#include "patchlab/system.hpp"

namespace patchlab {

// Named groups: all isomorphism types of order <= 12 plus a few larger
// standbys, addressable by name.
struct NamedGroup {
    std::string name;
    FiniteGroup group;
};
const std::vector<NamedGroup>& group_catalog();
GroupPtr catalog_group(const std::string& name);

// All homomorphisms Gamma -> Aut(G) up to Aut(G)-conjugacy, as GammaGroups.
std::vector<GammaGroup> action_catalog(GroupPtr gamma, GroupPtr g);

struct CatalogPair {
    std::string name;  // e.g. "S3|C2#1"
    GammaGroup a;
};
// Every (G, Gamma, action) with |G| <= max_g, |Gamma| <= max_gamma.
std::vector<CatalogPair> gamma_catalog(int max_g, int max_gamma);

// Named factorization systems over small master groups: one-edge trees,
// two-edge paths, a three-leaf star and a triangle.
const std::vector<std::string>& system_catalog_names();
FactorizationSystem catalog_system(const std::string& name);

// Instances for the conditional-theorem suite.
struct SuiteInstance {
    std::string theorem;  // finite | factor2 | patching-coho
    std::string system;
    std::string group;    // catalog group name (the carrier, trivial action)
    std::vector<int> kappa;  // for patching-coho: the band map
};
std::vector<SuiteInstance> suite_family(const std::string& name);
const std::vector<std::string>& suite_family_names();

}  // namespace patchlab
