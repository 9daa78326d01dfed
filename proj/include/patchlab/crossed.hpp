#pragma once

#include <string>
#include <vector>

#include "patchlab/gamma.hpp"

namespace patchlab {

// A crossed module rho: G -> H of Gamma-groups with a left H-action on G,
// subject to the Peiffer identity, equivariance of rho, and compatibility
// of the Gamma-actions.
struct CrossedModule {
    GammaGroup g;  // source
    GammaGroup h;  // target, same gamma
    std::vector<int> rho;    // g element -> h element
    std::vector<int> hact;   // hact[h*|G| + g]: left action of H on G

    int apply_rho(int x) const { return rho[x]; }
    int apply_h(int hh, int x) const { return hact[hh * g.g->order + x]; }
};

struct AxiomCheck {
    std::string axiom;
    bool holds = false;
    std::vector<int> witness;  // empty when the axiom holds
};

struct CrossedModuleReport {
    std::vector<AxiomCheck> checks;
    bool valid = false;
};

// Builds without validating; pair with check_crossed_module.
CrossedModule assemble_crossed_module(GammaGroup g, GammaGroup h, std::vector<int> rho,
                                      std::vector<int> hact);
CrossedModuleReport check_crossed_module(const CrossedModule& cm);
// Validating constructor: throws ValidationError naming the first failed axiom.
CrossedModule make_crossed_module(GammaGroup g, GammaGroup h, std::vector<int> rho,
                                  std::vector<int> hact);

// G -> Aut(G) with the evaluation action and conjugation Gamma-action on Aut.
CrossedModule inner_crossed_module(const GammaGroup& a);
// 1 -> H.
CrossedModule trivial_source_crossed_module(const GammaGroup& h);
// A -> 1 for abelian A.
CrossedModule trivial_target_crossed_module(const GammaGroup& a);

enum class CrossedModuleShape { Inner, TrivialSource, TrivialTarget, General };
CrossedModuleShape classify_shape(const CrossedModule& cm);

// H^{-1} = (ker rho)^Gamma.
Subgroup h_minus1(const CrossedModule& cm);

}  // namespace patchlab
