#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patchlab/hyper.hpp"
#include "patchlab/system.hpp"

namespace patchlab {

// Which relation "the edge class factors through its vertices" uses:
// the displayed definition P_l ^ P_r = P_k, or the pre-lemma map variant
// P_l ^ P_r^op = P_k. Both are implemented; Definition is the default.
enum class EdgeOp { Definition, Opposite };
std::string edge_op_name(EdgeOp op);

// Degree-0 class data over all indices of a system, with restriction and
// composition tables precomputed on class indices.
struct SystemH0 {
    SystemRestrictions rs;
    H0Classes global;
    std::vector<H0Classes> vertex;
    std::vector<H0Classes> edge;
    std::vector<int> global_to_vertex_flat;     // [i*global.size()+c]
    std::vector<int> vertex_to_edge_left_flat;  // [k*vertex_size(l)+c]
    std::vector<int> vertex_to_edge_right_flat;
    std::vector<std::vector<int>> edge_compose;  // per edge: flat size^2 table
    std::vector<std::vector<int>> edge_inverse;  // per edge: size table

    int restrict_to_vertex(int i, int cls) const;
    int left_to_edge(int k, int cls) const;
    int right_to_edge(int k, int cls) const;
    int compose_on_edge(int k, int a, int b) const;
    int inverse_on_edge(int k, int a) const;
    int vertex_stride_ = 0;
};
SystemH0 system_h0(const FactorizationSystem& sys, const GammaGroup& a);

struct SystemH1 {
    SystemRestrictions rs;
    H1CrossedClasses global;
    std::vector<H1CrossedClasses> vertex;
    std::vector<H1CrossedClasses> edge;
    std::vector<int> global_to_vertex_flat;
    std::vector<int> vertex_to_edge_left_flat;
    std::vector<int> vertex_to_edge_right_flat;

    int restrict_to_vertex(int i, int cls) const;
    int left_to_edge(int k, int cls) const;
    int right_to_edge(int k, int cls) const;
    int vertex_stride_ = 0;
};
SystemH1 system_h1(const FactorizationSystem& sys, const GammaGroup& a);

// --------------------------------------------------------------------------
// Bitorsor factorization: given one degree-0 class per edge, find vertex
// classes whose edge products hit them. Exhaustive over class tuples.
// --------------------------------------------------------------------------

std::optional<std::vector<int>> bitorsor_factorization(const SystemH0& h0,
                                                       const FactorizationSystem& sys,
                                                       const std::vector<int>& edge_classes,
                                                       EdgeOp op);
bool bitorsor_factorization_holds(const SystemH0& h0, const FactorizationSystem& sys, EdgeOp op);
// The first edge tuple with no witness, if any.
std::optional<std::vector<int>> bitorsor_factorization_counterexample(
    const SystemH0& h0, const FactorizationSystem& sys, EdgeOp op);

// --------------------------------------------------------------------------
// Object-level bitorsor patching.
// --------------------------------------------------------------------------

struct BitorsorPatchingProblem {
    const FactorizationSystem* sys = nullptr;
    std::vector<Bitorsor> pieces;            // one per vertex, over Gamma_i
    std::vector<std::vector<int>> edge_isos;  // per edge: point map P_l|k -> P_r|k
};

struct PatchingSolution {
    Bitorsor global;
    std::vector<std::vector<int>> vertex_isos;  // restrict(global)|i -> pieces[i]
};

// All isomorphisms between two bitorsors (point maps), basepoint-anchored.
std::vector<std::vector<int>> all_bitorsor_isomorphisms(const Bitorsor& p, const Bitorsor& q);

std::optional<PatchingSolution> solve_bitorsor_patching(const GammaGroup& a,
                                                        const BitorsorPatchingProblem& problem);

// Exhaustive patching verdict: every problem built from class representatives
// is solvable, and restriction is fully faithful (global hom sets biject with
// edge-compatible tuples of local hom sets).
struct PatchingVerdict {
    bool essentially_surjective = false;
    bool fully_faithful = false;
    bool holds() const { return essentially_surjective && fully_faithful; }
    int problems_checked = 0;
    std::vector<std::string> notes;
};
PatchingVerdict bitorsor_patching_verdict(const FactorizationSystem& sys, const GammaGroup& a);

// Class-level gerbe patching: H^1(F) -> prod H^1(F_i) is injective with
// image the equalizer of the two edge restrictions.
struct GerbePatchingVerdict {
    bool injective = false;
    bool image_is_equalizer = false;
    bool holds() const { return injective && image_is_equalizer; }
};
GerbePatchingVerdict gerbe_patching_verdict(const SystemH1& h1, const FactorizationSystem& sys);

// --------------------------------------------------------------------------
// Gerbe gluing: solve the patching problem ({BG_i}, {P_k}) at the extension
// level. A solution is a global degree-1 class together with per-vertex
// trivializations whose edge composites land in the prescribed classes.
// --------------------------------------------------------------------------

struct GerbeGluing {
    std::vector<int> solution_classes;  // all global H^1 classes that solve
};
GerbeGluing solve_gerbe_gluing(const SystemH0& h0, const SystemH1& h1,
                               const FactorizationSystem& sys,
                               const std::vector<int>& edge_h0_classes);

// --------------------------------------------------------------------------
// Mayer-Vietoris.
// --------------------------------------------------------------------------

struct MvNode {
    std::string name;
    long long size = 0;
    bool exact = false;     // meaningless for the final node
    bool asserted = false;  // the paper asserts exactness here given the verdicts
    std::string hypothesis;  // which verdict gates this node
};

struct MayerVietorisReport {
    std::vector<MvNode> nodes;  // 9 nodes
    bool limit_equalizer = false;
    PatchingVerdict bitorsor_patching;
    GerbePatchingVerdict gerbe_patching;
    bool all_asserted_exact = false;
    std::vector<std::string> notes;
};

MayerVietorisReport mayer_vietoris_report(const FactorizationSystem& sys, const GammaGroup& a,
                                          EdgeOp op = EdgeOp::Definition);

// --------------------------------------------------------------------------
// Local-global report.
// --------------------------------------------------------------------------

struct LocalGlobalReport {
    bool bitorsor_local_global = false;
    bool center_factorization = false;
    bool gerbe_local_global = false;
    bool bitorsor_factorization = false;
    PatchingVerdict bitorsor_patching;
    GerbePatchingVerdict gerbe_patching;
    // Corollary: under bitorsor patching, bitorsor LG <=> Z(G) factorization.
    bool corollary_applicable = false;
    bool corollary_holds = false;
    // Theorem: under gerbe patching, gerbe LG <=> bitorsor factorization.
    bool theorem_applicable = false;
    bool theorem_holds = false;
    // Failure witnesses, empty when the property holds: a locally trivial
    // but nontrivial class, an unfactorable tuple, and so on.
    std::vector<int> bitorsor_lg_counterexample;     // one global H^0 class
    std::vector<int> center_fact_counterexample;     // edge elements
    std::vector<int> gerbe_lg_counterexample;        // one global H^1 class
    std::vector<int> factorization_counterexample;   // edge classes
};
LocalGlobalReport local_global_report(const FactorizationSystem& sys, const GammaGroup& a,
                                      EdgeOp op = EdgeOp::Definition);

// --------------------------------------------------------------------------
// Bands and nonabelian H^2 with the Giraud action.
// --------------------------------------------------------------------------

struct Band {
    GroupPtr g;
    GroupPtr out;            // Out(g)
    std::vector<int> kappa;  // Gamma element -> Out(g) element
};
Band make_band(GroupPtr gamma, GroupPtr g, std::vector<int> kappa);

struct BandH2 {
    Band band;
    GroupPtr gamma;
    H1CrossedClasses all_classes;   // over the trivial-action carrier
    std::vector<int> fiber;         // class indices with the band's kappa
    H2Classes center_h2;            // H^2(Gamma, Z(g)) with the induced action
    bool action_simply_transitive = false;  // vacuous on an empty fiber
    std::vector<int> action_table;  // [z * fiber.size() + f] -> fiber position
};
BandH2 h2_band(GroupPtr gamma, const Band& band);

// --------------------------------------------------------------------------
// The factorization-with-central-kernel algorithm.
// --------------------------------------------------------------------------

struct CenterFactorizationResult {
    std::vector<int> vertex_classes;   // witness, as global-level H^0 classes per vertex
    bool verified = false;             // re-checked by object-level wedge recomputation
    std::vector<std::string> steps;
};

CenterFactorizationResult center_factorization_algorithm(const FactorizationSystem& sys,
                                                         const GammaGroup& a,
                                                         const std::vector<int>& z_elements,
                                                         const std::vector<int>& edge_h0_classes,
                                                         EdgeOp op = EdgeOp::Definition);

// --------------------------------------------------------------------------
// Conditional-theorem suite.
// --------------------------------------------------------------------------

struct TheoremInstanceReport {
    std::string instance;
    std::string theorem;
    bool hypotheses_hold = false;
    bool conclusion_holds = false;   // only computed when hypotheses hold
    bool implication_holds = false;  // hypotheses => conclusion
    std::vector<std::string> hypothesis_notes;
    std::vector<int> counterexample;  // edge classes that fail, when any
};

// theorem in {"finite", "factor2", "patching-coho"}.
TheoremInstanceReport check_theorem_finite(const FactorizationSystem& sys, const GammaGroup& a,
                                           EdgeOp op);
TheoremInstanceReport check_theorem_factor2(const FactorizationSystem& sys, const GammaGroup& a,
                                            EdgeOp op);
TheoremInstanceReport check_patching_coho(const FactorizationSystem& sys, const Band& band);

}  // namespace patchlab
