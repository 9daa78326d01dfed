#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patchlab/bitorsor.hpp"
#include "patchlab/cocycles.hpp"
#include "patchlab/crossed.hpp"

namespace patchlab {

// ---------------------------------------------------------------------------
// Degree 0: pairs (u, phi) for the crossed module G -> Aut(G).
//
// Two cocycle orientations are implemented; the one matching the object-level
// bitorsor enumeration is frozen at first use (see calibrate_h0_orientation)
// and reported in all outputs.
//   UStandard: u(st) = u(s) * ^s u(t),   Int(u(s)) = phi o ^s(phi)^-1,
//              (u, phi) ~ (b u ^s(b)^-1, Int(b) o phi)
//   UOpposite: u(st) = ^s u(t) * u(s),   Int(u(s)) = ^s(phi) o phi^-1,
//              (u, phi) ~ (^s(b)^-1 u b, Int(b^-1) o phi)
// ---------------------------------------------------------------------------

enum class H0Orientation { UStandard, UOpposite };

struct H0Calibration {
    H0Orientation frozen;
    bool standard_ok = false;
    bool opposite_ok = false;
};

// Runs both orientations against enumerate_bitorsors on (Z/2 inverting Z/3)
// and (Z/2, Z/2 trivial); throws CalibrationMismatch if neither agrees.
const H0Calibration& calibrate_h0_orientation();
std::string h0_orientation_name();

struct HyperCocycle0 {
    GammaGroup carrier;      // G; the crossed module is G -> Aut(G)
    std::vector<int> u;      // per gamma element
    int phi = 0;             // automorphism index in carrier.auts
};

bool is_hyper_cocycle0(const GammaGroup& a, const std::vector<int>& u, int phi,
                       H0Orientation orientation);

struct H0Classes {
    GammaGroup carrier;
    H0Orientation orientation;
    std::vector<HyperCocycle0> reps;  // canonical, sorted by (phi, u)

    int size() const { return static_cast<int>(reps.size()); }
    int class_of(const std::vector<int>& u, int phi) const;
    int trivial_class() const;
    // Group law matching the object-level wedge through the correspondence
    // with anchored bitorsors.
    int compose(int a, int b) const;
    int inverse(int a) const;
    int restrict_class(int cls, const GroupHom& f, const H0Classes& target) const;
    bool is_neutral(int cls) const;  // some representative has u == e
};

// Classes for G -> Aut(G); the count is checked against the object-level
// bitorsor enumeration (hard postcondition) unless check_object is false.
H0Classes h0_classes_inner(const GammaGroup& a, bool check_object = true);

// The anchored bitorsor corresponding to a degree-0 pair, and back.
Bitorsor bitorsor_from_h0(const GammaGroup& a, const std::vector<int>& u, int phi,
                          H0Orientation orientation);
HyperCocycle0 h0_from_bitorsor(const GammaGroup& a, const Bitorsor& b, H0Orientation orientation);

// General crossed modules: supported shapes are Inner, (1 -> H) and
// (A -> 1, A abelian); the latter two reduce to fixed points and H^1.
struct GeneralH0 {
    CrossedModuleShape shape;
    std::vector<HyperCocycle0> reps;  // u in G, phi an H-element index
};
GeneralH0 h0_classes(const CrossedModule& cm);

// ---------------------------------------------------------------------------
// Degree 1: factor sets (phi, c) for G -> Aut(G).
//   phi(s) o ^s(phi(t)) = Int(c(s,t)) o phi(st)
//   Phi_s(c(t,u)) * c(s,tu) = c(s,t) * c(st,u)   with Phi_s = phi(s) o act(s)
//   normalized: phi(e) = id, c(e,.) = c(.,e) = e
// Equivalence is by normalized twists a: Gamma -> G:
//   phi'(s) = Int(a(s)) o phi(s)
//   c'(s,t) = a(s) * Phi_s(a(t)) * c(s,t) * a(st)^-1
// A class's band is the homomorphism s -> [Phi_s] into Out(G).
// ---------------------------------------------------------------------------

struct HyperCocycle1 {
    GammaGroup carrier;
    std::vector<int> phi;  // per gamma element: automorphism index
    std::vector<int> c;    // index s*|Gamma| + t
};

bool is_hyper_cocycle1(const GammaGroup& a, const std::vector<int>& phi,
                       const std::vector<int>& c);
int total_twist_auto(const GammaGroup& a, const std::vector<int>& phi, int s);  // Phi_s index
HyperCocycle1 twist_hyper_cocycle1(const HyperCocycle1& z, const std::vector<int>& a);

struct H1CrossedClasses {
    GammaGroup carrier;
    OuterQuotient outer;
    std::vector<HyperCocycle1> reps;
    std::vector<std::vector<int>> bands;  // per class: s -> Out(G) element

    int size() const { return static_cast<int>(reps.size()); }
    int class_of(const std::vector<int>& phi, const std::vector<int>& c) const;
    int trivial_class() const;
    int restrict_class(int cls, const GroupHom& f, const H1CrossedClasses& target) const;
    bool is_neutral(int cls) const;  // some representative has c == e
};

H1CrossedClasses h1_crossed_classes(const GammaGroup& a, long long max_candidates = 4000000);

// ---------------------------------------------------------------------------
// Extensions of Gamma by G: the independent oracle for degree 1 and the
// concrete carrier for gluing computations.
// Multiplication on G x Gamma: (g,s)(g',t) = (g * Phi_s(g') * c(s,t), st).
// ---------------------------------------------------------------------------

struct ExtensionGroup {
    GammaGroup carrier;
    FiniteGroup x;
    GroupPtr xptr;

    int index(int g, int s) const { return g * carrier.gamma->order + s; }
    int part_g(int e) const { return e / carrier.gamma->order; }
    int part_gamma(int e) const { return e % carrier.gamma->order; }
};

ExtensionGroup extension_from_cocycle(const HyperCocycle1& z);
ExtensionGroup split_extension(const GammaGroup& a);

// Strict equivalence: isomorphism (g,s) -> (g*a(s), s) for some normalized a.
bool extensions_strictly_equivalent(const ExtensionGroup& x1, const ExtensionGroup& x2);
// Splittings s -> (w(s), s); nullopt when the extension does not split.
std::optional<std::vector<int>> find_splitting(const ExtensionGroup& x);

// Automorphisms of the split extension over Gamma correspond to degree-0
// pairs (phi, u) in the UStandard orientation: (g,s) -> (phi(g)*u(s), s).
std::vector<int> split_automorphism_table(const GammaGroup& a, int phi, const std::vector<int>& u);

// Trivializations of an extension: pairs (theta, b) with
// (g,s) -> (theta(g)*b(s), s) an isomorphism onto the split extension.
struct Trivialization {
    int theta;            // automorphism index of G
    std::vector<int> b;   // per gamma element, b(e) = e
};
std::vector<Trivialization> extension_trivializations(const ExtensionGroup& x);

// ---------------------------------------------------------------------------
// Sequence reports.
// ---------------------------------------------------------------------------

struct SequenceNode {
    std::string name;
    int size = 0;
    int basepoint = 0;
};

struct SequenceMap {
    std::string name;
    std::vector<int> images;  // source index -> target index
};

struct SequenceReport {
    std::vector<SequenceNode> nodes;
    std::vector<SequenceMap> maps;          // maps[i]: nodes[i] -> nodes[i+1]
    std::vector<bool> exact_at;             // per interior node nodes[1..n-2]
    bool exact = false;
    std::vector<std::string> notes;
};

// The seven-term sequence for 1 -> (1 -> Aut G) -> (G -> Aut G) -> (G -> 1) -> 1:
// Z(G)^Gamma -> G^Gamma -> Aut(G)^Gamma -> H^0(G->Aut G) -> H^1(G) ->
// H^1(Aut G) -> H^1(G -> Aut G), with pointed-set exactness at every
// interior node.
SequenceReport myles_sequence(const GammaGroup& a);

struct Les2Report {
    SequenceReport sequence;
    bool zero_map_holds = false;  // H^0(G/Z -> Aut(G/Z)) -> H^2(Z) all trivial
    // The displayed sequence uses H^1(Z)/H^2(Z) terms, which realize the
    // kernel complex only when Aut(G) -> Aut(G/Z) is injective. When it is
    // not, the affected nodes are reported but not asserted.
    bool aut_kernel_trivial = false;
    std::vector<bool> asserted_at;
    bool exact_where_asserted = false;
};

// The hypercohomology sequence of 1 -> (Z -> 1) -> (G -> Aut G) ->
// (G/Z -> Aut(G/Z)) -> 1 for a designated central, Gamma-stable,
// characteristic Z with complete quotient.
Les2Report les2_sequence(const GammaGroup& a, const std::vector<int>& z_elements);

}  // namespace patchlab
