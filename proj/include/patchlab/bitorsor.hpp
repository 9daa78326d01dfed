#pragma once

#include <optional>
#include <vector>

#include "patchlab/cocycles.hpp"
#include "patchlab/gamma.hpp"

namespace patchlab {

// A left G-torsor on a concrete finite point set with a semilinear
// Gamma-action. All tables are validated on construction.
struct Torsor {
    GammaGroup carrier;          // the left group G
    int points = 0;
    std::vector<int> left;       // left[g*points + p]
    std::vector<int> gact;       // gact[sigma*points + p]

    int act_left(int g, int p) const { return left[g * points + p]; }
    int act_gamma(int s, int p) const { return gact[s * points + p]; }
};

Torsor make_torsor(GammaGroup carrier, int points, std::vector<int> left, std::vector<int> gact);
Torsor trivial_torsor(GammaGroup a);

// Points = G, sigma(x) = a(sigma) * ^sigma x, left action g.x = x g^-1.
// With these tables the cocycle convention of the cocycles module is
// realized on the nose (equivalent cocycles <-> isomorphic torsors).
Torsor torsor_from_cocycle(const Cocycle1& c);
// a(sigma) := inverse of the unique g with sigma(p) = g.p.
Cocycle1 cocycle_from_torsor(const Torsor& t, int basepoint);

std::optional<std::vector<int>> torsor_isomorphism(const Torsor& p, const Torsor& q);

// A (G,H)-bitorsor: commuting simply transitive left G- and right H-actions
// plus a semilinear Gamma-action.
struct Bitorsor {
    GammaGroup leftg;
    GammaGroup rightg;  // same gamma
    int points = 0;
    std::vector<int> left;   // left[g*points + p]
    std::vector<int> right;  // right[p*|H| + h]
    std::vector<int> gact;   // gact[sigma*points + p]

    int act_left(int g, int p) const { return left[g * points + p]; }
    int act_right(int p, int h) const { return right[p * rightg.g->order + h]; }
    int act_gamma(int s, int p) const { return gact[s * points + p]; }
    Torsor underlying_torsor() const;
};

Bitorsor make_bitorsor(GammaGroup leftg, GammaGroup rightg, int points, std::vector<int> left,
                       std::vector<int> right, std::vector<int> gact);
// G itself: left and right multiplication, sigma acting by the structure maps.
Bitorsor trivial_bitorsor(GammaGroup a);

// Anchored construction with points = G, left = multiplication, right action
// x.h = x * r(h) for an isomorphism r: H -> G, and sigma(x) = ^sigma x * t(sigma).
// Every bitorsor is isomorphic to an anchored one (relabel by the left action
// at a basepoint); this is the search space used by the class enumeration.
Bitorsor anchored_bitorsor(const GammaGroup& leftg, const GammaGroup& rightg,
                           const std::vector<int>& r, const std::vector<int>& t);

// One representative per isomorphism class, deterministically ordered.
// Empty when no H -> G isomorphism exists.
std::vector<Bitorsor> enumerate_bitorsors(const GammaGroup& g, const GammaGroup& h,
                                          long long max_candidates = 2000000);

// Basepoint-anchored search: a candidate is determined by the image of
// point 0, then verified against all three actions.
std::optional<std::vector<int>> bitorsor_isomorphism(const Bitorsor& p, const Bitorsor& q);

Bitorsor wedge(const Bitorsor& p, const Bitorsor& q);
Bitorsor opposite(const Bitorsor& p);
Bitorsor restrict_bitorsor(const Bitorsor& p, const GroupHom& f);

// u with p.h = u(h).p; an isomorphism H -> G.
GroupHom point_trivialization(const Bitorsor& p, int point);

struct BitorsorClasses {
    std::vector<Bitorsor> reps;

    int size() const { return static_cast<int>(reps.size()); }
    int class_of(const Bitorsor& b) const;  // via isomorphism search
};

BitorsorClasses bitorsor_classes(const GammaGroup& g);  // G-bitorsors (H = G)

}  // namespace patchlab
