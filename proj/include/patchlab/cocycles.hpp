#pragma once

#include <optional>
#include <vector>

#include "patchlab/gamma.hpp"

namespace patchlab {

// Convention, fixed globally: a(st) = a(s) * ^s a(t), coboundary
// a ~ (s -> b * a(s) * ^s b^-1). This matches the torsor construction
// sigma * x = a(sigma) * ^sigma x used in the torsor module.

struct Cocycle1 {
    GammaGroup carrier;
    std::vector<int> values;  // per gamma element

    int operator()(int sigma) const { return values[sigma]; }
};

bool is_cocycle1(const GammaGroup& a, const std::vector<int>& values);
Cocycle1 make_cocycle1(GammaGroup a, std::vector<int> values);
Cocycle1 trivial_cocycle1(GammaGroup a);

std::vector<std::vector<int>> all_cocycle1_values(const GammaGroup& a);
// Twist by b: s -> b * a(s) * ^s b^-1.
std::vector<int> twist_cocycle1(const GammaGroup& a, const std::vector<int>& values, int b);
std::vector<int> canonical_cocycle1(const GammaGroup& a, const std::vector<int>& values);

struct H1Classes {
    GammaGroup carrier;
    std::vector<Cocycle1> reps;  // canonical, sorted

    int size() const { return static_cast<int>(reps.size()); }
    int class_of(const std::vector<int>& values) const;
    int trivial_class() const;
};

H1Classes h1_classes(const GammaGroup& a);

// s -> f(c(s)) for an equivariant f.
Cocycle1 pushforward_h1(const EquivariantHom& f, const Cocycle1& c);
// Precompose with f: Gamma' -> Gamma.
Cocycle1 restrict_cocycle1(const Cocycle1& c, const GroupHom& f);

// Abelian degree 2, normalized: c(e,.) = c(.,e) = e and
// ^s c(t,u) * c(s,tu) = c(st,u) * c(s,t).
struct Cocycle2 {
    GammaGroup carrier;  // abelian g
    std::vector<int> values;  // index s*|Gamma| + t

    int operator()(int s, int t) const { return values[s * carrier.gamma->order + t]; }
};

bool is_cocycle2(const GammaGroup& a, const std::vector<int>& values);
Cocycle2 make_cocycle2(GammaGroup a, std::vector<int> values);
Cocycle2 trivial_cocycle2(GammaGroup a);

std::vector<std::vector<int>> all_cocycle2_values(const GammaGroup& a);
// Coboundary of a normalized 1-cochain b: (s,t) -> ^s b(t) * b(st)^-1 * b(s).
std::vector<int> coboundary2(const GammaGroup& a, const std::vector<int>& b);
std::vector<int> canonical_cocycle2(const GammaGroup& a, const std::vector<int>& values);

// The finite abelian group of classes, composition = pointwise product.
struct H2Classes {
    GammaGroup carrier;
    std::vector<Cocycle2> reps;

    int size() const { return static_cast<int>(reps.size()); }
    int class_of(const std::vector<int>& values) const;
    int trivial_class() const;
    int compose(int a, int b) const;
    int inverse(int a) const;
};

H2Classes h2_classes(const GammaGroup& a);

Cocycle2 restrict_cocycle2(const Cocycle2& c, const GroupHom& f);

}  // namespace patchlab
