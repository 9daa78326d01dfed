#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace patchlab {

// A finite group given by its full multiplication table. Elements are the
// indices 0..order-1. Tables are validated on construction; everywhere in
// this library a FiniteGroup can be assumed to satisfy the group axioms.
struct FiniteGroup {
    int order = 0;
    std::vector<int> mul;  // row-major: mul[a*order + b] = a*b
    int identity = 0;
    std::vector<int> inv;
    std::vector<std::string> labels;  // optional display names
    std::string name;                 // optional group name

    int op(int a, int b) const { return mul[a * order + b]; }
    int inverse(int a) const { return inv[a]; }
    int conjugate(int g, int x) const { return op(op(g, x), inv[g]); }  // g x g^-1
    int power(int a, int n) const;
    int element_order(int a) const;
    bool is_abelian() const;
    bool same_table(const FiniteGroup& other) const;
    std::string label(int a) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Validates tables and returns the group; throws ValidationError with codes
// NotClosed, NoIdentity, NoInverse, NonAssociative (witness attached).
FiniteGroup make_group(int order, std::vector<int> mul, std::vector<std::string> labels = {},
                       std::string name = {});
GroupPtr make_group_ptr(FiniteGroup g);

// Constructions.
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int degree);
FiniteGroup alternating_group(int degree);
FiniteGroup dihedral_group(int n);  // order 2n, n >= 1
FiniteGroup quaternion_group();     // Q_8
FiniteGroup trivial_group();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// Semidirect product N x| H where action[h] is an automorphism table of N.
FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<int>>& action);
// Closure of permutation generators acting on {0..degree-1}.
FiniteGroup permutation_group(int degree, const std::vector<std::vector<int>>& generators);

struct GroupHom {
    GroupPtr src;
    GroupPtr dst;
    std::vector<int> map;

    int operator()(int x) const { return map[x]; }
    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
};

// Validates f(ab) = f(a)f(b); throws ValidationError("NotAHomomorphism").
GroupHom make_hom(GroupPtr src, GroupPtr dst, std::vector<int> map);
GroupHom identity_hom(GroupPtr g);
GroupHom trivial_hom(GroupPtr src, GroupPtr dst);
GroupHom compose(const GroupHom& f, const GroupHom& g);  // x -> f(g(x))

// A subgroup together with its induced abstract group. group element i is
// parent element elements[i]; elements is sorted.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> elements;
    FiniteGroup group;

    int index_of(int parent_elt) const;  // -1 if not a member
    bool contains(int parent_elt) const { return index_of(parent_elt) >= 0; }
    GroupHom inclusion() const;
};

Subgroup make_subgroup(GroupPtr parent, std::vector<int> elements);
Subgroup generated_subgroup(GroupPtr parent, const std::vector<int>& generators);
Subgroup center(GroupPtr g);
bool is_normal(const Subgroup& s);
// Quotient by a normal subgroup; also returns the projection map.
std::pair<FiniteGroup, GroupHom> quotient(GroupPtr g, const Subgroup& normal);

// A small generating set found greedily in index order (deterministic).
std::vector<int> generating_set(const FiniteGroup& g);

// Isomorphism search by generator images (pruned by element orders).
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
bool are_isomorphic_groups(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace patchlab
