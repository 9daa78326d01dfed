#include "patchlab/gamma.hpp"

#include <numeric>

#include "patchlab/errors.hpp"

namespace patchlab {

int GammaGroup::apply_on_aut(int sigma, int auto_idx) const {
    int s = act[sigma];
    return auts->compose_idx(auts->compose_idx(s, auto_idx), auts->inverse_idx(s));
}

bool GammaGroup::trivial_action() const {
    for (int idx : act)
        if (idx != auts->identity_index) return false;
    return true;
}

GammaGroup make_gamma_group(GroupPtr gamma, GroupPtr g, std::vector<int> auto_indices) {
    GammaGroup a;
    a.gamma = std::move(gamma);
    a.g = std::move(g);
    a.auts = automorphism_group(a.g);
    a.act = std::move(auto_indices);
    if (static_cast<int>(a.act.size()) != a.gamma->order)
        throw ValidationError("NotAHomomorphism", "action table has wrong size");
    for (int idx : a.act)
        if (idx < 0 || idx >= a.auts->size())
            throw ValidationError("NotAHomomorphism", "automorphism index out of range", {idx});
    if (a.act[a.gamma->identity] != a.auts->identity_index)
        throw ValidationError("NotAHomomorphism", "identity must act trivially",
                              {a.gamma->identity});
    for (int s = 0; s < a.gamma->order; ++s)
        for (int t = 0; t < a.gamma->order; ++t)
            if (a.act[a.gamma->op(s, t)] != a.auts->compose_idx(a.act[s], a.act[t]))
                throw ValidationError("NotAHomomorphism", "act(st) != act(s) o act(t)", {s, t});
    return a;
}

GammaGroup make_gamma_group_trivial(GroupPtr gamma, GroupPtr g) {
    GammaGroup a;
    a.gamma = std::move(gamma);
    a.g = std::move(g);
    a.auts = automorphism_group(a.g);
    a.act.assign(a.gamma->order, a.auts->identity_index);
    return a;
}

GammaGroup make_gamma_group_on_generators(GroupPtr gamma, GroupPtr g,
                                          const std::map<int, std::vector<int>>& images) {
    auto auts = automorphism_group(g);
    std::vector<int> act(gamma->order, -1);
    act[gamma->identity] = auts->identity_index;
    std::vector<int> frontier{gamma->identity};
    std::vector<std::pair<int, int>> gens;  // (gamma element, auto index)
    for (const auto& [s, table] : images) {
        int idx = auts->index_of(table);
        if (idx < 0)
            throw ValidationError("NotAHomomorphism", "assigned table is not an automorphism", {s});
        gens.emplace_back(s, idx);
    }
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (auto [s, idx] : gens) {
                int y = gamma->op(x, s);
                int a = auts->compose_idx(act[x], idx);
                if (act[y] < 0) {
                    act[y] = a;
                    next.push_back(y);
                } else if (act[y] != a) {
                    throw ValidationError("NotAHomomorphism",
                                          "generator assignment is inconsistent", {x, s});
                }
            }
        frontier = std::move(next);
    }
    for (int x = 0; x < gamma->order; ++x)
        if (act[x] < 0)
            throw ValidationError("NotAHomomorphism",
                                  "assigned elements do not generate gamma", {x});
    return make_gamma_group(std::move(gamma), std::move(g), std::move(act));
}

Subgroup fixed_points(const GammaGroup& a) {
    std::vector<int> elems;
    for (int x = 0; x < a.g->order; ++x) {
        bool fixed = true;
        for (int s = 0; s < a.gamma->order && fixed; ++s) fixed = a.apply(s, x) == x;
        if (fixed) elems.push_back(x);
    }
    return make_subgroup(a.g, std::move(elems));
}

GammaGroup restrict_action(const GammaGroup& a, const GroupHom& f) {
    if (!f.dst->same_table(*a.gamma))
        throw ValidationError("NotAHomomorphism", "restriction map does not target gamma");
    GammaGroup b;
    b.gamma = f.src;
    b.g = a.g;
    b.auts = a.auts;
    b.act.resize(f.src->order);
    for (int s = 0; s < f.src->order; ++s) b.act[s] = a.act[f.map[s]];
    return b;
}

GammaGroup aut_gamma_group(const GammaGroup& a) {
    GammaGroup b;
    b.gamma = a.gamma;
    b.g = a.auts->group_ptr();
    b.auts = automorphism_group(b.g);
    b.act.resize(a.gamma->order);
    for (int s = 0; s < a.gamma->order; ++s) {
        std::vector<int> table(b.g->order);
        for (int phi = 0; phi < b.g->order; ++phi) table[phi] = a.apply_on_aut(s, phi);
        int idx = b.auts->index_of(table);
        if (idx < 0)
            throw ValidationError("NotAHomomorphism",
                                  "conjugation does not act on Aut by automorphisms", {s});
        b.act[s] = idx;
    }
    return b;
}

EquivariantHom make_equivariant_hom(GammaGroup src, GammaGroup dst, GroupHom hom) {
    if (!src.gamma->same_table(*dst.gamma))
        throw ValidationError("NotAHomomorphism", "equivariant hom needs a shared gamma");
    for (int s = 0; s < src.gamma->order; ++s)
        for (int x = 0; x < src.g->order; ++x)
            if (hom.map[src.apply(s, x)] != dst.apply(s, hom.map[x]))
                throw ValidationError("NotAHomomorphism", "map is not Gamma-equivariant", {s, x});
    return EquivariantHom{std::move(src), std::move(dst), std::move(hom)};
}

}  // namespace patchlab
