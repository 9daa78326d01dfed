#include "patchlab/catalog.hpp"

#include <algorithm>
#include <map>

#include "patchlab/errors.hpp"

namespace patchlab {

const std::vector<NamedGroup>& group_catalog() {
    static const std::vector<NamedGroup> cat = [] {
        std::vector<NamedGroup> v;
        auto add = [&](std::string name, FiniteGroup g) {
            g.name = name;
            v.push_back({std::move(name), std::move(g)});
        };
        add("C1", trivial_group());
        add("C2", cyclic_group(2));
        add("C3", cyclic_group(3));
        add("C4", cyclic_group(4));
        add("V4", direct_product(cyclic_group(2), cyclic_group(2)));
        add("C5", cyclic_group(5));
        add("C6", cyclic_group(6));
        add("S3", symmetric_group(3));
        add("C7", cyclic_group(7));
        add("C8", cyclic_group(8));
        add("C4xC2", direct_product(cyclic_group(4), cyclic_group(2)));
        add("C2xC2xC2", direct_product(cyclic_group(2),
                                       direct_product(cyclic_group(2), cyclic_group(2))));
        add("D4", dihedral_group(4));
        add("Q8", quaternion_group());
        add("C9", cyclic_group(9));
        add("C3xC3", direct_product(cyclic_group(3), cyclic_group(3)));
        add("C10", cyclic_group(10));
        add("D5", dihedral_group(5));
        add("C11", cyclic_group(11));
        add("C12", cyclic_group(12));
        add("C6xC2", direct_product(cyclic_group(6), cyclic_group(2)));
        add("D6", dihedral_group(6));
        add("A4", alternating_group(4));
        {
            // Dicyclic of order 12: Z/3 x| Z/4 with Z/4 inverting.
            std::vector<int> inv{0, 2, 1}, id{0, 1, 2};
            add("Dic3", semidirect_product(cyclic_group(3), cyclic_group(4), {id, inv, id, inv}));
        }
        add("C2xS3", direct_product(cyclic_group(2), symmetric_group(3)));
        return v;
    }();
    return cat;
}

GroupPtr catalog_group(const std::string& name) {
    for (const auto& g : group_catalog())
        if (g.name == name) return make_group_ptr(g.group);
    throw ValidationError("UnknownGroup", "no catalog group named " + name);
}

std::vector<GammaGroup> action_catalog(GroupPtr gamma, GroupPtr g) {
    auto auts = automorphism_group(g);
    auto gens = generating_set(*gamma);
    std::vector<std::vector<int>> tables;  // full act tables
    if (gens.empty()) {
        tables.push_back(std::vector<int>(gamma->order, auts->identity_index));
    } else {
        std::vector<int> images(gens.size());
        auto try_extend = [&]() {
            std::vector<int> act(gamma->order, -1);
            act[gamma->identity] = auts->identity_index;
            std::vector<int> frontier{gamma->identity};
            while (!frontier.empty()) {
                std::vector<int> next;
                for (int s : frontier)
                    for (size_t i = 0; i < gens.size(); ++i) {
                        int st = gamma->op(s, gens[i]);
                        int v = auts->compose_idx(act[s], images[i]);
                        if (act[st] < 0) {
                            act[st] = v;
                            next.push_back(st);
                        } else if (act[st] != v) {
                            return;
                        }
                    }
                frontier = std::move(next);
            }
            tables.push_back(std::move(act));
        };
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == gens.size()) {
                try_extend();
                return;
            }
            for (int p = 0; p < auts->size(); ++p) {
                images[i] = p;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    // Deduplicate up to Aut(G)-conjugacy: act ~ (s -> c act(s) c^-1).
    std::vector<std::vector<int>> canon;
    for (const auto& act : tables) {
        auto best = act;
        for (int c = 0; c < auts->size(); ++c) {
            std::vector<int> conj(act.size());
            for (size_t s = 0; s < act.size(); ++s)
                conj[s] = auts->compose_idx(auts->compose_idx(c, act[s]), auts->inverse_idx(c));
            best = std::min(best, conj);
        }
        canon.push_back(std::move(best));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    std::vector<GammaGroup> out;
    for (auto& act : canon) out.push_back(make_gamma_group(gamma, g, act));
    return out;
}

std::vector<CatalogPair> gamma_catalog(int max_g, int max_gamma) {
    std::vector<CatalogPair> out;
    std::vector<std::string> gammas = {"C1", "C2", "C3", "C4", "V4"};
    for (const auto& ng : group_catalog()) {
        if (ng.group.order > max_g) continue;
        for (const auto& gam_name : gammas) {
            auto gam = catalog_group(gam_name);
            if (gam->order > max_gamma) continue;
            auto actions = action_catalog(gam, make_group_ptr(ng.group));
            for (size_t i = 0; i < actions.size(); ++i)
                out.push_back({ng.name + "|" + gam_name + "#" + std::to_string(i), actions[i]});
        }
    }
    return out;
}

namespace {

// Subgroup systems over small masters, by name. Element indices follow the
// construction of the master group.
std::map<std::string, FactorizationSystem> build_systems() {
    std::map<std::string, FactorizationSystem> m;
    auto one = catalog_group("C1");
    auto c2 = catalog_group("C2");
    auto c4 = catalog_group("C4");
    auto v4 = catalog_group("V4");
    auto add = [&](FactorizationSystem sys) { m.emplace(sys.name, std::move(sys)); };

    // One-edge trees.
    add(subgroup_system(one, {{0}, {0}}, {{0}}, {{{0, 1, 0}}}, "edge-trivial"));
    add(subgroup_system(c2, {{0, 1}, {0, 1}}, {{0, 1}}, {{{0, 1, 0}}}, "edge-c2-full"));
    add(subgroup_system(c2, {{0, 1}, {0, 1}}, {{0}}, {{{0, 1, 0}}}, "edge-c2-split"));
    add(subgroup_system(c2, {{0, 1}, {0}}, {{0}}, {{{0, 1, 0}}}, "edge-c2-half"));
    add(subgroup_system(v4, {{0, 2}, {0, 1}}, {{0}}, {{{0, 1, 0}}}, "edge-v4-factors"));
    add(subgroup_system(v4, {{0, 1, 2, 3}, {0, 1}}, {{0, 1}}, {{{0, 1, 0}}}, "edge-v4-down"));
    add(subgroup_system(c4, {{0, 1, 2, 3}, {0, 2}}, {{0, 2}}, {{{0, 1, 0}}}, "edge-c4-down"));
    // Two-edge path.
    add(subgroup_system(v4, {{0, 2}, {0, 1, 2, 3}, {0, 1}}, {{0, 2}, {0, 1}},
                        {{{0, 1, 0}, {1, 2, 1}}}, "path-v4"));
    add(subgroup_system(c2, {{0, 1}, {0, 1}, {0, 1}}, {{0}, {0, 1}},
                        {{{0, 1, 0}, {1, 2, 1}}}, "path-c2"));
    // Star with three leaves.
    add(subgroup_system(v4, {{0, 1, 2, 3}, {0, 1}, {0, 2}, {0, 3}}, {{0, 1}, {0, 2}, {0, 3}},
                        {{{0, 1, 0}, {0, 2, 1}, {0, 3, 2}}}, "star-v4"));
    // Triangles (non-trees).
    add(subgroup_system(one, {{0}, {0}, {0}}, {{0}, {0}, {0}},
                        {{{0, 1, 0}, {1, 2, 1}, {2, 0, 2}}}, "triangle-trivial"));
    add(subgroup_system(c2, {{0, 1}, {0, 1}, {0, 1}}, {{0}, {0}, {0}},
                        {{{0, 1, 0}, {1, 2, 1}, {2, 0, 2}}}, "triangle-c2"));
    return m;
}

const std::map<std::string, FactorizationSystem>& systems() {
    static const auto m = build_systems();
    return m;
}

}  // namespace

const std::vector<std::string>& system_catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : systems()) v.push_back(k);
        return v;
    }();
    return names;
}

FactorizationSystem catalog_system(const std::string& name) {
    auto it = systems().find(name);
    if (it == systems().end())
        throw ValidationError("UnknownSystem", "no catalog system named " + name);
    return it->second;
}

std::vector<SuiteInstance> suite_family(const std::string& name) {
    std::vector<SuiteInstance> out;
    if (name == "default" || name == "finite") {
        for (const auto& sys : {"edge-trivial", "edge-c2-full", "edge-c2-split", "edge-v4-factors",
                                "path-v4", "star-v4"})
            out.push_back({"finite", sys, "S3", {}});
        if (name == "finite") return out;
    }
    if (name == "default" || name == "factor2") {
        for (const auto& sys : {"edge-trivial", "edge-c2-split", "edge-v4-factors", "triangle-c2"})
            out.push_back({"factor2", sys, "S3", {}});
        if (name == "factor2") return out;
    }
    if (name == "default" || name == "patching-coho") {
        for (const auto& sys : {"edge-c2-split", "edge-v4-factors", "path-v4"}) {
            auto s = catalog_system(sys);
            out.push_back({"patching-coho", sys, "C2",
                           std::vector<int>(s.gamma_f->order, 0)});
            out.push_back({"patching-coho", sys, "C3",
                           std::vector<int>(s.gamma_f->order, 0)});
        }
        if (name == "patching-coho") return out;
    }
    if (out.empty()) throw ValidationError("UnknownFamily", "no suite family named " + name);
    return out;
}

const std::vector<std::string>& suite_family_names() {
    static const std::vector<std::string> names = {"default", "finite", "factor2",
                                                   "patching-coho"};
    return names;
}

}  // namespace patchlab
