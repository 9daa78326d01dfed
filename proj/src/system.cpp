#include "patchlab/system.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "patchlab/errors.hpp"

namespace patchlab {

GroupHom FactorizationSystem::edge_to_f(int k) const {
    const auto& t = triples[k];
    return compose(vertex_to_f[t.left], t.to_left);
}

bool FactorizationSystem::is_tree() const {
    return edges() == vertices() - 1;  // connectivity is validated on construction
}

FactorizationSystem make_system(GroupPtr gamma_f, std::vector<GroupPtr> vertex_gamma,
                                std::vector<GroupHom> vertex_to_f,
                                std::vector<GroupPtr> edge_gamma,
                                std::vector<FactorizationSystem::Triple> triples,
                                std::string name) {
    FactorizationSystem sys;
    sys.gamma_f = std::move(gamma_f);
    sys.vertex_gamma = std::move(vertex_gamma);
    sys.vertex_to_f = std::move(vertex_to_f);
    sys.edge_gamma = std::move(edge_gamma);
    sys.triples = std::move(triples);
    sys.name = std::move(name);

    int nv = sys.vertices(), ne = sys.edges();
    if (nv == 0) throw ValidationError("BadTriple", "system needs at least one vertex");
    if (static_cast<int>(sys.vertex_to_f.size()) != nv ||
        static_cast<int>(sys.triples.size()) != ne)
        throw ValidationError("BadTriple", "table sizes disagree");
    std::vector<bool> edge_seen(ne, false);
    for (int k = 0; k < ne; ++k) {
        const auto& t = sys.triples[k];
        if (t.edge != k || t.left < 0 || t.left >= nv || t.right < 0 || t.right >= nv)
            throw ValidationError("BadTriple", "triple references invalid indices",
                                  {t.left, t.right, t.edge});
        if (t.left == t.right)
            throw ValidationError("BadTriple", "an edge needs two distinct vertices",
                                  {t.left, t.edge});
        if (edge_seen[t.edge])
            throw ValidationError("BadTriple", "edge appears in two triples", {t.edge});
        edge_seen[t.edge] = true;
        if (!t.to_left.src->same_table(*sys.edge_gamma[k]) ||
            !t.to_right.src->same_table(*sys.edge_gamma[k]) ||
            !t.to_left.dst->same_table(*sys.vertex_gamma[t.left]) ||
            !t.to_right.dst->same_table(*sys.vertex_gamma[t.right]))
            throw ValidationError("BadTriple", "leg maps do not match the triple", {k});
        auto left_path = compose(sys.vertex_to_f[t.left], t.to_left);
        auto right_path = compose(sys.vertex_to_f[t.right], t.to_right);
        if (left_path.map != right_path.map)
            throw ValidationError("NonCommutingSquare",
                                  "the two legs disagree after mapping to Gamma_F", {k});
    }

    // Connectivity of the multigraph.
    std::vector<int> comp(nv);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const auto& t : sys.triples) {
        int a = find(t.left), b = find(t.right);
        if (a != b) comp[std::max(a, b)] = std::min(a, b);
    }
    for (int v = 0; v < nv; ++v)
        if (find(v) != find(0))
            throw ValidationError("Disconnected", "the associated graph is disconnected", {v});

    // Limit-equalizer criterion: the vertex images generate Gamma_F. This is
    // equivalent to the elementwise gluing property holding for every
    // Gamma_F-group (intersection of fixed subgroups = fixed subgroup of the
    // generated subgroup).
    std::vector<int> gens;
    for (int i = 0; i < nv; ++i)
        for (int s = 0; s < sys.vertex_gamma[i]->order; ++s) gens.push_back(sys.vertex_to_f[i].map[s]);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    sys.limit_equalizer =
        static_cast<int>(generated_subgroup(sys.gamma_f, gens).elements.size()) ==
        sys.gamma_f->order;
    return sys;
}

FactorizationSystem subgroup_system(GroupPtr master,
                                    std::vector<std::vector<int>> vertex_subgroups,
                                    std::vector<std::vector<int>> edge_subgroups,
                                    std::vector<std::array<int, 3>> triples, std::string name) {
    std::vector<GroupPtr> vgamma;
    std::vector<GroupHom> to_f;
    std::vector<Subgroup> vsubs;
    for (auto& elems : vertex_subgroups) {
        auto sub = make_subgroup(master, elems);
        vgamma.push_back(make_group_ptr(sub.group));
        to_f.push_back(make_hom(vgamma.back(), master, sub.elements));
        vsubs.push_back(std::move(sub));
    }
    std::vector<GroupPtr> egamma;
    std::vector<FactorizationSystem::Triple> ts;
    for (size_t k = 0; k < edge_subgroups.size(); ++k) {
        auto sub = make_subgroup(master, edge_subgroups[k]);
        egamma.push_back(make_group_ptr(sub.group));
        auto [l, r, e] = triples[k];
        if (e != static_cast<int>(k))
            throw ValidationError("BadTriple", "edges must be listed in triple order", {e});
        auto leg = [&](int v) {
            std::vector<int> map(sub.elements.size());
            for (size_t i = 0; i < sub.elements.size(); ++i) {
                int idx = vsubs[v].index_of(sub.elements[i]);
                if (idx < 0)
                    throw ValidationError("BadTriple",
                                          "edge subgroup is not inside a vertex subgroup",
                                          {static_cast<int>(k), v});
                map[i] = idx;
            }
            return make_hom(egamma.back(), vgamma[v], std::move(map));
        };
        ts.push_back({l, r, static_cast<int>(k), leg(l), leg(r)});
    }
    auto sys = make_system(master, std::move(vgamma), std::move(to_f), std::move(egamma),
                           std::move(ts), std::move(name));
    sys.from_subgroup_lattice = true;
    return sys;
}

bool verify_limit_equalizer(const FactorizationSystem& sys, const std::vector<GammaGroup>& suite) {
    for (const auto& a : suite) {
        if (!a.gamma->same_table(*sys.gamma_f))
            throw ValidationError("BadTriple", "suite member lives over the wrong gamma");
        auto rs = restrict_over_system(sys, a);
        auto global_fixed = fixed_points(a).elements;
        std::vector<std::vector<int>> vertex_fixed;
        for (int i = 0; i < sys.vertices(); ++i)
            vertex_fixed.push_back(fixed_points(rs.vertex[i]).elements);
        // Tuples agreeing on every edge are constant tuples (the structure
        // maps do not move elements), so the check is an intersection.
        std::set<int> inter(vertex_fixed[0].begin(), vertex_fixed[0].end());
        for (int i = 1; i < sys.vertices(); ++i) {
            std::set<int> next;
            for (int x : vertex_fixed[i])
                if (inter.count(x)) next.insert(x);
            inter = std::move(next);
        }
        if (inter != std::set<int>(global_fixed.begin(), global_fixed.end())) return false;
    }
    return true;
}

SystemRestrictions restrict_over_system(const FactorizationSystem& sys, const GammaGroup& a) {
    if (!a.gamma->same_table(*sys.gamma_f))
        throw ValidationError("BadTriple", "group does not live over the system's Gamma_F");
    SystemRestrictions rs;
    rs.global = a;
    for (int i = 0; i < sys.vertices(); ++i) rs.vertex.push_back(restrict_action(a, sys.vertex_to_f[i]));
    for (int k = 0; k < sys.edges(); ++k) rs.edge.push_back(restrict_action(a, sys.edge_to_f(k)));
    return rs;
}

FactorizationOutcome simultaneous_factorization(const FactorizationSystem& sys,
                                                const GammaGroup& a,
                                                const std::vector<int>& edge_elements) {
    FactorizationOutcome out;
    auto rs = restrict_over_system(sys, a);
    const auto& g = *a.g;
    if (static_cast<int>(edge_elements.size()) != sys.edges())
        throw ValidationError("BadTriple", "one element per edge expected");
    for (int k = 0; k < sys.edges(); ++k) {
        auto fixed = fixed_points(rs.edge[k]);
        if (!fixed.contains(edge_elements[k]))
            throw ValidationError("BadTriple", "edge element is not Gamma_k-fixed",
                                  {k, edge_elements[k]});
    }

    std::vector<std::vector<int>> vertex_fixed;
    std::vector<std::set<int>> vertex_fixed_set;
    for (int i = 0; i < sys.vertices(); ++i) {
        vertex_fixed.push_back(fixed_points(rs.vertex[i]).elements);
        vertex_fixed_set.emplace_back(vertex_fixed.back().begin(), vertex_fixed.back().end());
    }

    // Spanning tree: values propagate from the root; remaining edges are
    // pure checks. Every solution restricts to some root value, so scanning
    // all root values covers the space.
    int nv = sys.vertices();
    std::vector<int> tree_parent_edge(nv, -1);
    std::vector<int> order{0};
    std::vector<bool> seen(nv, false);
    seen[0] = true;
    for (size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (int k = 0; k < sys.edges(); ++k) {
            const auto& t = sys.triples[k];
            int other = -1;
            if (t.left == v && !seen[t.right]) other = t.right;
            if (t.right == v && !seen[t.left]) other = t.left;
            if (other >= 0) {
                seen[other] = true;
                tree_parent_edge[other] = k;
                order.push_back(other);
            }
        }
    }

    out.candidate_space = static_cast<long long>(vertex_fixed[0].size());
    for (int root_val : vertex_fixed[0]) {
        ++out.candidates_examined;
        std::vector<int> assign(nv, -1);
        assign[0] = root_val;
        bool ok = true;
        for (size_t head = 1; head < order.size() && ok; ++head) {
            int v = order[head];
            int k = tree_parent_edge[v];
            const auto& t = sys.triples[k];
            // a_k = a_r^-1 a_l determines the unknown endpoint.
            int val;
            if (assign[t.left] >= 0) {
                val = g.op(assign[t.left], g.inverse(edge_elements[k]));  // a_r = a_l a_k^-1
            } else {
                val = g.op(assign[t.right], edge_elements[k]);  // a_l = a_r a_k
            }
            if (!vertex_fixed_set[v].count(val)) {
                ok = false;
                break;
            }
            assign[v] = val;
        }
        if (!ok) continue;
        for (int k = 0; k < sys.edges() && ok; ++k) {
            const auto& t = sys.triples[k];
            ok = g.op(g.inverse(assign[t.right]), assign[t.left]) == edge_elements[k];
        }
        if (ok) {
            out.witness = assign;
            return out;
        }
    }
    return out;
}

bool group_satisfies_factorization(const FactorizationSystem& sys, const GammaGroup& a) {
    auto rs = restrict_over_system(sys, a);
    std::vector<std::vector<int>> edge_fixed;
    for (int k = 0; k < sys.edges(); ++k)
        edge_fixed.push_back(fixed_points(rs.edge[k]).elements);
    std::vector<int> tuple(sys.edges(), 0);
    bool all = true;
    auto rec = [&](auto&& self, int k) -> void {
        if (!all) return;
        if (k == sys.edges()) {
            std::vector<int> elems(sys.edges());
            for (int e = 0; e < sys.edges(); ++e) elems[e] = edge_fixed[e][tuple[e]];
            if (!simultaneous_factorization(sys, a, elems).witness) all = false;
            return;
        }
        for (size_t i = 0; i < edge_fixed[k].size() && all; ++i) {
            tuple[k] = static_cast<int>(i);
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return all;
}

}  // namespace patchlab
