#include "patchlab/automorphisms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "patchlab/errors.hpp"

namespace patchlab {

int AutomorphismGroup::index_of(const std::vector<int>& table) const {
    auto it = std::lower_bound(autos.begin(), autos.end(), table);
    if (it == autos.end() || *it != table) return -1;
    return static_cast<int>(it - autos.begin());
}

int AutomorphismGroup::inner_of(int g) const {
    std::vector<int> table(base->order);
    for (int x = 0; x < base->order; ++x) table[x] = base->conjugate(g, x);
    return index_of(table);
}

namespace {

std::optional<std::vector<int>> extend_auto(const FiniteGroup& g, const std::vector<int>& gens,
                                            const std::vector<int>& images) {
    std::vector<int> map(g.order, -1);
    map[g.identity] = g.identity;
    std::vector<int> frontier{g.identity};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (size_t i = 0; i < gens.size(); ++i) {
                int y = g.op(x, gens[i]);
                int fy = g.op(map[x], images[i]);
                if (map[y] < 0) {
                    map[y] = fy;
                    next.push_back(y);
                } else if (map[y] != fy) {
                    return std::nullopt;
                }
            }
        frontier = std::move(next);
    }
    std::vector<bool> hit(g.order, false);
    for (int v : map) {
        if (v < 0) return std::nullopt;
        if (hit[v]) return std::nullopt;
        hit[v] = true;
    }
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (map[g.op(x, y)] != g.op(map[x], map[y])) return std::nullopt;
    return map;
}

}  // namespace

AutGroupPtr automorphism_group(GroupPtr g, int max_order) {
    if (g->order > max_order)
        throw ResourceLimit("ResourceLimit", "group order exceeds automorphism search bound",
                            {g->order, max_order});
    // Memoized on the multiplication table; the computation is deterministic.
    static std::mutex cache_mutex;
    static std::map<std::vector<int>, AutGroupPtr> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(g->mul);
        if (it != cache.end()) return it->second;
    }
    auto gens = generating_set(*g);
    std::vector<std::vector<int>> autos;
    if (gens.empty()) {
        autos.push_back({g->identity});
    } else {
        std::vector<std::vector<int>> candidates(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) {
            int ord = g->element_order(gens[i]);
            for (int y = 0; y < g->order; ++y)
                if (g->element_order(y) == ord) candidates[i].push_back(y);
        }
        std::vector<int> images(gens.size());
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == gens.size()) {
                if (auto map = extend_auto(*g, gens, images)) autos.push_back(std::move(*map));
                return;
            }
            for (int c : candidates[i]) {
                images[i] = c;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    std::sort(autos.begin(), autos.end());

    int n = static_cast<int>(autos.size());
    auto index_of = [&](const std::vector<int>& t) {
        auto it = std::lower_bound(autos.begin(), autos.end(), t);
        return static_cast<int>(it - autos.begin());
    };
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> comp(g->order);
            for (int x = 0; x < g->order; ++x) comp[x] = autos[a][autos[b][x]];
            mul[a * n + b] = index_of(comp);
        }

    auto ag = std::make_shared<AutomorphismGroup>();
    ag->base = g;
    ag->autos = std::move(autos);
    ag->group = make_group(n, std::move(mul));
    ag->group_ptr_ = make_group_ptr(ag->group);
    std::vector<int> ident(g->order);
    std::iota(ident.begin(), ident.end(), 0);
    ag->identity_index = ag->index_of(ident);

    ag->inner_witness.assign(n, std::nullopt);
    for (int w = 0; w < g->order; ++w) {
        std::vector<int> table(g->order);
        for (int x = 0; x < g->order; ++x) table[x] = g->conjugate(w, x);
        int idx = ag->index_of(table);
        if (idx >= 0 && !ag->inner_witness[idx]) ag->inner_witness[idx] = w;
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(g->mul, ag);
    }
    return ag;
}

OuterQuotient outer_quotient(AutGroupPtr aut) {
    std::vector<int> inner;
    for (int i = 0; i < aut->size(); ++i)
        if (aut->is_inner(i)) inner.push_back(i);
    auto sub = make_subgroup(aut->group_ptr(), inner);
    auto [out, proj] = quotient(aut->group_ptr(), sub);
    OuterQuotient q;
    q.aut = std::move(aut);
    q.out = std::move(out);
    q.out_ptr = make_group_ptr(q.out);
    q.proj = proj.map;
    return q;
}

CompletenessResult is_complete(GroupPtr g, int max_order) {
    CompletenessResult r;
    auto z = center(g);
    if (z.elements.size() > 1) {
        for (int e : z.elements)
            if (e != g->identity) {
                r.certificate.central_element = e;
                return r;
            }
    }
    auto aut = automorphism_group(g, max_order);
    for (int i = 0; i < aut->size(); ++i)
        if (!aut->is_inner(i)) {
            r.certificate.outer_automorphism = i;
            return r;
        }
    // Trivial center and all automorphisms inner: Int is an isomorphism.
    std::vector<int> map(g->order);
    for (int x = 0; x < g->order; ++x) map[x] = aut->inner_of(x);
    r.complete = true;
    r.certificate.int_isomorphism = make_hom(g, aut->group_ptr(), std::move(map));
    return r;
}

}  // namespace patchlab
