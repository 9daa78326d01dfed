#include "patchlab/cocycles.hpp"

#include <algorithm>
#include <functional>

#include "patchlab/errors.hpp"

namespace patchlab {

bool is_cocycle1(const GammaGroup& a, const std::vector<int>& values) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    if (values[gam.identity] != g.identity) return false;
    for (int s = 0; s < gam.order; ++s)
        for (int t = 0; t < gam.order; ++t)
            if (values[gam.op(s, t)] != g.op(values[s], a.apply(s, values[t]))) return false;
    return true;
}

Cocycle1 make_cocycle1(GammaGroup a, std::vector<int> values) {
    if (!is_cocycle1(a, values))
        throw ValidationError("NotACocycle", "degree-1 cocycle condition fails");
    return Cocycle1{std::move(a), std::move(values)};
}

Cocycle1 trivial_cocycle1(GammaGroup a) {
    std::vector<int> v(a.gamma->order, a.g->identity);
    return Cocycle1{std::move(a), std::move(v)};
}

std::vector<std::vector<int>> all_cocycle1_values(const GammaGroup& a) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    auto gens = generating_set(gam);
    std::vector<std::vector<int>> out;
    if (gens.empty()) {
        out.push_back(std::vector<int>(gam.order, g.identity));
        return out;
    }
    std::vector<int> images(gens.size());
    auto try_extend = [&]() {
        std::vector<int> v(gam.order, -1);
        v[gam.identity] = g.identity;
        std::vector<int> frontier{gam.identity};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int s : frontier)
                for (size_t i = 0; i < gens.size(); ++i) {
                    int st = gam.op(s, gens[i]);
                    int val = g.op(v[s], a.apply(s, images[i]));
                    if (v[st] < 0) {
                        v[st] = val;
                        next.push_back(st);
                    } else if (v[st] != val) {
                        return;
                    }
                }
            frontier = std::move(next);
        }
        if (is_cocycle1(a, v)) out.push_back(std::move(v));
    };
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == gens.size()) {
            try_extend();
            return;
        }
        for (int x = 0; x < g.order; ++x) {
            images[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> twist_cocycle1(const GammaGroup& a, const std::vector<int>& values, int b) {
    const auto& g = *a.g;
    std::vector<int> w(values.size());
    for (int s = 0; s < a.gamma->order; ++s)
        w[s] = g.op(g.op(b, values[s]), g.inverse(a.apply(s, b)));
    return w;
}

std::vector<int> canonical_cocycle1(const GammaGroup& a, const std::vector<int>& values) {
    std::vector<int> best = values;
    for (int b = 0; b < a.g->order; ++b) best = std::min(best, twist_cocycle1(a, values, b));
    return best;
}

int H1Classes::class_of(const std::vector<int>& values) const {
    auto canon = canonical_cocycle1(carrier, values);
    for (int i = 0; i < size(); ++i)
        if (reps[i].values == canon) return i;
    return -1;
}

int H1Classes::trivial_class() const {
    return class_of(std::vector<int>(carrier.gamma->order, carrier.g->identity));
}

H1Classes h1_classes(const GammaGroup& a) {
    std::vector<std::vector<int>> canon;
    for (auto& v : all_cocycle1_values(a)) canon.push_back(canonical_cocycle1(a, v));
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    H1Classes h;
    h.carrier = a;
    for (auto& v : canon) h.reps.push_back(Cocycle1{a, v});
    return h;
}

Cocycle1 pushforward_h1(const EquivariantHom& f, const Cocycle1& c) {
    std::vector<int> v(c.values.size());
    for (size_t s = 0; s < c.values.size(); ++s) v[s] = f.hom.map[c.values[s]];
    return make_cocycle1(f.dst, std::move(v));
}

Cocycle1 restrict_cocycle1(const Cocycle1& c, const GroupHom& f) {
    auto carrier = restrict_action(c.carrier, f);
    std::vector<int> v(f.src->order);
    for (int s = 0; s < f.src->order; ++s) v[s] = c.values[f.map[s]];
    return make_cocycle1(std::move(carrier), std::move(v));
}

bool is_cocycle2(const GammaGroup& a, const std::vector<int>& values) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    int n = gam.order;
    for (int s = 0; s < n; ++s)
        if (values[gam.identity * n + s] != g.identity || values[s * n + gam.identity] != g.identity)
            return false;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                int lhs = g.op(a.apply(s, values[t * n + u]), values[s * n + gam.op(t, u)]);
                int rhs = g.op(values[gam.op(s, t) * n + u], values[s * n + t]);
                if (lhs != rhs) return false;
            }
    return true;
}

Cocycle2 make_cocycle2(GammaGroup a, std::vector<int> values) {
    if (!a.g->is_abelian()) throw ValidationError("NotAbelian", "degree-2 coefficients must be abelian");
    if (!is_cocycle2(a, values))
        throw ValidationError("NotACocycle", "degree-2 cocycle condition fails");
    return Cocycle2{std::move(a), std::move(values)};
}

Cocycle2 trivial_cocycle2(GammaGroup a) {
    std::vector<int> v(a.gamma->order * a.gamma->order, a.g->identity);
    return Cocycle2{std::move(a), std::move(v)};
}

std::vector<std::vector<int>> all_cocycle2_values(const GammaGroup& a) {
    if (!a.g->is_abelian()) throw ValidationError("NotAbelian", "degree-2 coefficients must be abelian");
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    int n = gam.order;

    // Non-identity pairs are the unknowns, filled in a fixed order with
    // incremental checking: an identity (s,t,u) is checked as soon as all
    // pair entries it mentions are known.
    std::vector<int> var_of(n * n, -1);
    std::vector<int> pair_of;  // variable -> pair index
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (s != gam.identity && t != gam.identity) {
                var_of[s * n + t] = static_cast<int>(pair_of.size());
                pair_of.push_back(s * n + t);
            }
    int nvars = static_cast<int>(pair_of.size());

    struct Identity {
        int s, t, u;
        int latest;  // last variable index among its entries
    };
    std::vector<std::vector<Identity>> by_latest(nvars);
    std::vector<Identity> immediate;  // identities with no unknowns (all trivial)
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                int latest = -1;
                for (int p : {t * n + u, s * n + gam.op(t, u), gam.op(s, t) * n + u, s * n + t})
                    latest = std::max(latest, var_of[p]);
                if (latest < 0)
                    immediate.push_back({s, t, u, latest});
                else
                    by_latest[latest].push_back({s, t, u, latest});
            }

    std::vector<int> values(n * n, g.identity);
    auto holds = [&](const Identity& id) {
        int lhs = g.op(a.apply(id.s, values[id.t * n + id.u]),
                       values[id.s * n + gam.op(id.t, id.u)]);
        int rhs = g.op(values[gam.op(id.s, id.t) * n + id.u], values[id.s * n + id.t]);
        return lhs == rhs;
    };
    for (const auto& id : immediate)
        if (!holds(id)) return {};

    std::vector<std::vector<int>> out;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == nvars) {
            out.push_back(values);
            return;
        }
        for (int x = 0; x < g.order; ++x) {
            values[pair_of[v]] = x;
            bool ok = true;
            for (const auto& id : by_latest[v])
                if (!holds(id)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, v + 1);
        }
        values[pair_of[v]] = g.identity;
    };
    rec(rec, 0);
    return out;
}

std::vector<int> coboundary2(const GammaGroup& a, const std::vector<int>& b) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    int n = gam.order;
    std::vector<int> v(n * n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            v[s * n + t] = g.op(g.op(a.apply(s, b[t]), g.inverse(b[gam.op(s, t)])), b[s]);
    return v;
}

namespace {

// All normalized 1-cochains b (arbitrary maps with b(e) = e).
void for_each_cochain1(const GammaGroup& a, const std::function<void(const std::vector<int>&)>& fn) {
    const auto& gam = *a.gamma;
    int n = gam.order;
    std::vector<int> b(n, a.g->identity);
    std::vector<int> free_slots;
    for (int s = 0; s < n; ++s)
        if (s != gam.identity) free_slots.push_back(s);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == free_slots.size()) {
            fn(b);
            return;
        }
        for (int x = 0; x < a.g->order; ++x) {
            b[free_slots[i]] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<int> canonical_cocycle2(const GammaGroup& a, const std::vector<int>& values) {
    const auto& g = *a.g;
    std::vector<int> best = values;
    for_each_cochain1(a, [&](const std::vector<int>& b) {
        auto d = coboundary2(a, b);
        std::vector<int> w(values.size());
        for (size_t i = 0; i < values.size(); ++i) w[i] = g.op(values[i], d[i]);
        best = std::min(best, w);
    });
    return best;
}

int H2Classes::class_of(const std::vector<int>& values) const {
    auto canon = canonical_cocycle2(carrier, values);
    for (int i = 0; i < size(); ++i)
        if (reps[i].values == canon) return i;
    return -1;
}

int H2Classes::trivial_class() const {
    return class_of(std::vector<int>(carrier.gamma->order * carrier.gamma->order,
                                     carrier.g->identity));
}

int H2Classes::compose(int a, int b) const {
    const auto& g = *carrier.g;
    std::vector<int> v(reps[a].values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = g.op(reps[a].values[i], reps[b].values[i]);
    return class_of(v);
}

int H2Classes::inverse(int a) const {
    const auto& g = *carrier.g;
    std::vector<int> v(reps[a].values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = g.inverse(reps[a].values[i]);
    return class_of(v);
}

H2Classes h2_classes(const GammaGroup& a) {
    if (!a.g->is_abelian()) throw ValidationError("NotAbelian", "degree-2 coefficients must be abelian");
    std::vector<std::vector<int>> canon;
    for (auto& v : all_cocycle2_values(a)) canon.push_back(canonical_cocycle2(a, v));
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    H2Classes h;
    h.carrier = a;
    for (auto& v : canon) h.reps.push_back(Cocycle2{a, v});
    return h;
}

Cocycle2 restrict_cocycle2(const Cocycle2& c, const GroupHom& f) {
    auto carrier = restrict_action(c.carrier, f);
    int n = f.src->order;
    int m = c.carrier.gamma->order;
    std::vector<int> v(n * n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) v[s * n + t] = c.values[f.map[s] * m + f.map[t]];
    return make_cocycle2(std::move(carrier), std::move(v));
}

}  // namespace patchlab
