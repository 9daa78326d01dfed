#include "patchlab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "patchlab/errors.hpp"

namespace patchlab {

int FiniteGroup::power(int a, int n) const {
    int r = identity;
    for (int i = 0; i < n; ++i) r = op(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int x = a, n = 1;
    while (x != identity) {
        x = op(x, a);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
    return order == other.order && identity == other.identity && mul == other.mul;
}

std::string FiniteGroup::label(int a) const {
    if (a >= 0 && a < static_cast<int>(labels.size()) && !labels[a].empty()) return labels[a];
    return std::to_string(a);
}

FiniteGroup make_group(int order, std::vector<int> mul, std::vector<std::string> labels,
                       std::string name) {
    if (order <= 0) throw ValidationError("NotClosed", "order must be positive");
    if (static_cast<int>(mul.size()) != order * order)
        throw ValidationError("NotClosed", "multiplication table has wrong size");
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            int p = mul[a * order + b];
            if (p < 0 || p >= order)
                throw ValidationError("NotClosed", "table entry out of range", {a, b, p});
        }

    // Two-sided identity.
    int identity = -1;
    for (int e = 0; e < order; ++e) {
        bool ok = true;
        for (int a = 0; a < order && ok; ++a)
            ok = mul[e * order + a] == a && mul[a * order + e] == a;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw ValidationError("NoIdentity", "no two-sided identity element");

    std::vector<int> inv(order, -1);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b)
            if (mul[a * order + b] == identity && mul[b * order + a] == identity) {
                inv[a] = b;
                break;
            }
        if (inv[a] < 0) throw ValidationError("NoInverse", "element has no two-sided inverse", {a});
    }

    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c) {
                int ab_c = mul[mul[a * order + b] * order + c];
                int a_bc = mul[a * order + mul[b * order + c]];
                if (ab_c != a_bc)
                    throw ValidationError("NonAssociative", "associativity fails", {a, b, c});
            }

    FiniteGroup g;
    g.order = order;
    g.mul = std::move(mul);
    g.identity = identity;
    g.inv = std::move(inv);
    g.labels = std::move(labels);
    g.name = std::move(name);
    return g;
}

GroupPtr make_group_ptr(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

FiniteGroup cyclic_group(int n) {
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    return make_group(n, std::move(mul), {}, "C" + std::to_string(n));
}

FiniteGroup trivial_group() { return cyclic_group(1); }

namespace {

std::vector<std::vector<int>> all_permutations(int degree) {
    std::vector<int> p(degree);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<int> compose_perm(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
    return h;
}

bool perm_is_even(const std::vector<int>& p) {
    int trans = 0;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        trans += static_cast<int>(len) - 1;
    }
    return trans % 2 == 0;
}

FiniteGroup group_from_perms(std::vector<std::vector<int>> elems, std::string name) {
    std::sort(elems.begin(), elems.end());
    int n = static_cast<int>(elems.size());
    auto index_of = [&](const std::vector<int>& p) {
        auto it = std::lower_bound(elems.begin(), elems.end(), p);
        return static_cast<int>(it - elems.begin());
    };
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = index_of(compose_perm(elems[a], elems[b]));
    return make_group(n, std::move(mul), {}, std::move(name));
}

}  // namespace

FiniteGroup symmetric_group(int degree) {
    return group_from_perms(all_permutations(degree), "S" + std::to_string(degree));
}

FiniteGroup alternating_group(int degree) {
    std::vector<std::vector<int>> evens;
    for (auto& p : all_permutations(degree))
        if (perm_is_even(p)) evens.push_back(p);
    return group_from_perms(std::move(evens), "A" + std::to_string(degree));
}

FiniteGroup dihedral_group(int n) {
    // Elements (i, s): rotation by i, reflection flag s. (i,s)(j,t) = (i + (-1)^s j, s+t).
    int order = 2 * n;
    auto idx = [&](int i, int s) { return ((i % n + n) % n) + n * s; };
    std::vector<int> mul(order * order);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 2; ++s)
            for (int j = 0; j < n; ++j)
                for (int t = 0; t < 2; ++t)
                    mul[idx(i, s) * order + idx(j, t)] = idx(s ? i - j : i + j, (s + t) % 2);
    return make_group(order, std::move(mul), {}, "D" + std::to_string(n));
}

FiniteGroup quaternion_group() {
    // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    auto neg = [](int x) { return x ^ 1; };
    std::vector<int> mul(64, -1);
    auto set = [&](int a, int b, int c) { mul[a * 8 + b] = c; };
    for (int a = 0; a < 8; ++a) {
        set(0, a, a);
        set(a, 0, a);
        set(1, a, neg(a));
        if (a != 0) set(a, 1, neg(a));
    }
    // i*i = j*j = k*k = -1; i*j = k, j*k = i, k*i = j.
    int I = 2, J = 4, K = 6;
    auto fill = [&](int x, int y, int z) {
        // x*y = z; derive the sign variants.
        set(x, y, z);
        set(x, neg(y), neg(z));
        set(neg(x), y, neg(z));
        set(neg(x), neg(y), z);
    };
    fill(I, I, 1);
    fill(J, J, 1);
    fill(K, K, 1);
    fill(I, J, K);
    fill(J, K, I);
    fill(K, I, J);
    fill(J, I, neg(K));
    fill(K, J, neg(I));
    fill(I, K, neg(J));
    return make_group(8, std::move(mul),
                      {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, "Q8");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int order = a.order * b.order;
    auto idx = [&](int x, int y) { return x * b.order + y; };
    std::vector<int> mul(order * order);
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < b.order; ++y)
            for (int u = 0; u < a.order; ++u)
                for (int v = 0; v < b.order; ++v)
                    mul[idx(x, y) * order + idx(u, v)] = idx(a.op(x, u), b.op(y, v));
    std::string name = (a.name.empty() || b.name.empty()) ? "" : a.name + "x" + b.name;
    return make_group(order, std::move(mul), {}, name);
}

FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<int>>& action) {
    if (static_cast<int>(action.size()) != h.order)
        throw ValidationError("NotAHomomorphism", "semidirect action needs one automorphism per element");
    int order = n.order * h.order;
    auto idx = [&](int a, int x) { return a * h.order + x; };
    std::vector<int> mul(order * order);
    for (int a = 0; a < n.order; ++a)
        for (int x = 0; x < h.order; ++x)
            for (int b = 0; b < n.order; ++b)
                for (int y = 0; y < h.order; ++y)
                    mul[idx(a, x) * order + idx(b, y)] = idx(n.op(a, action[x][b]), h.op(x, y));
    return make_group(order, std::move(mul));
}

FiniteGroup permutation_group(int degree, const std::vector<std::vector<int>>& generators) {
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> closure{id};
    std::queue<std::vector<int>> work;
    work.push(id);
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree)
            throw ValidationError("NotClosed", "generator has wrong degree");
        if (closure.insert(g).second) work.push(g);
    }
    while (!work.empty()) {
        auto p = work.front();
        work.pop();
        for (const auto& g : generators) {
            auto q = compose_perm(p, g);
            if (closure.insert(q).second) work.push(q);
        }
    }
    std::vector<std::vector<int>> elems(closure.begin(), closure.end());
    return group_from_perms(std::move(elems), "");
}

bool GroupHom::is_injective() const {
    std::vector<bool> hit(dst->order, false);
    for (int x : map) {
        if (hit[x]) return false;
        hit[x] = true;
    }
    return static_cast<int>(map.size()) <= dst->order;
}

bool GroupHom::is_surjective() const {
    std::vector<bool> hit(dst->order, false);
    for (int x : map) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

GroupHom make_hom(GroupPtr src, GroupPtr dst, std::vector<int> map) {
    if (static_cast<int>(map.size()) != src->order)
        throw ValidationError("NotAHomomorphism", "map table has wrong size");
    for (int x : map)
        if (x < 0 || x >= dst->order)
            throw ValidationError("NotAHomomorphism", "map value out of range", {x});
    for (int a = 0; a < src->order; ++a)
        for (int b = 0; b < src->order; ++b)
            if (map[src->op(a, b)] != dst->op(map[a], map[b]))
                throw ValidationError("NotAHomomorphism", "f(ab) != f(a)f(b)", {a, b});
    return GroupHom{std::move(src), std::move(dst), std::move(map)};
}

GroupHom identity_hom(GroupPtr g) {
    std::vector<int> map(g->order);
    std::iota(map.begin(), map.end(), 0);
    return GroupHom{g, g, std::move(map)};
}

GroupHom trivial_hom(GroupPtr src, GroupPtr dst) {
    std::vector<int> map(src->order, dst->identity);
    return GroupHom{std::move(src), std::move(dst), std::move(map)};
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
    std::vector<int> map(g.src->order);
    for (int x = 0; x < g.src->order; ++x) map[x] = f.map[g.map[x]];
    return GroupHom{g.src, f.dst, std::move(map)};
}

int Subgroup::index_of(int parent_elt) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), parent_elt);
    if (it == elements.end() || *it != parent_elt) return -1;
    return static_cast<int>(it - elements.begin());
}

GroupHom Subgroup::inclusion() const {
    return GroupHom{make_group_ptr(group), parent, elements};
}

Subgroup make_subgroup(GroupPtr parent, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    int n = static_cast<int>(elements.size());
    auto idx = [&](int e) {
        auto it = std::lower_bound(elements.begin(), elements.end(), e);
        if (it == elements.end() || *it != e)
            throw ValidationError("NotClosed", "subset is not closed under multiplication", {e});
        return static_cast<int>(it - elements.begin());
    };
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = idx(parent->op(elements[a], elements[b]));
    Subgroup s;
    s.parent = std::move(parent);
    s.group = make_group(n, std::move(mul));
    s.elements = std::move(elements);
    return s;
}

Subgroup generated_subgroup(GroupPtr parent, const std::vector<int>& generators) {
    std::set<int> closure{parent->identity};
    std::queue<int> work;
    work.push(parent->identity);
    for (int g : generators)
        if (closure.insert(g).second) work.push(g);
    while (!work.empty()) {
        int x = work.front();
        work.pop();
        for (int g : generators) {
            for (int y : {parent->op(x, g), parent->op(g, x)})
                if (closure.insert(y).second) work.push(y);
        }
    }
    return make_subgroup(parent, std::vector<int>(closure.begin(), closure.end()));
}

Subgroup center(GroupPtr g) {
    std::vector<int> elems;
    for (int z = 0; z < g->order; ++z) {
        bool central = true;
        for (int a = 0; a < g->order && central; ++a) central = g->op(z, a) == g->op(a, z);
        if (central) elems.push_back(z);
    }
    return make_subgroup(std::move(g), std::move(elems));
}

bool is_normal(const Subgroup& s) {
    const auto& g = *s.parent;
    for (int h : s.elements)
        for (int a = 0; a < g.order; ++a)
            if (!s.contains(g.conjugate(a, h))) return false;
    return true;
}

std::pair<FiniteGroup, GroupHom> quotient(GroupPtr g, const Subgroup& normal) {
    if (!is_normal(normal)) throw ValidationError("NotNormal", "subgroup is not normal");
    int n = g->order;
    std::vector<int> coset(n, -1);
    std::vector<int> reps;
    for (int a = 0; a < n; ++a) {
        if (coset[a] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int h : normal.elements) coset[g->op(a, h)] = c;
    }
    int q = static_cast<int>(reps.size());
    std::vector<int> mul(q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) mul[a * q + b] = coset[g->op(reps[a], reps[b])];
    FiniteGroup qg = make_group(q, std::move(mul));
    GroupHom proj{g, make_group_ptr(qg), std::vector<int>(coset.begin(), coset.end())};
    return {std::move(qg), std::move(proj)};
}

std::vector<int> generating_set(const FiniteGroup& g) {
    std::vector<int> gens;
    std::set<int> closure{g.identity};
    for (int a = 0; a < g.order && static_cast<int>(closure.size()) < g.order; ++a) {
        if (closure.count(a)) continue;
        gens.push_back(a);
        auto sub = generated_subgroup(make_group_ptr(g), gens);
        closure = std::set<int>(sub.elements.begin(), sub.elements.end());
    }
    return gens;
}

namespace {

// Extends generator images to a full map by closure; returns empty on conflict.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& a, const FiniteGroup& b,
                                           const std::vector<int>& gens,
                                           const std::vector<int>& images) {
    std::vector<int> map(a.order, -1);
    map[a.identity] = b.identity;
    std::vector<int> frontier{a.identity};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (size_t i = 0; i < gens.size(); ++i) {
                int y = a.op(x, gens[i]);
                int fy = b.op(map[x], images[i]);
                if (map[y] < 0) {
                    map[y] = fy;
                    next.push_back(y);
                } else if (map[y] != fy) {
                    return std::nullopt;
                }
            }
        }
        frontier = std::move(next);
    }
    for (int x = 0; x < a.order; ++x)
        if (map[x] < 0) return std::nullopt;
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < a.order; ++y)
            if (map[a.op(x, y)] != b.op(map[x], map[y])) return std::nullopt;
    return map;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order != b.order) return std::nullopt;
    auto gens = generating_set(a);
    if (gens.empty()) {
        return std::vector<int>{b.identity};  // trivial group
    }
    // Candidate images: elements of equal order.
    std::vector<std::vector<int>> candidates(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        int ord = a.element_order(gens[i]);
        for (int y = 0; y < b.order; ++y)
            if (b.element_order(y) == ord) candidates[i].push_back(y);
        if (candidates[i].empty()) return std::nullopt;
    }
    std::vector<int> images(gens.size());
    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == gens.size()) {
            auto map = extend_hom(a, b, gens, images);
            if (map) {
                std::vector<bool> hit(b.order, false);
                for (int v : *map) hit[v] = true;
                if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) {
                    found = std::move(map);
                    return true;
                }
            }
            return false;
        }
        for (int c : candidates[i]) {
            images[i] = c;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

bool are_isomorphic_groups(const FiniteGroup& a, const FiniteGroup& b) {
    return find_isomorphism(a, b).has_value();
}

}  // namespace patchlab
