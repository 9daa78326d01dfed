#include "patchlab/hyper.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "patchlab/errors.hpp"

namespace patchlab {

// ---------------------------------------------------------------------------
// Degree 0
// ---------------------------------------------------------------------------

bool is_hyper_cocycle0(const GammaGroup& a, const std::vector<int>& u, int phi,
                       H0Orientation orientation) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    if (u[gam.identity] != g.identity) return false;
    for (int s = 0; s < gam.order; ++s)
        for (int t = 0; t < gam.order; ++t) {
            int expect = orientation == H0Orientation::UStandard
                             ? g.op(u[s], a.apply(s, u[t]))
                             : g.op(a.apply(s, u[t]), u[s]);
            if (u[gam.op(s, t)] != expect) return false;
        }
    for (int s = 0; s < gam.order; ++s) {
        int inner = auts.inner_of(u[s]);
        int sphi = a.apply_on_aut(s, phi);
        int expect = orientation == H0Orientation::UStandard
                         ? auts.compose_idx(phi, auts.inverse_idx(sphi))
                         : auts.compose_idx(sphi, auts.inverse_idx(phi));
        if (inner != expect) return false;
    }
    return true;
}

namespace {

std::pair<int, std::vector<int>> twist_h0(const GammaGroup& a, int phi, const std::vector<int>& u,
                                          int b, H0Orientation orientation) {
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    std::vector<int> w(u.size());
    int phi2;
    if (orientation == H0Orientation::UStandard) {
        for (int s = 0; s < a.gamma->order; ++s)
            w[s] = g.op(g.op(b, u[s]), g.inverse(a.apply(s, b)));
        phi2 = auts.compose_idx(auts.inner_of(b), phi);
    } else {
        for (int s = 0; s < a.gamma->order; ++s)
            w[s] = g.op(g.op(g.inverse(a.apply(s, b)), u[s]), b);
        phi2 = auts.compose_idx(auts.inner_of(g.inverse(b)), phi);
    }
    return {phi2, std::move(w)};
}

std::pair<int, std::vector<int>> canonical_h0(const GammaGroup& a, int phi,
                                              const std::vector<int>& u,
                                              H0Orientation orientation) {
    auto best = std::make_pair(phi, u);
    for (int b = 0; b < a.g->order; ++b)
        best = std::min(best, twist_h0(a, phi, u, b, orientation));
    return best;
}

std::vector<HyperCocycle0> enumerate_h0_pairs(const GammaGroup& a, H0Orientation orientation) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    auto zc = center(a.g);
    auto gens = generating_set(gam);
    std::vector<HyperCocycle0> out;

    for (int phi = 0; phi < auts.size(); ++phi) {
        // u(s) is forced up to the center by the Int condition.
        std::vector<int> base(gam.order, -1);
        bool feasible = true;
        for (int s = 0; s < gam.order && feasible; ++s) {
            int sphi = a.apply_on_aut(s, phi);
            int req = orientation == H0Orientation::UStandard
                          ? auts.compose_idx(phi, auts.inverse_idx(sphi))
                          : auts.compose_idx(sphi, auts.inverse_idx(phi));
            auto witness = auts.inner_witness[req];
            if (!witness)
                feasible = false;
            else
                base[s] = *witness;
        }
        if (!feasible) continue;

        if (gens.empty()) {
            std::vector<int> u(gam.order, g.identity);
            if (is_hyper_cocycle0(a, u, phi, orientation))
                out.push_back({a, std::move(u), phi});
            continue;
        }

        std::vector<int> gen_vals(gens.size());
        auto try_extend = [&]() {
            std::vector<int> u(gam.order, -1);
            u[gam.identity] = g.identity;
            std::vector<int> frontier{gam.identity};
            while (!frontier.empty()) {
                std::vector<int> next;
                for (int s : frontier)
                    for (size_t i = 0; i < gens.size(); ++i) {
                        int st = gam.op(s, gens[i]);
                        int val = orientation == H0Orientation::UStandard
                                      ? g.op(u[s], a.apply(s, gen_vals[i]))
                                      : g.op(a.apply(s, gen_vals[i]), u[s]);
                        if (u[st] < 0) {
                            u[st] = val;
                            next.push_back(st);
                        } else if (u[st] != val) {
                            return;
                        }
                    }
                frontier = std::move(next);
            }
            if (is_hyper_cocycle0(a, u, phi, orientation)) out.push_back({a, std::move(u), phi});
        };
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == gens.size()) {
                try_extend();
                return;
            }
            for (int z : zc.elements) {
                gen_vals[i] = g.op(z, base[gens[i]]);
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

std::vector<HyperCocycle0> h0_class_reps(const GammaGroup& a, H0Orientation orientation) {
    std::vector<std::pair<int, std::vector<int>>> canon;
    for (const auto& pair : enumerate_h0_pairs(a, orientation))
        canon.push_back(canonical_h0(a, pair.phi, pair.u, orientation));
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    std::vector<HyperCocycle0> reps;
    for (auto& [phi, u] : canon) reps.push_back({a, std::move(u), phi});
    return reps;
}

}  // namespace

const H0Calibration& calibrate_h0_orientation() {
    static const H0Calibration cal = [] {
        H0Calibration c{H0Orientation::UStandard, true, true};
        auto z2 = make_group_ptr(cyclic_group(2));
        auto z3 = make_group_ptr(cyclic_group(3));
        // Z/2 acting on Z/3 by inversion, and Z/2 on Z/2 trivially.
        std::vector<int> inv_table{0, 2, 1};
        auto a1 = make_gamma_group_on_generators(z2, z3, {{1, inv_table}});
        auto a2 = make_gamma_group_trivial(z2, z2);
        for (const auto& a : {a1, a2}) {
            size_t object = enumerate_bitorsors(a, a).size();
            if (h0_class_reps(a, H0Orientation::UStandard).size() != object)
                c.standard_ok = false;
            if (h0_class_reps(a, H0Orientation::UOpposite).size() != object)
                c.opposite_ok = false;
        }
        if (c.standard_ok)
            c.frozen = H0Orientation::UStandard;
        else if (c.opposite_ok)
            c.frozen = H0Orientation::UOpposite;
        else
            throw CalibrationMismatch("CalibrationMismatch",
                                      "no degree-0 orientation matches the bitorsor oracle");
        return c;
    }();
    return cal;
}

std::string h0_orientation_name() {
    return calibrate_h0_orientation().frozen == H0Orientation::UStandard
               ? "u(st)=u(s)*^su(t); Int(u(s))=phi o ^s(phi)^-1"
               : "u(st)=^su(t)*u(s); Int(u(s))=^s(phi) o phi^-1";
}

int H0Classes::class_of(const std::vector<int>& u, int phi) const {
    auto canon = canonical_h0(carrier, phi, u, orientation);
    for (int i = 0; i < size(); ++i)
        if (reps[i].phi == canon.first && reps[i].u == canon.second) return i;
    return -1;
}

int H0Classes::trivial_class() const {
    return class_of(std::vector<int>(carrier.gamma->order, carrier.g->identity),
                    carrier.auts->identity_index);
}

namespace {

// (phi, u) with u in the standard orientation.
std::pair<int, std::vector<int>> to_standard(const GammaGroup& a, int phi,
                                             const std::vector<int>& u,
                                             H0Orientation orientation) {
    if (orientation == H0Orientation::UStandard) return {phi, u};
    std::vector<int> w(u.size());
    for (size_t s = 0; s < u.size(); ++s) w[s] = a.g->inverse(u[s]);
    return {phi, std::move(w)};
}

std::pair<int, std::vector<int>> from_standard(const GammaGroup& a, int phi,
                                               const std::vector<int>& u,
                                               H0Orientation orientation) {
    return to_standard(a, phi, u, orientation);  // the conversion is an involution
}

}  // namespace

int H0Classes::compose(int ca, int cb) const {
    const auto& g = *carrier.g;
    const auto& auts = *carrier.auts;
    auto [phi1, u1] = to_standard(carrier, reps[ca].phi, reps[ca].u, orientation);
    auto [phi2, u2] = to_standard(carrier, reps[cb].phi, reps[cb].u, orientation);
    int phi = auts.compose_idx(phi1, phi2);
    std::vector<int> u(u1.size());
    for (size_t s = 0; s < u.size(); ++s) u[s] = g.op(auts.apply(phi1, u2[s]), u1[s]);
    auto [p, v] = from_standard(carrier, phi, u, orientation);
    return class_of(v, p);
}

int H0Classes::inverse(int ca) const {
    const auto& g = *carrier.g;
    const auto& auts = *carrier.auts;
    auto [phi1, u1] = to_standard(carrier, reps[ca].phi, reps[ca].u, orientation);
    int phi = auts.inverse_idx(phi1);
    std::vector<int> u(u1.size());
    for (size_t s = 0; s < u.size(); ++s) u[s] = auts.apply(phi, g.inverse(u1[s]));
    auto [p, v] = from_standard(carrier, phi, u, orientation);
    return class_of(v, p);
}

int H0Classes::restrict_class(int cls, const GroupHom& f, const H0Classes& target) const {
    const auto& rep = reps[cls];
    std::vector<int> u(f.src->order);
    for (int s = 0; s < f.src->order; ++s) u[s] = rep.u[f.map[s]];
    return target.class_of(u, rep.phi);
}

bool H0Classes::is_neutral(int cls) const {
    const auto& g = *carrier.g;
    for (int b = 0; b < g.order; ++b) {
        auto [phi, u] = twist_h0(carrier, reps[cls].phi, reps[cls].u, b, orientation);
        if (std::all_of(u.begin(), u.end(), [&](int x) { return x == g.identity; })) return true;
    }
    return false;
}

H0Classes h0_classes_inner(const GammaGroup& a, bool check_object) {
    H0Classes h;
    h.carrier = a;
    h.orientation = calibrate_h0_orientation().frozen;
    h.reps = h0_class_reps(a, h.orientation);
    if (check_object) {
        size_t object = enumerate_bitorsors(a, a).size();
        if (object != h.reps.size())
            throw CalibrationMismatch(
                "CalibrationMismatch",
                "degree-0 class count disagrees with the bitorsor enumeration",
                {static_cast<int>(h.reps.size()), static_cast<int>(object)});
    }
    return h;
}

Bitorsor bitorsor_from_h0(const GammaGroup& a, const std::vector<int>& u, int phi,
                          H0Orientation orientation) {
    auto [p, v] = to_standard(a, phi, u, orientation);
    // Anchored data: r = phi as a table, t = pointwise inverse of standard u.
    std::vector<int> r = a.auts->autos[p];
    std::vector<int> t(v.size());
    for (size_t s = 0; s < v.size(); ++s) t[s] = a.g->inverse(v[s]);
    return anchored_bitorsor(a, a, r, t);
}

HyperCocycle0 h0_from_bitorsor(const GammaGroup& a, const Bitorsor& b, H0Orientation orientation) {
    // Anchor at point 0: relabel points by the left action.
    const auto& g = *a.g;
    int n = b.points;
    std::vector<int> label(n, -1);  // point -> group element
    for (int x = 0; x < g.order; ++x) label[b.act_left(x, 0)] = x;
    auto u_hom = point_trivialization(b, 0);
    int phi = a.auts->index_of(u_hom.map);
    if (phi < 0)
        throw ValidationError("NotAnAction", "point trivialization is not an automorphism");
    std::vector<int> t(a.gamma->order);
    for (int s = 0; s < a.gamma->order; ++s) t[s] = label[b.act_gamma(s, 0)];
    std::vector<int> u(t.size());
    for (size_t s = 0; s < t.size(); ++s) u[s] = g.inverse(t[s]);  // standard orientation
    auto [p, v] = from_standard(a, phi, u, orientation);
    if (!is_hyper_cocycle0(a, v, p, orientation))
        throw ValidationError("NotACocycle", "bitorsor did not produce a degree-0 pair");
    return HyperCocycle0{a, std::move(v), p};
}

GeneralH0 h0_classes(const CrossedModule& cm) {
    GeneralH0 out;
    out.shape = classify_shape(cm);
    switch (out.shape) {
        case CrossedModuleShape::Inner: {
            auto h = h0_classes_inner(cm.g);
            out.reps = h.reps;
            break;
        }
        case CrossedModuleShape::TrivialSource: {
            auto fx = fixed_points(cm.h);
            for (int e : fx.elements)
                out.reps.push_back({cm.g, std::vector<int>(cm.g.gamma->order, 0), e});
            break;
        }
        case CrossedModuleShape::TrivialTarget: {
            auto h1 = h1_classes(cm.g);
            for (const auto& rep : h1.reps) out.reps.push_back({cm.g, rep.values, 0});
            break;
        }
        case CrossedModuleShape::General:
            throw PreconditionFailed(
                "PreconditionFailed",
                "degree-0 classes are supported for G->Aut(G), 1->H and abelian A->1 only");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Degree 1
// ---------------------------------------------------------------------------

int total_twist_auto(const GammaGroup& a, const std::vector<int>& phi, int s) {
    return a.auts->compose_idx(phi[s], a.act[s]);
}

bool is_hyper_cocycle1(const GammaGroup& a, const std::vector<int>& phi,
                       const std::vector<int>& c) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    int n = gam.order;
    if (phi[gam.identity] != auts.identity_index) return false;
    for (int s = 0; s < n; ++s)
        if (c[gam.identity * n + s] != g.identity || c[s * n + gam.identity] != g.identity)
            return false;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            int lhs = auts.compose_idx(phi[s], a.apply_on_aut(s, phi[t]));
            int rhs = auts.compose_idx(auts.inner_of(c[s * n + t]), phi[gam.op(s, t)]);
            if (lhs != rhs) return false;
        }
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                int tw = total_twist_auto(a, phi, s);
                int lhs = g.op(auts.apply(tw, c[t * n + u]), c[s * n + gam.op(t, u)]);
                int rhs = g.op(c[s * n + t], c[gam.op(s, t) * n + u]);
                if (lhs != rhs) return false;
            }
    return true;
}

HyperCocycle1 twist_hyper_cocycle1(const HyperCocycle1& z, const std::vector<int>& a) {
    const auto& A = z.carrier;
    const auto& gam = *A.gamma;
    const auto& g = *A.g;
    const auto& auts = *A.auts;
    int n = gam.order;
    HyperCocycle1 w;
    w.carrier = A;
    w.phi.resize(n);
    w.c.resize(n * n);
    for (int s = 0; s < n; ++s) w.phi[s] = auts.compose_idx(auts.inner_of(a[s]), z.phi[s]);
    for (int s = 0; s < n; ++s) {
        int tw = total_twist_auto(A, z.phi, s);
        for (int t = 0; t < n; ++t) {
            int v = g.op(a[s], auts.apply(tw, a[t]));
            v = g.op(v, z.c[s * n + t]);
            v = g.op(v, g.inverse(a[gam.op(s, t)]));
            w.c[s * n + t] = v;
        }
    }
    return w;
}

namespace {

std::pair<std::vector<int>, std::vector<int>> canonical_h1(const HyperCocycle1& z) {
    const auto& A = z.carrier;
    const auto& gam = *A.gamma;
    int n = gam.order;
    auto best = std::make_pair(z.phi, z.c);
    std::vector<int> a(n, A.g->identity);
    std::vector<int> slots;
    for (int s = 0; s < n; ++s)
        if (s != gam.identity) slots.push_back(s);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == slots.size()) {
            auto w = twist_hyper_cocycle1(z, a);
            best = std::min(best, std::make_pair(std::move(w.phi), std::move(w.c)));
            return;
        }
        for (int x = 0; x < A.g->order; ++x) {
            a[slots[i]] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace

int H1CrossedClasses::class_of(const std::vector<int>& phi, const std::vector<int>& c) const {
    HyperCocycle1 z{carrier, phi, c};
    auto canon = canonical_h1(z);
    for (int i = 0; i < size(); ++i)
        if (reps[i].phi == canon.first && reps[i].c == canon.second) return i;
    return -1;
}

int H1CrossedClasses::trivial_class() const {
    int n = carrier.gamma->order;
    return class_of(std::vector<int>(n, carrier.auts->identity_index),
                    std::vector<int>(n * n, carrier.g->identity));
}

int H1CrossedClasses::restrict_class(int cls, const GroupHom& f,
                                     const H1CrossedClasses& target) const {
    const auto& rep = reps[cls];
    int n = f.src->order;
    int m = carrier.gamma->order;
    std::vector<int> phi(n), c(n * n);
    for (int s = 0; s < n; ++s) phi[s] = rep.phi[f.map[s]];
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) c[s * n + t] = rep.c[f.map[s] * m + f.map[t]];
    return target.class_of(phi, c);
}

bool H1CrossedClasses::is_neutral(int cls) const {
    const auto& A = carrier;
    const auto& gam = *A.gamma;
    int n = gam.order;
    const auto& rep = reps[cls];
    HyperCocycle1 z{A, rep.phi, rep.c};
    bool found = false;
    std::vector<int> a(n, A.g->identity);
    std::vector<int> slots;
    for (int s = 0; s < n; ++s)
        if (s != gam.identity) slots.push_back(s);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (found) return;
        if (i == slots.size()) {
            auto w = twist_hyper_cocycle1(z, a);
            if (std::all_of(w.c.begin(), w.c.end(),
                            [&](int x) { return x == A.g->identity; }))
                found = true;
            return;
        }
        for (int x = 0; x < A.g->order && !found; ++x) {
            a[slots[i]] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return found;
}

H1CrossedClasses h1_crossed_classes(const GammaGroup& a, long long max_candidates) {
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    int n = gam.order;
    auto zc = center(a.g);

    std::vector<int> nonid;
    for (int s = 0; s < n; ++s)
        if (s != gam.identity) nonid.push_back(s);

    long long phis = 1;
    for (size_t i = 0; i < nonid.size(); ++i) phis *= auts.size();
    long long per_phi = 1;
    for (size_t i = 0; i < nonid.size() * nonid.size(); ++i) {
        per_phi *= static_cast<long long>(zc.elements.size());
        if (per_phi > max_candidates) break;
    }
    if (phis > max_candidates)
        throw ResourceLimit("ResourceLimit", "degree-1 enumeration bound exceeded");

    // Variables: non-identity pairs, row-major; identity (s,t,u) is checked
    // once all four pair entries are assigned.
    std::vector<int> var_of(n * n, -1);
    std::vector<int> pair_of;
    for (int s : nonid)
        for (int t : nonid) {
            var_of[s * n + t] = static_cast<int>(pair_of.size());
            pair_of.push_back(s * n + t);
        }
    int nvars = static_cast<int>(pair_of.size());
    struct Id2 {
        int s, t, u;
    };
    std::vector<std::vector<Id2>> by_latest(std::max(nvars, 1));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                int latest = -1;
                for (int p : {t * n + u, s * n + gam.op(t, u), gam.op(s, t) * n + u, s * n + t})
                    latest = std::max(latest, var_of[p]);
                if (latest >= 0) by_latest[latest].push_back({s, t, u});
            }

    std::vector<HyperCocycle1> raw;
    std::vector<int> phi(n, auts.identity_index);
    std::vector<int> c(n * n, g.identity);

    auto id2_holds = [&](const Id2& id) {
        int tw = auts.compose_idx(phi[id.s], a.act[id.s]);
        int lhs = g.op(auts.apply(tw, c[id.t * n + id.u]), c[id.s * n + gam.op(id.t, id.u)]);
        int rhs = g.op(c[id.s * n + id.t], c[gam.op(id.s, id.t) * n + id.u]);
        return lhs == rhs;
    };

    auto enumerate_c = [&]() {
        // Base witnesses for Int(c(s,t)) from the first identity.
        std::vector<int> base(nvars, -1);
        for (int v = 0; v < nvars; ++v) {
            int s = pair_of[v] / n, t = pair_of[v] % n;
            int lhs = auts.compose_idx(phi[s], a.apply_on_aut(s, phi[t]));
            int need = auts.compose_idx(lhs, auts.inverse_idx(phi[gam.op(s, t)]));
            auto w = auts.inner_witness[need];
            if (!w) return;  // this phi assignment admits no factor set
            base[v] = *w;
        }
        auto rec = [&](auto&& self, int v) -> void {
            if (v == nvars) {
                if (is_hyper_cocycle1(a, phi, c)) raw.push_back({a, phi, c});
                return;
            }
            for (int z : zc.elements) {
                c[pair_of[v]] = g.op(z, base[v]);
                bool ok = true;
                for (const auto& id : by_latest[v])
                    if (!id2_holds(id)) {
                        ok = false;
                        break;
                    }
                if (ok) self(self, v + 1);
            }
            c[pair_of[v]] = g.identity;
        };
        rec(rec, 0);
    };

    auto rec_phi = [&](auto&& self, size_t i) -> void {
        if (i == nonid.size()) {
            enumerate_c();
            return;
        }
        for (int p = 0; p < auts.size(); ++p) {
            phi[nonid[i]] = p;
            self(self, i + 1);
        }
        phi[nonid[i]] = auts.identity_index;
    };
    rec_phi(rec_phi, 0);

    std::vector<std::pair<std::vector<int>, std::vector<int>>> canon;
    for (const auto& z : raw) canon.push_back(canonical_h1(z));
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    H1CrossedClasses h;
    h.carrier = a;
    h.outer = outer_quotient(a.auts);
    for (auto& [p, cc] : canon) h.reps.push_back({a, p, cc});
    for (const auto& rep : h.reps) {
        std::vector<int> band(n);
        for (int s = 0; s < n; ++s) band[s] = h.outer.proj[total_twist_auto(a, rep.phi, s)];
        h.bands.push_back(std::move(band));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

ExtensionGroup extension_from_cocycle(const HyperCocycle1& z) {
    const auto& a = z.carrier;
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    int n = gam.order, m = g.order;
    int order = n * m;
    std::vector<int> mul(order * order);
    auto idx = [&](int gg, int s) { return gg * n + s; };
    for (int g1 = 0; g1 < m; ++g1)
        for (int s = 0; s < n; ++s)
            for (int g2 = 0; g2 < m; ++g2)
                for (int t = 0; t < n; ++t) {
                    int tw = total_twist_auto(a, z.phi, s);
                    int prod = g.op(g.op(g1, auts.apply(tw, g2)), z.c[s * n + t]);
                    mul[idx(g1, s) * order + idx(g2, t)] = idx(prod, gam.op(s, t));
                }
    ExtensionGroup e;
    e.carrier = a;
    e.x = make_group(order, std::move(mul));
    e.xptr = make_group_ptr(e.x);
    return e;
}

ExtensionGroup split_extension(const GammaGroup& a) {
    int n = a.gamma->order;
    HyperCocycle1 z{a, std::vector<int>(n, a.auts->identity_index),
                    std::vector<int>(n * n, a.g->identity)};
    return extension_from_cocycle(z);
}

namespace {

// Runs fn over all normalized maps Gamma -> G.
void for_each_normalized_map(const GammaGroup& a,
                             const std::function<bool(const std::vector<int>&)>& fn) {
    const auto& gam = *a.gamma;
    int n = gam.order;
    std::vector<int> b(n, a.g->identity);
    std::vector<int> slots;
    for (int s = 0; s < n; ++s)
        if (s != gam.identity) slots.push_back(s);
    bool stop = false;
    auto rec = [&](auto&& self, size_t i) -> void {
        if (stop) return;
        if (i == slots.size()) {
            stop = fn(b);
            return;
        }
        for (int x = 0; x < a.g->order && !stop; ++x) {
            b[slots[i]] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

bool table_isomorphism_holds(const FiniteGroup& x1, const FiniteGroup& x2,
                             const std::vector<int>& theta_map) {
    for (int p = 0; p < x1.order; ++p)
        for (int q = 0; q < x1.order; ++q)
            if (theta_map[x1.op(p, q)] != x2.op(theta_map[p], theta_map[q])) return false;
    return true;
}

}  // namespace

bool extensions_strictly_equivalent(const ExtensionGroup& x1, const ExtensionGroup& x2) {
    const auto& a = x1.carrier;
    int n = a.gamma->order;
    bool found = false;
    for_each_normalized_map(a, [&](const std::vector<int>& amap) {
        std::vector<int> theta(x1.x.order);
        for (int gg = 0; gg < a.g->order; ++gg)
            for (int s = 0; s < n; ++s)
                theta[x1.index(gg, s)] = x2.index(a.g->op(gg, amap[s]), s);
        if (table_isomorphism_holds(x1.x, x2.x, theta)) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<std::vector<int>> find_splitting(const ExtensionGroup& x) {
    const auto& a = x.carrier;
    const auto& gam = *a.gamma;
    auto gens = generating_set(gam);
    int n = gam.order;
    if (gens.empty()) return std::vector<int>(n, a.g->identity);
    std::vector<int> images(gens.size());
    std::optional<std::vector<int>> found;
    auto try_extend = [&]() {
        std::vector<int> w(n, -1);  // section: s -> g-part of s(s)
        w[gam.identity] = a.g->identity;
        std::vector<int> frontier{gam.identity};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int s : frontier)
                for (size_t i = 0; i < gens.size(); ++i) {
                    int st = gam.op(s, gens[i]);
                    int prod = x.x.op(x.index(w[s], s), x.index(images[i], gens[i]));
                    if (x.part_gamma(prod) != st) return;
                    int gg = x.part_g(prod);
                    if (w[st] < 0) {
                        w[st] = gg;
                        next.push_back(st);
                    } else if (w[st] != gg) {
                        return;
                    }
                }
            frontier = std::move(next);
        }
        // Full homomorphism check of the section.
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                if (x.x.op(x.index(w[s], s), x.index(w[t], t)) !=
                    x.index(w[gam.op(s, t)], gam.op(s, t)))
                    return;
        found = w;
    };
    auto rec = [&](auto&& self, size_t i) -> void {
        if (found) return;
        if (i == gens.size()) {
            try_extend();
            return;
        }
        for (int gg = 0; gg < a.g->order && !found; ++gg) {
            images[i] = gg;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return found;
}

std::vector<int> split_automorphism_table(const GammaGroup& a, int phi, const std::vector<int>& u) {
    int n = a.gamma->order, m = a.g->order;
    std::vector<int> table(n * m);
    for (int gg = 0; gg < m; ++gg)
        for (int s = 0; s < n; ++s)
            table[gg * n + s] = a.g->op(a.auts->apply(phi, gg), u[s]) * n + s;
    return table;
}

std::vector<Trivialization> extension_trivializations(const ExtensionGroup& x) {
    const auto& a = x.carrier;
    const auto& gam = *a.gamma;
    const auto& g = *a.g;
    const auto& auts = *a.auts;
    int n = gam.order;
    auto split = split_extension(a);
    auto zc = center(a.g);
    std::vector<Trivialization> out;

    // Theta(g,s) = (theta(g) b(s), s). Matching the products (e,s)(g,e)
    // forces theta o Phi_s o theta^-1 o act(s)^-1 to be inner with witness
    // b(s); candidates are then center cosets.
    for (int theta = 0; theta < auts.size(); ++theta) {
        std::vector<int> base(n, -1);
        bool feasible = true;
        for (int s = 0; s < n && feasible; ++s) {
            // Phi_s of the extension x as acting on G: from the table.
            std::vector<int> phis(g.order);
            for (int gg = 0; gg < g.order; ++gg)
                phis[gg] = x.part_g(x.x.op(x.index(g.identity, s), x.index(gg, gam.identity)));
            int phis_idx = auts.index_of(phis);
            if (phis_idx < 0) {
                feasible = false;
                break;
            }
            int need = auts.compose_idx(
                auts.compose_idx(theta, phis_idx),
                auts.inverse_idx(auts.compose_idx(a.act[s], theta)));
            // need = theta o Phi_s o (act(s) o theta)^-1 must be inner.
            auto w = auts.inner_witness[need];
            if (!w)
                feasible = false;
            else
                base[s] = *w;
        }
        if (!feasible) continue;

        std::vector<int> slots;
        for (int s = 0; s < n; ++s)
            if (s != gam.identity) slots.push_back(s);
        std::vector<int> b(n, g.identity);
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == slots.size()) {
                std::vector<int> theta_map(x.x.order);
                for (int gg = 0; gg < g.order; ++gg)
                    for (int s = 0; s < n; ++s)
                        theta_map[x.index(gg, s)] =
                            split.index(g.op(auts.apply(theta, gg), b[s]), s);
                if (table_isomorphism_holds(x.x, split.x, theta_map))
                    out.push_back({theta, b});
                return;
            }
            for (int z : zc.elements) {
                b[slots[i]] = g.op(z, base[slots[i]]);
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

namespace {

void check_exactness(SequenceReport& rep) {
    int nn = static_cast<int>(rep.nodes.size());
    rep.exact_at.assign(nn - 1, false);
    // Node 0: the fiber of the first map over the basepoint is trivial.
    {
        const auto& m = rep.maps[0];
        int base = rep.nodes[1].basepoint;
        bool ok = true;
        for (int i = 0; i < rep.nodes[0].size; ++i)
            if (m.images[i] == base && i != rep.nodes[0].basepoint) ok = false;
        rep.exact_at[0] = ok;
    }
    for (int node = 1; node + 1 < nn; ++node) {
        const auto& in = rep.maps[node - 1];
        const auto& out = rep.maps[node];
        int base = rep.nodes[node + 1].basepoint;
        std::vector<bool> image(rep.nodes[node].size, false);
        for (int v : in.images) image[v] = true;
        bool ok = true;
        for (int i = 0; i < rep.nodes[node].size; ++i)
            if ((out.images[i] == base) != image[i]) ok = false;
        rep.exact_at[node] = ok;
    }
    rep.exact = std::all_of(rep.exact_at.begin(), rep.exact_at.end(), [](bool b) { return b; });
}

std::vector<int> standard_u_of(const H0Classes& h, int cls) {
    auto [phi, u] = [&] {
        const auto& rep = h.reps[cls];
        if (h.orientation == H0Orientation::UStandard) return std::make_pair(rep.phi, rep.u);
        std::vector<int> w(rep.u.size());
        for (size_t s = 0; s < rep.u.size(); ++s) w[s] = h.carrier.g->inverse(rep.u[s]);
        return std::make_pair(rep.phi, std::move(w));
    }();
    (void)phi;
    return u;
}

}  // namespace

SequenceReport myles_sequence(const GammaGroup& a) {
    SequenceReport rep;
    const auto& g = *a.g;
    auto aa = aut_gamma_group(a);

    auto zg = center(a.g);
    std::vector<int> t1;  // Gamma-fixed central elements
    for (int z : zg.elements) {
        bool fx = true;
        for (int s = 0; s < a.gamma->order && fx; ++s) fx = a.apply(s, z) == z;
        if (fx) t1.push_back(z);
    }
    auto t2 = fixed_points(a).elements;
    auto t3 = fixed_points(aa).elements;  // automorphism indices
    auto h0 = h0_classes_inner(a);
    auto h1g = h1_classes(a);
    auto h1aut = h1_classes(aa);
    auto h1cm = h1_crossed_classes(a);

    auto find_in = [](const std::vector<int>& v, int x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };

    rep.nodes = {
        {"H0(Z(G))", static_cast<int>(t1.size()), find_in(t1, g.identity)},
        {"H0(G)", static_cast<int>(t2.size()), find_in(t2, g.identity)},
        {"H0(Aut G)", static_cast<int>(t3.size()), find_in(t3, a.auts->identity_index)},
        {"H0(G->Aut G)", h0.size(), h0.trivial_class()},
        {"H1(G)", h1g.size(), h1g.trivial_class()},
        {"H1(Aut G)", h1aut.size(), h1aut.trivial_class()},
        {"H1(G->Aut G)", h1cm.size(), h1cm.trivial_class()},
    };

    SequenceMap m1{"inclusion", {}};
    for (int z : t1) m1.images.push_back(find_in(t2, z));
    SequenceMap m2{"Int", {}};
    for (int x : t2) m2.images.push_back(find_in(t3, a.auts->inner_of(x)));
    SequenceMap m3{"phi -> (u=e, phi)", {}};
    for (int phi : t3)
        m3.images.push_back(h0.class_of(std::vector<int>(a.gamma->order, g.identity), phi));
    SequenceMap m4{"(u, phi) -> [u]", {}};
    for (int cls = 0; cls < h0.size(); ++cls) m4.images.push_back(h1g.class_of(standard_u_of(h0, cls)));
    SequenceMap m5{"push along Int", {}};
    for (const auto& repc : h1g.reps) {
        std::vector<int> v(repc.values.size());
        for (size_t s = 0; s < v.size(); ++s) v[s] = a.auts->inner_of(repc.values[s]);
        m5.images.push_back(h1aut.class_of(v));
    }
    SequenceMap m6{"psi -> (psi, c=e)", {}};
    for (const auto& repc : h1aut.reps)
        m6.images.push_back(
            h1cm.class_of(repc.values, std::vector<int>(a.gamma->order * a.gamma->order, g.identity)));
    rep.maps = {std::move(m1), std::move(m2), std::move(m3),
                std::move(m4), std::move(m5), std::move(m6)};

    for (const auto& m : rep.maps)
        for (int v : m.images)
            if (v < 0) throw ValidationError("NotACocycle", "sequence map left its target");

    check_exactness(rep);
    rep.notes.push_back("h0-orientation: " + h0_orientation_name());
    return rep;
}

Les2Report les2_sequence(const GammaGroup& a, const std::vector<int>& z_elements) {
    const auto& g = *a.g;
    const auto& gam = *a.gamma;
    const auto& auts = *a.auts;
    int n = gam.order;

    auto zc = center(a.g);
    auto zsub = make_subgroup(a.g, z_elements);
    for (int z : zsub.elements)
        if (!zc.contains(z))
            throw PreconditionFailed("PreconditionFailed", "Z is not central", {z});
    for (int s = 0; s < n; ++s)
        for (int z : zsub.elements)
            if (!zsub.contains(a.apply(s, z)))
                throw PreconditionFailed("PreconditionFailed", "Z is not Gamma-stable", {s, z});
    for (int phi = 0; phi < auts.size(); ++phi)
        for (int z : zsub.elements)
            if (!zsub.contains(auts.apply(phi, z)))
                throw PreconditionFailed("PreconditionFailed", "Z is not characteristic", {phi, z});

    // Quotient with its induced Gamma-action.
    auto [qgroup, proj] = quotient(a.g, zsub);
    auto qptr = proj.dst;
    auto qauts = automorphism_group(qptr);
    // Induced map Aut(G) -> Aut(Q), required surjective.
    std::vector<int> induced(auts.size());
    std::vector<int> section(qauts->size(), -1);  // Aut(Q) -> a lift in Aut(G)
    for (int phi = 0; phi < auts.size(); ++phi) {
        std::vector<int> table(qptr->order, -1);
        for (int x = 0; x < g.order; ++x) table[proj.map[x]] = proj.map[auts.apply(phi, x)];
        int idx = qauts->index_of(table);
        if (idx < 0)
            throw PreconditionFailed("PreconditionFailed",
                                     "automorphism does not descend to the quotient", {phi});
        induced[phi] = idx;
        if (section[idx] < 0) section[idx] = phi;
    }
    for (int i = 0; i < qauts->size(); ++i)
        if (section[i] < 0)
            throw PreconditionFailed("PreconditionFailed", "Aut(G) -> Aut(G/Z) is not surjective",
                                     {i});
    std::vector<int> qact(n);
    for (int s = 0; s < n; ++s) qact[s] = induced[a.act[s]];
    GammaGroup aq;
    aq.gamma = a.gamma;
    aq.g = qptr;
    aq.auts = qauts;
    aq.act = std::move(qact);

    auto comp = is_complete(qptr);
    if (!comp.complete)
        throw PreconditionFailed("PreconditionFailed", "G/Z is not complete");

    // Z as a GammaGroup.
    auto zptr = make_group_ptr(zsub.group);
    auto zauts = automorphism_group(zptr);
    std::vector<int> zact(n);
    for (int s = 0; s < n; ++s) {
        std::vector<int> table(zptr->order);
        for (int i = 0; i < zptr->order; ++i) table[i] = zsub.index_of(a.apply(s, zsub.elements[i]));
        int idx = zauts->index_of(table);
        if (idx < 0) throw PreconditionFailed("PreconditionFailed", "Z action is not by automorphisms");
        zact[s] = idx;
    }
    GammaGroup az;
    az.gamma = a.gamma;
    az.g = zptr;
    az.auts = zauts;
    az.act = std::move(zact);

    // Terms.
    std::vector<int> t1;  // Z^Gamma, as Z-subgroup indices mapped to G elements
    for (int i = 0; i < zptr->order; ++i) {
        int e = zsub.elements[i];
        bool fx = true;
        for (int s = 0; s < n && fx; ++s) fx = a.apply(s, e) == e;
        if (fx) t1.push_back(e);
    }
    std::vector<int> t2;  // Z(G)^Gamma
    for (int z : zc.elements) {
        bool fx = true;
        for (int s = 0; s < n && fx; ++s) fx = a.apply(s, z) == z;
        if (fx) t2.push_back(z);
    }
    auto zq = center(qptr);
    std::vector<int> t3;  // Z(Q)^Gamma (trivial by completeness)
    for (int z : zq.elements) {
        bool fx = true;
        for (int s = 0; s < n && fx; ++s) fx = aq.apply(s, z) == z;
        if (fx) t3.push_back(z);
    }
    auto h1z = h1_classes(az);
    auto h0g = h0_classes_inner(a);
    auto h0q = h0_classes_inner(aq);
    auto h2z = h2_classes(az);
    auto h1cm = h1_crossed_classes(a);

    auto find_in = [](const std::vector<int>& v, int x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };

    Les2Report out;
    auto& rep = out.sequence;
    rep.nodes = {
        {"H0(Z)", static_cast<int>(t1.size()), find_in(t1, g.identity)},
        {"H0(Z(G))", static_cast<int>(t2.size()), find_in(t2, g.identity)},
        {"H0(Z(G/Z))", static_cast<int>(t3.size()), find_in(t3, qptr->identity)},
        {"H1(Z)", h1z.size(), h1z.trivial_class()},
        {"H0(G->Aut G)", h0g.size(), h0g.trivial_class()},
        {"H0(G/Z->Aut G/Z)", h0q.size(), h0q.trivial_class()},
        {"H2(Z)", h2z.size(), h2z.trivial_class()},
        {"H1(G->Aut G)", h1cm.size(), h1cm.trivial_class()},
    };

    SequenceMap f1{"inclusion", {}};
    for (int z : t1) f1.images.push_back(find_in(t2, z));
    SequenceMap f2{"projection", {}};
    for (int z : t2) f2.images.push_back(find_in(t3, proj.map[z]));
    SequenceMap f3{"connecting", {}};
    for (int qz : t3) {
        // Lift and take the 1-cocycle s -> lift * ^s(lift)^-1, valued in Z.
        int lift = 0;
        for (int x = 0; x < g.order; ++x)
            if (proj.map[x] == qz) {
                lift = x;
                break;
            }
        std::vector<int> d(n);
        for (int s = 0; s < n; ++s) {
            int v = g.op(lift, g.inverse(a.apply(s, lift)));
            int zi = zsub.index_of(v);
            if (zi < 0) throw ValidationError("NotACocycle", "connecting value left Z", {qz, s});
            d[s] = zi;
        }
        f3.images.push_back(h1z.class_of(d));
    }
    SequenceMap f4{"H1(Z) -> H0(G->Aut G)", {}};
    for (const auto& repc : h1z.reps) {
        std::vector<int> u(n);
        for (int s = 0; s < n; ++s) u[s] = zsub.elements[repc.values[s]];
        if (h0g.orientation == H0Orientation::UOpposite)
            for (int s = 0; s < n; ++s) u[s] = g.inverse(u[s]);
        f4.images.push_back(h0g.class_of(u, auts.identity_index));
    }
    SequenceMap f5{"projection of pairs", {}};
    for (int cls = 0; cls < h0g.size(); ++cls) {
        const auto& repc = h0g.reps[cls];
        std::vector<int> u(n);
        for (int s = 0; s < n; ++s) u[s] = proj.map[repc.u[s]];
        f5.images.push_back(h0q.class_of(u, induced[repc.phi]));
    }
    SequenceMap f6{"connecting to H2(Z)", {}};
    for (int cls = 0; cls < h0q.size(); ++cls) {
        auto ubar = standard_u_of(h0q, cls);
        int phibar = h0q.reps[cls].phi;
        // Pointwise lift of ubar, then the failure 2-cochain, then the
        // automorphism lift of phibar applied to it.
        std::vector<int> ulift(n);
        for (int s = 0; s < n; ++s)
            for (int x = 0; x < g.order; ++x)
                if (proj.map[x] == ubar[s]) {
                    ulift[s] = x;
                    break;
                }
        int lam = section[phibar];
        std::vector<int> w(n * n);
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                int v = g.op(g.op(ulift[s], a.apply(s, ulift[t])), g.inverse(ulift[gam.op(s, t)]));
                int vv = auts.apply(lam, v);
                int zi = zsub.index_of(vv);
                if (zi < 0)
                    throw ValidationError("NotACocycle", "connecting 2-cochain left Z", {cls, s, t});
                w[s * n + t] = zi;
            }
        if (!is_cocycle2(az, w))
            throw ValidationError("NotACocycle", "connecting 2-cochain is not a cocycle", {cls});
        f6.images.push_back(h2z.class_of(w));
    }
    SequenceMap f7{"H2(Z) -> H1(G->Aut G)", {}};
    for (const auto& repc : h2z.reps) {
        std::vector<int> c(n * n);
        for (int i = 0; i < n * n; ++i) c[i] = zsub.elements[repc.values[i]];
        f7.images.push_back(h1cm.class_of(std::vector<int>(n, auts.identity_index), c));
    }
    rep.maps = {std::move(f1), std::move(f2), std::move(f3), std::move(f4),
                std::move(f5), std::move(f6), std::move(f7)};

    for (const auto& m : rep.maps)
        for (int v : m.images)
            if (v < 0) throw ValidationError("NotACocycle", "sequence map left its target");

    check_exactness(rep);
    out.zero_map_holds = std::all_of(rep.maps[5].images.begin(), rep.maps[5].images.end(),
                                     [&](int v) { return v == h2z.trivial_class(); });
    rep.notes.push_back("h0-orientation: " + h0_orientation_name());

    int aut_kernel = 0;
    for (int phi = 0; phi < auts.size(); ++phi)
        if (induced[phi] == qauts->identity_index) ++aut_kernel;
    out.aut_kernel_trivial = aut_kernel == 1;
    out.asserted_at.assign(rep.exact_at.size(), out.aut_kernel_trivial);
    if (!out.aut_kernel_trivial) {
        // Only the head of the sequence is asserted: the H^1(Z) and
        // H^0(G->Aut G) nodes belong to the kernel complex (Z -> K).
        for (size_t i = 0; i < out.asserted_at.size(); ++i) out.asserted_at[i] = i <= 2;
        rep.notes.push_back("Aut(G) -> Aut(G/Z) has nontrivial kernel; H^1(Z)-row nodes reported, not asserted");
    }
    out.exact_where_asserted = true;
    for (size_t i = 0; i < out.asserted_at.size(); ++i)
        if (out.asserted_at[i] && !rep.exact_at[i]) out.exact_where_asserted = false;
    return out;
}

}  // namespace patchlab
