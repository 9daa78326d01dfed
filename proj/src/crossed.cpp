#include "patchlab/crossed.hpp"

#include <numeric>

#include "patchlab/errors.hpp"

namespace patchlab {

CrossedModule assemble_crossed_module(GammaGroup g, GammaGroup h, std::vector<int> rho,
                                      std::vector<int> hact) {
    if (!g.gamma->same_table(*h.gamma))
        throw ValidationError("NotAHomomorphism", "crossed module needs a shared gamma");
    if (static_cast<int>(rho.size()) != g.g->order ||
        static_cast<int>(hact.size()) != h.g->order * g.g->order)
        throw ValidationError("NotAHomomorphism", "crossed module tables have wrong size");
    CrossedModule cm;
    cm.g = std::move(g);
    cm.h = std::move(h);
    cm.rho = std::move(rho);
    cm.hact = std::move(hact);
    return cm;
}

CrossedModuleReport check_crossed_module(const CrossedModule& cm) {
    CrossedModuleReport rep;
    const auto& G = *cm.g.g;
    const auto& H = *cm.h.g;
    const auto& gam = *cm.g.gamma;

    auto add = [&](std::string axiom, bool holds, std::vector<int> witness) {
        rep.checks.push_back({std::move(axiom), holds, holds ? std::vector<int>{} : witness});
    };

    {  // rho is a homomorphism
        bool ok = true;
        std::vector<int> w;
        for (int a = 0; a < G.order && ok; ++a)
            for (int b = 0; b < G.order && ok; ++b)
                if (cm.rho[G.op(a, b)] != H.op(cm.rho[a], cm.rho[b])) {
                    ok = false;
                    w = {a, b};
                }
        add("rho-homomorphism", ok, w);
    }
    {  // hact is an action by automorphisms
        bool ok = true;
        std::vector<int> w;
        for (int x = 0; x < G.order && ok; ++x)
            if (cm.apply_h(H.identity, x) != x) {
                ok = false;
                w = {x};
            }
        for (int a = 0; a < H.order && ok; ++a)
            for (int b = 0; b < H.order && ok; ++b)
                for (int x = 0; x < G.order && ok; ++x)
                    if (cm.apply_h(H.op(a, b), x) != cm.apply_h(a, cm.apply_h(b, x))) {
                        ok = false;
                        w = {a, b, x};
                    }
        for (int a = 0; a < H.order && ok; ++a)
            for (int x = 0; x < G.order && ok; ++x)
                for (int y = 0; y < G.order && ok; ++y)
                    if (cm.apply_h(a, G.op(x, y)) != G.op(cm.apply_h(a, x), cm.apply_h(a, y))) {
                        ok = false;
                        w = {a, x, y};
                    }
        add("action-by-automorphisms", ok, w);
    }
    {  // Peiffer: ^{rho(g')} g = g' g g'^-1
        bool ok = true;
        std::vector<int> w;
        for (int gp = 0; gp < G.order && ok; ++gp)
            for (int x = 0; x < G.order && ok; ++x)
                if (cm.apply_h(cm.rho[gp], x) != G.conjugate(gp, x)) {
                    ok = false;
                    w = {gp, x};
                }
        add("peiffer", ok, w);
    }
    {  // equivariance: rho(^h g) = h rho(g) h^-1
        bool ok = true;
        std::vector<int> w;
        for (int a = 0; a < H.order && ok; ++a)
            for (int x = 0; x < G.order && ok; ++x)
                if (cm.rho[cm.apply_h(a, x)] != H.conjugate(a, cm.rho[x])) {
                    ok = false;
                    w = {a, x};
                }
        add("rho-equivariance", ok, w);
    }
    {  // Gamma-compatibility: rho(^s g) = ^s rho(g)
        bool ok = true;
        std::vector<int> w;
        for (int s = 0; s < gam.order && ok; ++s)
            for (int x = 0; x < G.order && ok; ++x)
                if (cm.rho[cm.g.apply(s, x)] != cm.h.apply(s, cm.rho[x])) {
                    ok = false;
                    w = {s, x};
                }
        add("gamma-rho-compatibility", ok, w);
    }
    {  // Gamma-compatibility: ^s(^h g) = ^{^s h}(^s g)
        bool ok = true;
        std::vector<int> w;
        for (int s = 0; s < gam.order && ok; ++s)
            for (int a = 0; a < H.order && ok; ++a)
                for (int x = 0; x < G.order && ok; ++x)
                    if (cm.g.apply(s, cm.apply_h(a, x)) !=
                        cm.apply_h(cm.h.apply(s, a), cm.g.apply(s, x))) {
                        ok = false;
                        w = {s, a, x};
                    }
        add("gamma-action-compatibility", ok, w);
    }

    rep.valid = std::all_of(rep.checks.begin(), rep.checks.end(),
                            [](const AxiomCheck& c) { return c.holds; });
    return rep;
}

CrossedModule make_crossed_module(GammaGroup g, GammaGroup h, std::vector<int> rho,
                                  std::vector<int> hact) {
    auto cm = assemble_crossed_module(std::move(g), std::move(h), std::move(rho), std::move(hact));
    auto rep = check_crossed_module(cm);
    if (!rep.valid) {
        for (const auto& c : rep.checks)
            if (!c.holds) throw ValidationError("CrossedModuleAxiom", c.axiom, c.witness);
    }
    return cm;
}

CrossedModule inner_crossed_module(const GammaGroup& a) {
    auto h = aut_gamma_group(a);
    std::vector<int> rho(a.g->order);
    for (int x = 0; x < a.g->order; ++x) rho[x] = a.auts->inner_of(x);
    std::vector<int> hact(h.g->order * a.g->order);
    for (int phi = 0; phi < h.g->order; ++phi)
        for (int x = 0; x < a.g->order; ++x) hact[phi * a.g->order + x] = a.auts->apply(phi, x);
    return make_crossed_module(a, std::move(h), std::move(rho), std::move(hact));
}

CrossedModule trivial_source_crossed_module(const GammaGroup& h) {
    auto triv = make_gamma_group_trivial(h.gamma, make_group_ptr(trivial_group()));
    std::vector<int> rho{h.g->identity};
    std::vector<int> hact(h.g->order, 0);
    return make_crossed_module(std::move(triv), h, std::move(rho), std::move(hact));
}

CrossedModule trivial_target_crossed_module(const GammaGroup& a) {
    if (!a.g->is_abelian())
        throw ValidationError("NotAbelian", "A -> 1 is a crossed module only for abelian A");
    auto triv = make_gamma_group_trivial(a.gamma, make_group_ptr(trivial_group()));
    std::vector<int> rho(a.g->order, 0);
    std::vector<int> hact(a.g->order);
    std::iota(hact.begin(), hact.end(), 0);
    return make_crossed_module(a, std::move(triv), std::move(rho), std::move(hact));
}

CrossedModuleShape classify_shape(const CrossedModule& cm) {
    // Inner: H is Aut(G) with the evaluation action and rho = Int. Checked
    // first since for small abelian G it can coincide with the other shapes.
    const auto& auts = *cm.g.auts;
    if (cm.h.g->same_table(auts.group)) {
        bool inner = true;
        for (int x = 0; x < cm.g.g->order && inner; ++x) inner = cm.rho[x] == auts.inner_of(x);
        for (int phi = 0; phi < cm.h.g->order && inner; ++phi)
            for (int x = 0; x < cm.g.g->order && inner; ++x)
                inner = cm.apply_h(phi, x) == auts.apply(phi, x);
        for (int s = 0; s < cm.g.gamma->order && inner; ++s)
            for (int phi = 0; phi < cm.h.g->order && inner; ++phi)
                inner = cm.h.apply(s, phi) == cm.g.apply_on_aut(s, phi);
        if (inner) return CrossedModuleShape::Inner;
    }
    if (cm.g.g->order == 1) return CrossedModuleShape::TrivialSource;
    if (cm.h.g->order == 1) return CrossedModuleShape::TrivialTarget;
    return CrossedModuleShape::General;
}

Subgroup h_minus1(const CrossedModule& cm) {
    std::vector<int> kernel;
    for (int x = 0; x < cm.g.g->order; ++x)
        if (cm.rho[x] == cm.h.g->identity) kernel.push_back(x);
    auto ker = make_subgroup(cm.g.g, kernel);
    // Gamma-fixed elements of the kernel.
    std::vector<int> fixed;
    for (int e : ker.elements) {
        bool fx = true;
        for (int s = 0; s < cm.g.gamma->order && fx; ++s) fx = cm.g.apply(s, e) == e;
        if (fx) fixed.push_back(e);
    }
    return make_subgroup(cm.g.g, std::move(fixed));
}

}  // namespace patchlab
