#include <random>
#include <set>

#include "doctest.h"
#include "patchlab/errors.hpp"
#include "patchlab/hyper.hpp"

using namespace patchlab;

namespace {

GammaGroup trivial_pair(int gamma_order, FiniteGroup g) {
    return make_gamma_group_trivial(make_group_ptr(cyclic_group(gamma_order)),
                                    make_group_ptr(std::move(g)));
}

GammaGroup z2_on_z3_inversion() {
    auto z2 = make_group_ptr(cyclic_group(2));
    auto z3 = make_group_ptr(cyclic_group(3));
    return make_gamma_group_on_generators(z2, z3, {{1, {0, 2, 1}}});
}

GammaGroup klein_pair(FiniteGroup g) {
    auto klein = make_group_ptr(direct_product(cyclic_group(2), cyclic_group(2)));
    return make_gamma_group_trivial(klein, make_group_ptr(std::move(g)));
}

}  // namespace

TEST_CASE("orientation calibration survives the object oracle") {
    const auto& cal = calibrate_h0_orientation();
    CHECK((cal.standard_ok || cal.opposite_ok));
    CHECK(!h0_orientation_name().empty());
}

TEST_CASE("degree-0 classes match bitorsors on a catalog") {
    std::vector<GammaGroup> carriers = {
        trivial_pair(1, cyclic_group(3)),   trivial_pair(1, symmetric_group(3)),
        trivial_pair(2, cyclic_group(2)),   trivial_pair(2, cyclic_group(4)),
        z2_on_z3_inversion(),               klein_pair(cyclic_group(3)),
        trivial_pair(2, symmetric_group(3)), klein_pair(symmetric_group(3)),
        trivial_pair(1, direct_product(cyclic_group(2), cyclic_group(2))),
        trivial_pair(4, cyclic_group(4))};
    for (const auto& a : carriers) {
        // h0_classes_inner itself enforces agreement; also compare counts here.
        auto h0 = h0_classes_inner(a);
        auto object = enumerate_bitorsors(a, a);
        CHECK(h0.size() == static_cast<int>(object.size()));
        if (a.gamma->order == 1) {
            auto out = outer_quotient(a.auts);
            CHECK(h0.size() == out.out.order);
        }
    }
}

TEST_CASE("degree-0 correspondence with bitorsors is class-faithful") {
    for (const auto& a : {z2_on_z3_inversion(), trivial_pair(2, cyclic_group(4)),
                          trivial_pair(1, direct_product(cyclic_group(2), cyclic_group(2)))}) {
        auto h0 = h0_classes_inner(a);
        auto object = bitorsor_classes(a);
        // Pair -> bitorsor -> pair round trip stays in the same class.
        for (int i = 0; i < h0.size(); ++i) {
            auto b = bitorsor_from_h0(a, h0.reps[i].u, h0.reps[i].phi, h0.orientation);
            auto back = h0_from_bitorsor(a, b, h0.orientation);
            CHECK(h0.class_of(back.u, back.phi) == i);
        }
        // Distinct classes map to non-isomorphic bitorsors.
        for (int i = 0; i < h0.size(); ++i)
            for (int j = 0; j < h0.size(); ++j) {
                auto bi = bitorsor_from_h0(a, h0.reps[i].u, h0.reps[i].phi, h0.orientation);
                auto bj = bitorsor_from_h0(a, h0.reps[j].u, h0.reps[j].phi, h0.orientation);
                CHECK((i == j) == bitorsor_isomorphism(bi, bj).has_value());
            }
    }
}

TEST_CASE("class-level composition agrees with the object-level wedge") {
    for (const auto& a : {trivial_pair(1, direct_product(cyclic_group(2), cyclic_group(2))),
                          z2_on_z3_inversion(), trivial_pair(2, cyclic_group(4))}) {
        auto h0 = h0_classes_inner(a);
        auto object = bitorsor_classes(a);
        // Identify class indices through the correspondence.
        std::vector<int> to_object(h0.size());
        for (int i = 0; i < h0.size(); ++i)
            to_object[i] = object.class_of(bitorsor_from_h0(a, h0.reps[i].u, h0.reps[i].phi,
                                                            h0.orientation));
        for (int i = 0; i < h0.size(); ++i) {
            CHECK(to_object[h0.inverse(i)] == object.class_of(opposite(object.reps[to_object[i]])));
            for (int j = 0; j < h0.size(); ++j) {
                auto w = wedge(object.reps[to_object[i]], object.reps[to_object[j]]);
                CHECK(to_object[h0.compose(i, j)] == object.class_of(w));
            }
        }
    }
}

TEST_CASE("degree-0 pairs are split-extension automorphisms") {
    for (const auto& a : {z2_on_z3_inversion(), trivial_pair(2, symmetric_group(3))}) {
        auto h0 = h0_classes_inner(a);
        auto split = split_extension(a);
        for (const auto& rep : h0.reps) {
            auto [phi, u] = [&] {
                if (h0.orientation == H0Orientation::UStandard)
                    return std::make_pair(rep.phi, rep.u);
                std::vector<int> w(rep.u.size());
                for (size_t s = 0; s < rep.u.size(); ++s) w[s] = a.g->inverse(rep.u[s]);
                return std::make_pair(rep.phi, std::move(w));
            }();
            auto table = split_automorphism_table(a, phi, u);
            // The table is an automorphism of the split extension.
            for (int x = 0; x < split.x.order; ++x)
                for (int y = 0; y < split.x.order; ++y)
                    CHECK(table[split.x.op(x, y)] == split.x.op(table[x], table[y]));
        }
    }
}

TEST_CASE("neutrality in degree 0 matches fixed points of the bitorsor") {
    for (const auto& a : {z2_on_z3_inversion(), trivial_pair(2, cyclic_group(2)),
                          trivial_pair(2, cyclic_group(4))}) {
        auto h0 = h0_classes_inner(a);
        for (int i = 0; i < h0.size(); ++i) {
            auto b = bitorsor_from_h0(a, h0.reps[i].u, h0.reps[i].phi, h0.orientation);
            bool has_fixed_point = false;
            for (int p = 0; p < b.points && !has_fixed_point; ++p) {
                bool fx = true;
                for (int s = 0; s < a.gamma->order && fx; ++s) fx = b.act_gamma(s, p) == p;
                has_fixed_point = fx;
            }
            CHECK(h0.is_neutral(i) == has_fixed_point);
        }
    }
}

TEST_CASE("degree-1 anchors: extension counts") {
    // (Z/2, Z/2): Z/4 and Klein.
    auto a = trivial_pair(2, cyclic_group(2));
    auto h1 = h1_crossed_classes(a);
    CHECK(h1.size() == 2);

    // (Z/2, Z/3): Z/6 and S_3, one per band.
    auto b = trivial_pair(2, cyclic_group(3));
    auto h1b = h1_crossed_classes(b);
    CHECK(h1b.size() == 2);
    std::set<std::vector<int>> bands(h1b.bands.begin(), h1b.bands.end());
    CHECK(bands.size() == 2);

    // Trivial Gamma: one class.
    CHECK(h1_crossed_classes(trivial_pair(1, symmetric_group(3))).size() == 1);

    // Counts pinned from the classical extension classification: for Z/4 the
    // four order-8 extensions Z/4 x Z/2, Z/8, D_4, Q_8; for the Klein group
    // four strict classes with trivial band plus one per swap band.
    CHECK(h1_crossed_classes(trivial_pair(2, cyclic_group(4))).size() == 4);
    CHECK(h1_crossed_classes(trivial_pair(2, direct_product(cyclic_group(2), cyclic_group(2))))
              .size() == 7);
    CHECK(h1_crossed_classes(trivial_pair(2, cyclic_group(6))).size() == 4);
    CHECK(h1_crossed_classes(trivial_pair(2, symmetric_group(3))).size() == 1);
}

TEST_CASE("degree-1 classes match extension equivalence classes") {
    std::vector<GammaGroup> carriers = {
        trivial_pair(2, cyclic_group(2)), trivial_pair(2, cyclic_group(3)),
        trivial_pair(2, cyclic_group(4)),
        trivial_pair(2, direct_product(cyclic_group(2), cyclic_group(2))),
        z2_on_z3_inversion(), trivial_pair(2, symmetric_group(3))};
    for (const auto& a : carriers) {
        auto h1 = h1_crossed_classes(a);
        // Build one extension per class; all must be pairwise strictly
        // inequivalent, and each class rep must rebuild its own class.
        std::vector<ExtensionGroup> exts;
        for (const auto& rep : h1.reps) exts.push_back(extension_from_cocycle(rep));
        for (size_t i = 0; i < exts.size(); ++i)
            for (size_t j = 0; j < exts.size(); ++j)
                CHECK(extensions_strictly_equivalent(exts[i], exts[j]) == (i == j));
    }
}

TEST_CASE("extension identification for the known anchors") {
    auto a = trivial_pair(2, cyclic_group(2));
    auto h1 = h1_crossed_classes(a);
    REQUIRE(h1.size() == 2);
    std::set<std::string> names;
    for (const auto& rep : h1.reps) {
        auto ext = extension_from_cocycle(rep);
        if (are_isomorphic_groups(ext.x, cyclic_group(4))) names.insert("Z4");
        if (are_isomorphic_groups(ext.x, direct_product(cyclic_group(2), cyclic_group(2))))
            names.insert("V4");
    }
    CHECK(names == std::set<std::string>{"Z4", "V4"});

    auto b = trivial_pair(2, cyclic_group(3));
    auto h1b = h1_crossed_classes(b);
    REQUIRE(h1b.size() == 2);
    std::set<std::string> names_b;
    for (const auto& rep : h1b.reps) {
        auto ext = extension_from_cocycle(rep);
        if (are_isomorphic_groups(ext.x, cyclic_group(6))) names_b.insert("Z6");
        if (are_isomorphic_groups(ext.x, symmetric_group(3))) names_b.insert("S3");
    }
    CHECK(names_b == std::set<std::string>{"Z6", "S3"});

    // phi = inversion band, c trivial gives S_3 directly.
    const auto& auts = *b.auts;
    int invidx = -1;
    for (int i = 0; i < auts.size(); ++i)
        if (i != auts.identity_index) invidx = i;
    HyperCocycle1 z{b, {auts.identity_index, invidx}, std::vector<int>(4, 0)};
    REQUIRE(is_hyper_cocycle1(b, z.phi, z.c));
    CHECK(are_isomorphic_groups(extension_from_cocycle(z).x, symmetric_group(3)));

    // Trivial cocycle over a trivial action gives the direct product.
    HyperCocycle1 triv{b, {auts.identity_index, auts.identity_index}, std::vector<int>(4, 0)};
    CHECK(are_isomorphic_groups(extension_from_cocycle(triv).x, cyclic_group(6)));
}

TEST_CASE("associativity of the extension table is equivalent to the cocycle identities") {
    std::mt19937 rng(20240811);
    auto a = trivial_pair(2, cyclic_group(3));
    const auto& auts = *a.auts;
    int n = a.gamma->order, m = a.g->order;
    int equivalences_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<int> phi(n, auts.identity_index);
        std::vector<int> c(n * n, a.g->identity);
        for (int s = 0; s < n; ++s)
            if (s != a.gamma->identity) phi[s] = static_cast<int>(rng() % auts.size());
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                if (s != a.gamma->identity && t != a.gamma->identity)
                    c[s * n + t] = static_cast<int>(rng() % m);
        bool cocycle = is_hyper_cocycle1(a, phi, c);
        // Build the raw table without validation and test associativity.
        bool associative = true;
        auto tw = [&](int s) { return auts.compose_idx(phi[s], a.act[s]); };
        auto mulx = [&](std::pair<int, int> x, std::pair<int, int> y) {
            return std::make_pair(
                a.g->op(a.g->op(x.first, auts.apply(tw(x.second), y.first)),
                        c[x.second * n + y.second]),
                a.gamma->op(x.second, y.second));
        };
        bool identity_ok = true;  // normalized c has (e,e) as two-sided identity
        for (int g1 = 0; g1 < m && identity_ok; ++g1)
            for (int s = 0; s < n && identity_ok; ++s) {
                auto p = std::make_pair(g1, s);
                identity_ok = mulx(p, {a.g->identity, a.gamma->identity}) == p &&
                              mulx({a.g->identity, a.gamma->identity}, p) == p;
            }
        for (int g1 = 0; g1 < m && associative; ++g1)
            for (int s1 = 0; s1 < n && associative; ++s1)
                for (int g2 = 0; g2 < m && associative; ++g2)
                    for (int s2 = 0; s2 < n && associative; ++s2)
                        for (int g3 = 0; g3 < m && associative; ++g3)
                            for (int s3 = 0; s3 < n && associative; ++s3) {
                                auto lhs = mulx(mulx({g1, s1}, {g2, s2}), {g3, s3});
                                auto rhs = mulx({g1, s1}, mulx({g2, s2}, {g3, s3}));
                                associative = lhs == rhs;
                            }
        CHECK((associative && identity_ok) == cocycle);
        ++equivalences_checked;
    }
    CHECK(equivalences_checked == 400);
}

TEST_CASE("neutrality in degree 1 agrees with the splitting oracle") {
    std::vector<GammaGroup> carriers = {trivial_pair(2, cyclic_group(2)),
                                        trivial_pair(2, cyclic_group(3)),
                                        trivial_pair(2, cyclic_group(4)), z2_on_z3_inversion()};
    for (const auto& a : carriers) {
        auto h1 = h1_crossed_classes(a);
        for (int i = 0; i < h1.size(); ++i) {
            auto ext = extension_from_cocycle(h1.reps[i]);
            bool splits = find_splitting(ext).has_value();
            CHECK(h1.is_neutral(i) == splits);
        }
    }
    // The Z/4 extension of Z/2 by Z/2 is the classical non-neutral class.
    auto a = trivial_pair(2, cyclic_group(2));
    auto h1 = h1_crossed_classes(a);
    int neutral = 0;
    for (int i = 0; i < h1.size(); ++i)
        if (h1.is_neutral(i)) ++neutral;
    CHECK(neutral == 1);
    // Both classes of (Z/2, Z/3) are neutral: Z/6 and S_3 split over Z/3.
    auto b = trivial_pair(2, cyclic_group(3));
    auto h1b = h1_crossed_classes(b);
    for (int i = 0; i < h1b.size(); ++i) CHECK(h1b.is_neutral(i));
}

TEST_CASE("general degree-0 classes for the reduction shapes") {
    auto a = z2_on_z3_inversion();
    // (1 -> H): fixed points.
    auto cm1 = trivial_source_crossed_module(a);
    CHECK(h0_classes(cm1).reps.size() == 1);
    // (A -> 1): H^1.
    auto z2z2 = trivial_pair(2, cyclic_group(2));
    auto cm2 = trivial_target_crossed_module(z2z2);
    CHECK(h0_classes(cm2).reps.size() == 2);
    // Inner.
    auto cm3 = inner_crossed_module(a);
    CHECK(h0_classes(cm3).reps.size() == h0_classes_inner(a).size());
}

TEST_CASE("myles sequence is exact on the catalog") {
    std::vector<GammaGroup> carriers = {
        trivial_pair(1, symmetric_group(3)),
        trivial_pair(2, cyclic_group(2)),
        z2_on_z3_inversion(),
        trivial_pair(2, cyclic_group(3)),
        trivial_pair(2, symmetric_group(3)),
        klein_pair(cyclic_group(3)),
        trivial_pair(2, direct_product(cyclic_group(2), cyclic_group(2)))};
    for (const auto& a : carriers) {
        auto rep = myles_sequence(a);
        CHECK(rep.exact);
        REQUIRE(rep.nodes.size() == 7);
        if (a.gamma->order == 1) {
            CHECK(rep.nodes[4].size == 1);
            CHECK(rep.nodes[5].size == 1);
            CHECK(rep.nodes[6].size == 1);
        }
    }
    // Spot checks from the anchors: Gamma=Z/2, G=Z/2 trivial action has
    // H^1(G) of order 2 and H^1(Aut G) trivial.
    auto a = trivial_pair(2, cyclic_group(2));
    auto rep = myles_sequence(a);
    CHECK(rep.nodes[4].size == 2);
    CHECK(rep.nodes[5].size == 1);
}

TEST_CASE("les2 sequence") {
    // G = Z/2 x S_3 with Z = Z/2 x 1, G/Z = S_3 complete.
    auto g = direct_product(cyclic_group(2), symmetric_group(3));
    auto a = trivial_pair(2, g);
    std::vector<int> z_elements;
    for (int x = 0; x < g.order; ++x)
        if (x % symmetric_group(3).order == 0) z_elements.push_back(x);
    // Element layout of direct_product: index = x*|S3| + y, so Z/2 x {e}
    // is {0, |S3|}.
    z_elements = {0, 6};
    auto rep = les2_sequence(a, z_elements);
    // Aut(Z/2 x S_3) -> Aut(S_3) has the sign-twist in its kernel, so the
    // H^1(Z) row is reported but only the head of the sequence is asserted.
    CHECK_FALSE(rep.aut_kernel_trivial);
    CHECK(rep.exact_where_asserted);
    CHECK(rep.zero_map_holds);

    // Degenerate Z = {e} with complete G: the projection head is a bijection.
    auto s3 = trivial_pair(2, symmetric_group(3));
    auto rep2 = les2_sequence(s3, {0});
    CHECK(rep2.aut_kernel_trivial);
    CHECK(rep2.sequence.exact);
    CHECK(rep2.exact_where_asserted);
    CHECK(rep2.zero_map_holds);
    CHECK(rep2.sequence.nodes[3].size == 1);  // H^1(Z) trivial
    CHECK(rep2.sequence.nodes[6].size == 1);  // H^2(Z) trivial
    CHECK(rep2.sequence.nodes[4].size == rep2.sequence.nodes[5].size);

    // Precondition violations are named: Z = {e} leaves G/Z = Z/3 incomplete.
    CHECK_THROWS_AS(les2_sequence(trivial_pair(2, cyclic_group(3)), {0}), PreconditionFailed);
}

TEST_CASE("trivializations of split extensions compose the degree-0 group") {
    auto a = z2_on_z3_inversion();
    auto split = split_extension(a);
    auto trivs = extension_trivializations(split);
    // The trivializations of the split extension are exactly its
    // automorphisms over Gamma; there are |pairs|, not |classes|.
    auto h0 = h0_classes_inner(a);
    CHECK(!trivs.empty());
    // Each trivialization, read as a pair, is a valid degree-0 cocycle in
    // the standard orientation.
    for (const auto& tv : trivs)
        CHECK(is_hyper_cocycle0(a, tv.b, tv.theta, H0Orientation::UStandard));
    (void)h0;
}
