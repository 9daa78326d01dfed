#include "doctest.h"
#include "patchlab/errors.hpp"
#include "patchlab/system.hpp"

using namespace patchlab;

namespace {

// Two vertices, one edge, everything trivial.
FactorizationSystem trivial_edge_system() {
    auto one = make_group_ptr(trivial_group());
    return subgroup_system(one, {{0}, {0}}, {{0}}, {{{0, 1, 0}}}, "trivial-edge");
}

// Master Klein group, the two factors at the vertices, trivial edge.
FactorizationSystem klein_edge_system() {
    auto v4 = make_group_ptr(direct_product(cyclic_group(2), cyclic_group(2)));
    // Elements of Z/2 x Z/2 with index x*2+y: subgroups {0,2} and {0,1}.
    return subgroup_system(v4, {{0, 2}, {0, 1}}, {{0}}, {{{0, 1, 0}}}, "klein-edge");
}

FactorizationSystem triangle_system() {
    auto one = make_group_ptr(trivial_group());
    return subgroup_system(one, {{0}, {0}, {0}}, {{0}, {0}, {0}},
                           {{{0, 1, 0}, {1, 2, 1}, {2, 0, 2}}}, "triangle");
}

}  // namespace

TEST_CASE("system construction and shape") {
    auto t = trivial_edge_system();
    CHECK(t.vertices() == 2);
    CHECK(t.edges() == 1);
    CHECK(t.is_tree());
    CHECK(t.limit_equalizer);

    auto k = klein_edge_system();
    CHECK(k.limit_equalizer);  // the two factors generate Klein
    CHECK(k.is_tree());

    auto tri = triangle_system();
    CHECK_FALSE(tri.is_tree());
    CHECK(tri.limit_equalizer);
}

TEST_CASE("validation failures carry witnesses") {
    auto one = make_group_ptr(trivial_group());
    // Disconnected: two vertices, no edges.
    CHECK_THROWS_AS(subgroup_system(one, {{0}, {0}}, {}, {}, "disc"), ValidationError);
    // Edge subgroup not inside a vertex subgroup.
    auto v4 = make_group_ptr(direct_product(cyclic_group(2), cyclic_group(2)));
    CHECK_THROWS_AS(subgroup_system(v4, {{0, 2}, {0, 1}}, {{0, 3}}, {{{0, 1, 0}}}, "bad"),
                    ValidationError);
}

TEST_CASE("limit equalizer flag and suite check agree") {
    auto v4 = make_group_ptr(direct_product(cyclic_group(2), cyclic_group(2)));
    auto gen = subgroup_system(v4, {{0, 2}, {0, 1}}, {{0}}, {{{0, 1, 0}}});
    CHECK(gen.limit_equalizer);
    // Vertices that do not generate: both vertices the same factor.
    auto nogen = subgroup_system(v4, {{0, 1}, {0, 1}}, {{0}}, {{{0, 1, 0}}});
    CHECK_FALSE(nogen.limit_equalizer);

    // Suite check: conjugation module plus a faithful permutation module.
    std::vector<GammaGroup> suite;
    {
        auto z3 = make_group_ptr(cyclic_group(3));
        // Klein group acting on Z/3 x Z/3: first generator inverts the first
        // factor, second generator inverts the second.
        auto z3z3 = make_group_ptr(direct_product(cyclic_group(3), cyclic_group(3)));
        std::vector<int> t1(9), t2(9);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                t1[x * 3 + y] = ((3 - x) % 3) * 3 + y;
                t2[x * 3 + y] = x * 3 + ((3 - y) % 3);
            }
        suite.push_back(make_gamma_group_on_generators(v4, z3z3, {{2, t1}, {1, t2}}));
    }
    CHECK(verify_limit_equalizer(gen, suite));
    CHECK_FALSE(verify_limit_equalizer(nogen, suite));
}

TEST_CASE("simultaneous factorization") {
    auto t = trivial_edge_system();
    auto a = make_gamma_group_trivial(t.gamma_f, make_group_ptr(symmetric_group(3)));

    // Identity edge data: identity witness.
    auto out = simultaneous_factorization(t, a, {a.g->identity});
    REQUIRE(out.witness.has_value());
    CHECK((*out.witness)[0] == a.g->identity);

    // All vertex groups trivial: any edge element factors as (g, e).
    for (int gelt = 0; gelt < a.g->order; ++gelt) {
        auto o = simultaneous_factorization(t, a, {gelt});
        REQUIRE(o.witness.has_value());
        const auto& w = *o.witness;
        int k = a.g->op(a.g->inverse(w[1]), w[0]);
        CHECK(k == gelt);
    }
    CHECK(group_satisfies_factorization(t, a));
}

TEST_CASE("factorization failure is definitive") {
    // Klein master; vertices are the two factors; G = Z/3 with the full
    // Klein group acting through inversion via the first projection.
    auto v4 = make_group_ptr(direct_product(cyclic_group(2), cyclic_group(2)));
    auto sys = klein_edge_system();
    auto z3 = make_group_ptr(cyclic_group(3));
    // Generator (1,0) (index 2) inverts, generator (0,1) (index 1) inverts:
    // then both vertex subgroups act nontrivially, so vertex fixed points are
    // trivial, while the edge group is trivial and sees all of Z/3.
    auto a = make_gamma_group_on_generators(v4, z3, {{2, {0, 2, 1}}, {1, {0, 2, 1}}});
    auto out = simultaneous_factorization(sys, a, {1});
    CHECK_FALSE(out.witness.has_value());
    CHECK(out.candidates_examined == out.candidate_space);
    CHECK_FALSE(group_satisfies_factorization(sys, a));

    // Brute-force cross-check: full product over vertex fixed points.
    auto rs = restrict_over_system(sys, a);
    auto f0 = fixed_points(rs.vertex[0]).elements;
    auto f1 = fixed_points(rs.vertex[1]).elements;
    bool any = false;
    for (int x : f0)
        for (int y : f1)
            if (a.g->op(a.g->inverse(y), x) == 1) any = true;
    CHECK_FALSE(any);
}

TEST_CASE("restriction caches share the underlying group") {
    auto sys = klein_edge_system();
    auto z3 = make_group_ptr(cyclic_group(3));
    auto a = make_gamma_group_on_generators(sys.gamma_f, z3, {{2, {0, 2, 1}}, {1, {0, 1, 2}}});
    auto rs = restrict_over_system(sys, a);
    CHECK(rs.vertex.size() == 2);
    CHECK(rs.edge.size() == 1);
    CHECK(rs.vertex[0].g->same_table(*a.g));
    // Vertex 0 is the subgroup containing generator index 2: acts by inversion.
    CHECK(fixed_points(rs.vertex[0]).elements.size() == 1);
    CHECK(fixed_points(rs.vertex[1]).elements.size() == 3);
    CHECK(fixed_points(rs.edge[0]).elements.size() == 3);
}
