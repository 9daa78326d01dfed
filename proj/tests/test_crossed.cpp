#include "doctest.h"
#include "patchlab/crossed.hpp"
#include "patchlab/errors.hpp"

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

}  // namespace

TEST_CASE("1 -> G is a crossed module") {
    for (auto a : {trivial_pair(1, symmetric_group(3)), z2_on_z3_inversion()}) {
        auto cm = trivial_source_crossed_module(a);
        CHECK(check_crossed_module(cm).valid);
        CHECK(classify_shape(cm) == CrossedModuleShape::TrivialSource);
    }
}

TEST_CASE("G -> Aut(G) is a crossed module for all groups of order <= 12") {
    std::vector<FiniteGroup> groups;
    groups.push_back(trivial_group());
    for (int n = 2; n <= 12; ++n) groups.push_back(cyclic_group(n));
    groups.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    groups.push_back(symmetric_group(3));
    groups.push_back(quaternion_group());
    groups.push_back(dihedral_group(4));
    groups.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
    groups.push_back(direct_product(cyclic_group(2),
                                    direct_product(cyclic_group(2), cyclic_group(2))));
    groups.push_back(direct_product(cyclic_group(3), cyclic_group(3)));
    groups.push_back(dihedral_group(5));
    groups.push_back(alternating_group(4));
    groups.push_back(dihedral_group(6));
    groups.push_back(direct_product(cyclic_group(2), cyclic_group(6)));
    for (const auto& g : groups) {
        auto a = trivial_pair(1, g);
        auto cm = inner_crossed_module(a);
        CHECK(check_crossed_module(cm).valid);
        CHECK(classify_shape(cm) == CrossedModuleShape::Inner);
    }
}

TEST_CASE("G -> 1 is a crossed module exactly when G is abelian") {
    auto ab = trivial_target_crossed_module(trivial_pair(2, cyclic_group(4)));
    CHECK(check_crossed_module(ab).valid);
    CHECK(classify_shape(ab) == CrossedModuleShape::TrivialTarget);

    // For S_3 the Peiffer identity fails; the checker names a witness.
    auto s3 = trivial_pair(1, symmetric_group(3));
    auto one = make_gamma_group_trivial(s3.gamma, make_group_ptr(trivial_group()));
    std::vector<int> rho(6, 0);
    std::vector<int> hact(6);
    for (int i = 0; i < 6; ++i) hact[i] = i;
    auto cm = assemble_crossed_module(s3, one, rho, hact);
    auto rep = check_crossed_module(cm);
    CHECK_FALSE(rep.valid);
    bool peiffer_failed = false;
    for (const auto& c : rep.checks)
        if (c.axiom == "peiffer" && !c.holds) {
            peiffer_failed = true;
            CHECK(c.witness.size() == 2);
        }
    CHECK(peiffer_failed);
}

TEST_CASE("h_minus1") {
    // (G -> Aut G) has H^{-1} = Z(G)^Gamma.
    auto s3 = trivial_pair(1, symmetric_group(3));
    CHECK(h_minus1(inner_crossed_module(s3)).elements.size() == 1);
    auto q8 = trivial_pair(1, quaternion_group());
    CHECK(h_minus1(inner_crossed_module(q8)).elements.size() == 2);

    // (1 -> H): trivial.
    CHECK(h_minus1(trivial_source_crossed_module(s3)).elements.size() == 1);

    // (Z/3 -> 1) with inversion: only the identity is fixed.
    auto a = z2_on_z3_inversion();
    CHECK(h_minus1(trivial_target_crossed_module(a)).elements.size() == 1);
}

TEST_CASE("gamma compatibility axioms are checked") {
    // Gamma acts trivially on G = S_3 but nontrivially on Aut(S_3):
    // rho(^s g) = ^s rho(g) must fail.
    auto a = trivial_pair(2, symmetric_group(3));
    auto good = inner_crossed_module(a);
    REQUIRE(check_crossed_module(good).valid);
    auto bad = good;
    int nontrivial = -1;
    for (int i = 0; i < bad.h.auts->size(); ++i)
        if (i != bad.h.auts->identity_index &&
            bad.h.auts->compose_idx(i, i) == bad.h.auts->identity_index) {
            nontrivial = i;
            break;
        }
    REQUIRE(nontrivial >= 0);
    std::vector<int> flipped(bad.h.gamma->order, bad.h.auts->identity_index);
    for (int s = 0; s < bad.h.gamma->order; ++s)
        if (s != bad.h.gamma->identity) flipped[s] = nontrivial;
    bad.h = make_gamma_group(bad.h.gamma, bad.h.g, flipped);
    auto rep = check_crossed_module(bad);
    CHECK_FALSE(rep.valid);
    bool gamma_axiom_failed = false;
    for (const auto& c : rep.checks)
        if (!c.holds && c.axiom.rfind("gamma", 0) == 0) gamma_axiom_failed = true;
    CHECK(gamma_axiom_failed);
}
