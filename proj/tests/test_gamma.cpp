#include "doctest.h"
#include "patchlab/errors.hpp"
#include "patchlab/gamma.hpp"

using namespace patchlab;

namespace {

GammaGroup z2_on_z3_inversion() {
    auto z2 = make_group_ptr(cyclic_group(2));
    auto z3 = make_group_ptr(cyclic_group(3));
    return make_gamma_group_on_generators(z2, z3, {{1, {0, 2, 1}}});
}

}  // namespace

TEST_CASE("valid and invalid actions") {
    CHECK(z2_on_z3_inversion().gamma->order == 2);

    auto z2 = make_group_ptr(cyclic_group(2));
    auto z3 = make_group_ptr(cyclic_group(3));
    auto z4 = make_group_ptr(cyclic_group(4));
    auto trivial = make_gamma_group_trivial(z2, z3);
    CHECK(trivial.trivial_action());

    // Z/3 cannot act on Z/4 through inversion: inversion has order 2.
    auto z3g = make_group_ptr(cyclic_group(3));
    CHECK_THROWS_AS(make_gamma_group_on_generators(z3g, z4, {{1, {0, 3, 2, 1}}}),
                    ValidationError);
}

TEST_CASE("fixed points") {
    auto a = z2_on_z3_inversion();
    CHECK(fixed_points(a).elements.size() == 1);

    auto z2 = make_group_ptr(cyclic_group(2));
    auto z3 = make_group_ptr(cyclic_group(3));
    auto triv = make_gamma_group_trivial(z2, z3);
    CHECK(fixed_points(triv).elements.size() == 3);

    // Z/2 inverting the first factor of Z/3 x Z/3: fixed points 0 x Z/3.
    auto z3z3 = make_group_ptr(direct_product(cyclic_group(3), cyclic_group(3)));
    std::vector<int> table(9);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) table[x * 3 + y] = ((3 - x) % 3) * 3 + y;
    auto b = make_gamma_group_on_generators(z2, z3z3, {{1, table}});
    CHECK(fixed_points(b).elements.size() == 3);
}

TEST_CASE("restriction") {
    auto a = z2_on_z3_inversion();
    auto idr = restrict_action(a, identity_hom(a.gamma));
    CHECK(idr.act == a.act);

    auto z4 = make_group_ptr(cyclic_group(4));
    auto surj = make_hom(z4, a.gamma, {0, 1, 0, 1});
    auto r = restrict_action(a, surj);
    CHECK(r.gamma->order == 4);
    CHECK(fixed_points(r).elements.size() == 1);

    auto triv = restrict_action(a, trivial_hom(z4, a.gamma));
    CHECK(triv.trivial_action());

    // Functoriality: restrict(restrict(a,f),g) = restrict(a, f o g).
    auto z2 = a.gamma;
    auto f = surj;
    auto g = make_hom(make_group_ptr(cyclic_group(2)), z4, {0, 2});
    auto lhs = restrict_action(restrict_action(a, f), g);
    auto rhs = restrict_action(a, compose(f, g));
    CHECK(lhs.act == rhs.act);
}

TEST_CASE("fixed points grow under restriction along non-surjective maps") {
    auto a = z2_on_z3_inversion();
    auto z2 = make_group_ptr(cyclic_group(2));
    auto fsur = identity_hom(a.gamma);
    auto ftriv = trivial_hom(z2, a.gamma);
    auto fix_a = fixed_points(a).elements;
    auto fix_sur = fixed_points(restrict_action(a, fsur)).elements;
    auto fix_triv = fixed_points(restrict_action(a, ftriv)).elements;
    CHECK(fix_sur == fix_a);
    CHECK(fix_triv.size() > fix_a.size());
}

TEST_CASE("conjugation action on Aut") {
    auto a = z2_on_z3_inversion();
    auto aa = aut_gamma_group(a);
    CHECK(aa.g->order == 2);  // Aut(Z/3)
    // Aut(Z/3) is abelian, so conjugation is trivial.
    CHECK(aa.trivial_action());
}

TEST_CASE("equivariant homs") {
    auto a = z2_on_z3_inversion();
    auto idh = make_equivariant_hom(a, a, identity_hom(a.g));
    CHECK(idh.hom.is_bijective());

    auto z2 = make_group_ptr(cyclic_group(2));
    auto triv2 = make_gamma_group_trivial(a.gamma, z2);
    // The map Z/3 -> Z/2 is only the trivial one; it is equivariant.
    auto th = make_equivariant_hom(a, triv2, trivial_hom(a.g, z2));
    CHECK(th.hom.map == std::vector<int>{0, 0, 0});
}
