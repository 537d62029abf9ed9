#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ell/catalog.hpp"
#include "ell/density.hpp"

using namespace ell;

TEST_CASE("curve discriminants and bad primes") {
    auto* lt = find_entry("lang-trotter-11");
    REQUIRE(lt != nullptr);
    CHECK(lt->curve.discriminant() == Int(-161051));  // -11^5
    CHECK(lt->curve.bad_primes() == std::vector<i64>{11});

    auto* c44 = find_entry("curve-4x4");
    REQUIRE(c44 != nullptr);
    CHECK(c44->curve.discriminant() == Int(-6400));
    CHECK(c44->curve.bad_primes() == std::vector<i64>{2, 5});

    auto* c17 = find_entry("curve-17");
    REQUIRE(c17 != nullptr);
    CHECK(c17->curve.discriminant() == Int(17));

    auto* f6 = find_entry("family6-example");
    REQUIRE(f6 != nullptr);
    CHECK(f6->curve.bad_primes() == std::vector<i64>{2, 3, 7});
    CHECK(squarefree_kernel(-3) == -3);
    CHECK(f6->nonabelian);
    CHECK(f6->drop_prime == 3);
}

TEST_CASE("component sizes match the published images") {
    auto* lt = find_entry("lang-trotter-11");
    CHECK(lt->component_at(2, 1).size() == 6);     // full GL2(Z/2)
    CHECK(lt->component_at(5, 1).size() == 4);     // split Cartan image
    CHECK(lt->component_at(5, 2).size() == 2500);
    CHECK(lt->component_at(11, 1).size() == 13200);  // full GL2(Z/11)

    auto* c44 = find_entry("curve-4x4");
    CHECK(c44->component_at(2, 3).size() == 128);
    CHECK(c44->component_at(2, 2).size() == 16);
    CHECK(c44->component_at(2, 1).size() == 2);
    CHECK(c44->component_at(3, 1).size() == 6);  // Borel mod 3
    // lifting a block: full preimage multiplies by ell^4 per level
    CHECK(c44->component_at(3, 2).size() == 6 * 81);

    auto* c17 = find_entry("curve-17");
    CHECK(c17->component_at(2, 1).size() == 2);
    CHECK(c17->component_at(17, 1).size() == (u64)gl2_order(17));
}

TEST_CASE("component_at respects the group cap") {
    auto* lt = find_entry("lang-trotter-11");
    CHECK_THROWS_AS((void)lt->component_at(11, 4), std::length_error);
}

TEST_CASE("quadratic field discriminants") {
    CHECK(quad_field_discriminant(Int(5)) == 5);
    CHECK(quad_field_discriminant(Int(2)) == 8);
    CHECK(quad_field_discriminant(Int(-1)) == -4);
    CHECK(quad_field_discriminant(Int(3)) == 12);
    CHECK(quad_field_discriminant(Int(-7)) == -7);
    CHECK(quad_field_discriminant(Int(45)) == 5);  // square part dropped

    auto sd = serre_curve_data(Int(-161051));
    CHECK(sd.D == -11);
    CHECK(sd.delta_sf == -11);
    CHECK(sd.ord2D == 0);

    auto sd8 = serre_curve_data(Int(2));
    CHECK(sd8.D == 8);
    CHECK(sd8.ord2D == 3);
    CHECK(sd8.delta_prime == 1);
}

TEST_CASE("serre entries carry the quadratic relation") {
    for (i64 D : {5, -7, 13, 17, -11}) {
        auto s = serre_entry(D);
        REQUIRE(s.relations.size() == 1);
        CHECK(s.relations[0].target_divisors == std::vector<i64>{2});
        CHECK(s.level_support.at(2) == 1);
    }
    // |D| in {4, 8}: the 2-component is an index-2 cut, no relation left
    for (i64 D : {-4, -8, 8}) {
        auto s = serre_entry(D);
        CHECK(s.relations.empty());
        auto* b = s.block(2);
        REQUIRE(b != nullptr);
        CHECK(Int(2) * Int(b->base.size()) ==
              gl2_order(D == -4 ? 4 : 8));
    }
    // D = 12: relation ties the 2-component to the odd part 3
    auto s12 = serre_entry(12);
    REQUIRE(s12.relations.size() == 1);
    CHECK(s12.level_support.at(2) == 2);
    CHECK(s12.level_support.count(3) == 1);

    CHECK_THROWS_AS((void)serre_entry(0), std::invalid_argument);
    CHECK_THROWS_AS((void)serre_entry(1), std::invalid_argument);
    CHECK_THROWS_AS((void)serre_entry(7), std::invalid_argument);  // not 0,1 mod 4
}

TEST_CASE("serre entry working spec has a rank-2 character group iff D = 1 mod 4") {
    for (i64 D : {5, 13, 17, -7, -11, -4, -8, 12}) {
        auto s = serre_entry(D);
        DensityProblem pr;  // cyclic
        auto ps = build_problem_spec(s, pr);
        auto phi = build_phi(ps.spec);
        i64 want = ((D % 4 + 4) % 4 == 1) ? 2 : 1;
        CHECK(phi.group.order() == want);
    }
}

TEST_CASE("catalog working specs have the expected character groups") {
    DensityProblem pr;  // cyclic
    auto phi_order = [&](const char* id) {
        auto ps = build_problem_spec(*find_entry(id), pr);
        return build_phi(ps.spec).group.order();
    };
    CHECK(phi_order("lang-trotter-11") == 2);
    CHECK(phi_order("curve-17") == 2);
    // the curve-4x4 relations only wake up at higher 2-adic level: cyclic
    // sees the trivial group, p = 1 (mod 8) sees the full Z/4 relation
    CHECK(phi_order("curve-4x4") == 1);
    DensityProblem ap{ProblemKind::CyclicAP, 1, 8, 1};
    auto ps8 = build_problem_spec(*find_entry("curve-4x4"), ap);
    CHECK(build_phi(ps8.spec).group.order() == 4);
    DensityProblem ap4{ProblemKind::CyclicAP, 1, 4, 1};
    auto ps4 = build_problem_spec(*find_entry("curve-4x4"), ap4);
    CHECK(build_phi(ps4.spec).group.order() == 2);
}

TEST_CASE("non-abelian family: j-map and level-6 image") {
    // j(t) = 2^10 3^3 t^3 (1 - 4 t^3)
    CHECK(xh_family_j(Rational(1)) == Rational(-82944));
    CHECK(xh_family_j(Rational(1, 2)) == Rational(1728));
    Rational t(3, 5);
    CHECK(xh_family_j(t) == Rational(27648) * t * t * t * (1 - 4 * t * t * t));

    auto g = xh_level6_subgroup();
    CHECK(g.size() == 48);
    CHECK(g.factors()[0].size() == 6);    // GL2(Z/2)
    CHECK(g.factors()[1].size() == 48);   // GL2(Z/3)
    CHECK(g.is_subdirect());
    // the entanglement quotient is non-abelian of order 6: both the
    // normality and the abelian-quotient predicates must fail
    CHECK(!is_normal_in_product(g));
    CHECK(!has_abelian_entanglements(g));
    auto gd = goursat_data(g);
    CHECK(gd.quotient.size() == 6);
    CHECK(!gd.quotient.is_abelian());
}

TEST_CASE("serre_entry_for_curve picks up the discriminant field") {
    auto s = serre_entry_for_curve(find_entry("serre-37a")->curve, "x");
    CHECK(s.level_support.count(37) == 1);
    CHECK(s.relations.size() == 1);  // 37 = 1 mod 4
}
