#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ell/entangle.hpp"

using namespace ell;

namespace {

// S_i = G_i minus the identity, for every component
std::vector<LocalSet> nonidentity_sets(const EntanglementSpec& spec) {
    std::vector<LocalSet> sets;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& g = spec.components[i].group;
        LocalSet s{i, {}};
        std::size_t id = g.index_of(Mat::identity(g.level()));
        for (std::size_t j = 0; j < g.size(); ++j)
            if (j != id) s.elements.push_back((u32)j);
        sets.push_back(std::move(s));
    }
    return sets;
}

const char* kSerre5 = R"({
  "components": [{"prime": 2}, {"prime": 5}],
  "relations": [{
    "target_divisors": [2],
    "maps": [
      {"component": 0, "rule": "signature_mod2"},
      {"component": 1, "rule": "det_legendre"}
    ]
  }]
})";

const char* kLangTrotter = R"({
  "components": [
    {"prime": 2},
    {"prime": 5, "generators": [[1, 0, 0, 2]]},
    {"prime": 11}
  ],
  "relations": [{
    "target_divisors": [2],
    "maps": [
      {"component": 0, "rule": "signature_mod2"},
      {"component": 2, "rule": "det_legendre"}
    ]
  }]
})";

}  // namespace

TEST_CASE("signature character on GL2(F2)") {
    CHECK(signature_mod2(Mat::identity(2)) == 0);
    CHECK(signature_mod2(Mat{2, 0, 1, 1, 0}) == 1);
    auto g2 = full_gl2(2);
    int odd = 0;
    for (std::size_t i = 0; i < g2.size(); ++i) odd += signature_mod2(g2.element(i));
    CHECK(odd == 3);
}

TEST_CASE("serre curve with discriminant 5") {
    auto spec = spec_from_json(kSerre5);
    auto phi = build_phi(spec);
    CHECK(phi.canonical_divisors == std::vector<i64>{2});
    CHECK(phi.kernel_order == Int(1440));

    auto sets = nonidentity_sets(spec);
    auto res = member_fraction(spec, sets);
    CHECK_FALSE(res.vanishing);
    CHECK(res.correction == Rational(1) + Rational(1, 2395));
    CHECK(res.value == res.correction * Rational(5, 6) * Rational(479, 480));
    CHECK(res.value == brute_force_fraction(spec, sets));

    CHECK(phi_stability_check(spec, 7));
    CHECK(phi_stability_check(spec, 3));
}

TEST_CASE("kernel of the serre-5 spec under goursat") {
    auto spec = spec_from_json(kSerre5);
    auto k = materialize_kernel(spec);
    CHECK(k.size() == 1440);
    CHECK(k.is_subdirect());
    CHECK(is_normal_in_product(k));
    CHECK(has_abelian_entanglements(k));
    auto gd = goursat_data(k);
    CHECK(gd.quotient.size() == 2);
    for (u32 i = 0; i < k.factors()[0].size(); ++i)
        for (u32 j = 0; j < k.factors()[1].size(); ++j)
            CHECK((gd.psi1[i] == gd.psi2[j]) == k.contains({i, j}));
}

TEST_CASE("lang-trotter square-free spec") {
    auto spec = spec_from_json(kLangTrotter);
    CHECK(spec.components[1].group.size() == 4);  // diagonal <[[1,0],[0,2]]>
    auto phi = build_phi(spec);
    CHECK(phi.canonical_divisors == std::vector<i64>{2});
    CHECK(phi.kernel_order == Int(158400));

    auto sets = nonidentity_sets(spec);
    auto res = member_fraction(spec, sets);
    CHECK(res.correction == Rational(1) + Rational(1, 65995));
    CHECK(res.value ==
          res.correction * Rational(5, 6) * Rational(3, 4) * Rational(13199, 13200));
    CHECK(res.value == brute_force_fraction(spec, sets));
}

TEST_CASE("empty local set forces vanishing with an obstruction witness") {
    auto spec = spec_from_json(kSerre5);
    auto sets = nonidentity_sets(spec);
    sets[1].elements.clear();
    auto res = member_fraction(spec, sets);
    CHECK(res.vanishing);
    CHECK(res.value == Rational(0));
    REQUIRE(res.obstruction_component.has_value());
    CHECK(*res.obstruction_component == 1);
    CHECK(brute_force_fraction(spec, sets) == Rational(0));
}

TEST_CASE("relation-free spec multiplies plain fractions") {
    auto spec = spec_from_json(R"({"components": [{"prime": 2}, {"prime": 3}]})");
    auto phi = build_phi(spec);
    CHECK(phi.canonical_divisors.empty());
    CHECK(phi.kernel_order == Int(288));
    auto sets = nonidentity_sets(spec);
    auto res = member_fraction(spec, sets);
    CHECK(res.correction == Rational(1));
    CHECK(res.value == Rational(5, 6) * Rational(47, 48));
    CHECK(res.value == brute_force_fraction(spec, sets));
}

TEST_CASE("higher-order relation target via det_mod_target") {
    // dlog_2(det g5 mod 5) + dlog_2(det g13 mod 13) = 0 in Z/4, with the
    // 13-component a cyclic order-12 group whose det is surjective
    auto spec = spec_from_json(R"({
      "components": [
        {"prime": 5},
        {"prime": 13, "generators": [[2, 0, 0, 1]]}
      ],
      "relations": [{
        "target_divisors": [4],
        "maps": [
          {"component": 0, "rule": "det_mod_target", "modulus": 5, "generator": 2},
          {"component": 1, "rule": "det_mod_target", "modulus": 13, "generator": 2}
        ]
      }]
    })");
    auto phi = build_phi(spec);
    CHECK(phi.canonical_divisors == std::vector<i64>{4});
    CHECK(phi.kernel_order == Int(480) * 12 / 4);
    auto sets = nonidentity_sets(spec);
    auto res = member_fraction(spec, sets);
    CHECK(res.value == brute_force_fraction(spec, sets));
    CHECK_FALSE(res.vanishing);
}

TEST_CASE("json round-trip preserves the spec") {
    for (const char* txt : {kSerre5, kLangTrotter}) {
        auto spec = spec_from_json(txt);
        auto spec2 = spec_from_json(spec_to_json(spec));
        REQUIRE(spec2.components.size() == spec.components.size());
        for (std::size_t i = 0; i < spec.components.size(); ++i)
            CHECK(spec2.components[i].group == spec.components[i].group);
        auto sets = nonidentity_sets(spec);
        CHECK(member_fraction(spec2, sets).value == member_fraction(spec, sets).value);
        CHECK(build_phi(spec2).canonical_divisors == build_phi(spec).canonical_divisors);
    }
}

TEST_CASE("character lifting matches the relation tables") {
    auto spec = spec_from_json(kSerre5);
    auto phi = build_phi(spec);
    auto chis = characters(phi.group);
    REQUIRE(chis.size() == 2);
    auto lifted = lift_character(phi, chis[1], 0);
    const auto& g2 = spec.components[0].group;
    for (std::size_t j = 0; j < g2.size(); ++j) {
        Rational expect(signature_mod2(g2.element(j)) == 0 ? 1 : -1);
        CHECK(lifted[j].to_rational() == expect);
    }
}
