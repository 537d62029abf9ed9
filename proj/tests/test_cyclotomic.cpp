#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ell/cyclotomic.hpp"

using namespace ell;

namespace {
std::vector<Int> poly(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return v;
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == poly({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == poly({1, 1}));
    CHECK(cyclotomic_polynomial(3) == poly({1, 1, 1}));
    CHECK(cyclotomic_polynomial(4) == poly({1, 0, 1}));
    CHECK(cyclotomic_polynomial(5) == poly({1, 1, 1, 1, 1}));
    CHECK(cyclotomic_polynomial(6) == poly({1, -1, 1}));
    CHECK(cyclotomic_polynomial(8) == poly({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(12) == poly({1, 0, -1, 0, 1}));
    // Phi_105 is the first with a coefficient outside {-1,0,1}... but 105 > 64;
    // check degree = phi(e) for everything we support instead
    for (int e = 1; e <= kMaxCyclotomicOrder; ++e)
        CHECK((i64)cyclotomic_polynomial(e).size() - 1 == (i64)euler_phi(e));
}

TEST_CASE("roots of unity") {
    auto z4 = CyclotomicNumber::root_of_unity(4, 1);
    CHECK(z4 * z4 == CyclotomicNumber(Rational(-1)));
    CHECK(CyclotomicNumber::root_of_unity(4, 2).to_rational() == Rational(-1));
    CHECK(CyclotomicNumber::root_of_unity(6, 3).to_rational() == Rational(-1));
    CHECK(CyclotomicNumber::root_of_unity(5, 5).to_rational() == Rational(1));
    CHECK(CyclotomicNumber::root_of_unity(5, -1) ==
          CyclotomicNumber::root_of_unity(5, 4));

    // sum of all e-th roots of unity vanishes
    for (int e : {2, 3, 4, 5, 6, 7, 8, 12, 15, 16, 60, 64}) {
        CyclotomicNumber acc{Rational(0)};
        for (int k = 0; k < e; ++k)
            acc = acc + CyclotomicNumber::root_of_unity(e, k);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("mixed-order arithmetic promotes correctly") {
    auto z3 = CyclotomicNumber::root_of_unity(3, 1);
    auto z2 = CyclotomicNumber::root_of_unity(2, 1);  // = -1
    auto w = z3 * z2;                                 // primitive 6th root
    CHECK(w == CyclotomicNumber::root_of_unity(6, 5));
    CHECK((w * w * w).to_rational() == Rational(-1));
    // zeta_6 = 1 + zeta_3
    CHECK(CyclotomicNumber::root_of_unity(6, 1) ==
          z3 + CyclotomicNumber(Rational(1)));
    // (zeta_8 + zeta_8^-1)^2 = 2
    auto g = CyclotomicNumber::root_of_unity(8, 1) +
             CyclotomicNumber::root_of_unity(8, -1);
    CHECK((g * g).to_rational() == Rational(2));
    // Gauss sum for p=5: (sum chi(a) zeta^a)^2 = 5
    CyclotomicNumber gs{Rational(0)};
    for (int a = 1; a < 5; ++a) {
        Rational chi((a == 1 || a == 4) ? 1 : -1);
        gs = gs + CyclotomicNumber::root_of_unity(5, a) * chi;
    }
    CHECK((gs * gs).to_rational() == Rational(5));
}

TEST_CASE("rationality predicates") {
    auto z5 = CyclotomicNumber::root_of_unity(5, 1);
    CHECK_FALSE(z5.is_rational());
    CHECK_FALSE(z5.is_zero());
    CHECK((z5 - z5).is_zero());
    auto half = CyclotomicNumber(Rational(1, 2));
    CHECK((half * Rational(2)).to_rational() == Rational(1));
    CHECK((z5 * Rational(0)).is_zero());
}
