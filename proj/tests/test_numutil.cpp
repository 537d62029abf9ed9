#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ell/numutil.hpp"

using namespace ell;

TEST_CASE("modular arithmetic") {
    CHECK(powmod(2, 10, 1000) == 24);
    CHECK(powmod(7, 0, 13) == 1);
    CHECK(invmod(3, 11) == 4);
    CHECK(invmod(2, 25) == 13);
    CHECK_THROWS(invmod(2, 4));
}

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(17));
    CHECK(is_prime_u64(1000003));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(1000001));
    // strong pseudoprime to several bases
    CHECK_FALSE(is_prime_u64(3215031751ull));
}

TEST_CASE("factorization and phi") {
    auto f = factorize(720);
    CHECK(f[2] == 4);
    CHECK(f[3] == 2);
    CHECK(f[5] == 1);
    auto g = factorize(-161051);
    CHECK(g[-1] == 1);
    CHECK(g[11] == 5);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(25) == 20);
    CHECK(euler_phi(120) == 32);
}

TEST_CASE("kronecker symbol") {
    // Legendre values mod 11: squares are 1,3,4,5,9
    for (int a : {1, 3, 4, 5, 9}) CHECK(kronecker(a, 11) == 1);
    for (int a : {2, 6, 7, 8, 10}) CHECK(kronecker(a, 11) == -1);
    CHECK(kronecker(11, 11) == 0);
    // (2|n) = 1 iff n = +-1 mod 8
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(2, 17) == 1);
    CHECK(kronecker(2, 3) == -1);
    CHECK(kronecker(2, 5) == -1);
    // (-1|n)
    CHECK(kronecker(-1, 5) == 1);
    CHECK(kronecker(-1, 7) == -1);
    // kronecker with even lower argument: (5|4) = (5|2)^2 = 1, (3|4) = ... (3|2)=-1
    CHECK(kronecker(-4, 5) == 1);
    CHECK(kronecker(-4, 7) == -1);
    CHECK(kronecker(8, 7) == 1);
    CHECK(kronecker(8, 3) == -1);
    CHECK(kronecker(-8, 3) == 1);
    CHECK(kronecker(-8, 7) == -1);
}

TEST_CASE("square parts") {
    CHECK(square_part(64) == 8);
    CHECK(squarefree_kernel(64) == 1);
    CHECK(squarefree_kernel(-6400) == -1);
    CHECK(squarefree_kernel(45) == 5);
    CHECK(squarefree_kernel(17) == 17);
    Int r;
    CHECK(is_square(Int(144), &r));
    CHECK(r == 12);
    CHECK_FALSE(is_square(Int(145)));
}

TEST_CASE("prime sieve") {
    auto p = primes_up_to(30);
    CHECK(p == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(1000000).size() == 78498);
}

TEST_CASE("weierstrass discriminants") {
    auto disc = [](i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
        return weierstrass_discriminant({Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)});
    };
    CHECK(disc(0, 0, 0, -1, 0) == 64);                 // y^2 = x^3 - x
    CHECK(disc(0, -1, 1, -10, -20) == -161051);        // -11^5
    CHECK(disc(0, 1, 0, 4, 4) == -6400);               // -2^8 5^2
    CHECK(disc(1, -1, 1, -91, -310) == 17);
    CHECK(disc(0, 0, 1, -1, 0) == 37);
    CHECK(disc(0, 0, 0, -63504, 6223392) == Int("-341461686730752"));  // -2^14 3^11 7^6
}
