#pragma once
// Exact arithmetic aliases and small number-theory helpers.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <map>
#include <vector>

namespace ell {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// (base^exp) mod m, m < 2^32 so products fit in u64.
u64 powmod(u64 base, u64 exp, u64 m);

// modular inverse; requires gcd(a,n)=1
u64 invmod(u64 a, u64 n);

u64 gcd_u64(u64 a, u64 b);

// deterministic Miller-Rabin, valid for all n < 3.3e14 (bases 2,3,5,7,11,13,17)
bool is_prime_u64(u64 n);

// trial division + Pollard rho; exponents keyed by prime
std::map<i64, int> factorize(i64 n);

i64 euler_phi(i64 n);

// Kronecker symbol (a|n), defined for all integers n
int kronecker(Int a, Int n);

// largest s with s^2 | n  (n > 0); n = s^2 * squarefree
i64 square_part(i64 n);

// squarefree kernel of n keeping sign
i64 squarefree_kernel(i64 n);

// floor integer square root
Int isqrt(const Int& n);
bool is_square(const Int& n, Int* root = nullptr);

// primes in [2, limit] via simple sieve
std::vector<u64> primes_up_to(u64 limit);

// discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
Int weierstrass_discriminant(const std::vector<Int>& a);  // a = {a1,a2,a3,a4,a6}

}  // namespace ell
