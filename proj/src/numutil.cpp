#include "ell/numutil.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ell {

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 invmod(u64 a, u64 n) {
    i64 t = 0, newt = 1;
    i64 r = (i64)n, newr = (i64)(a % n);
    while (newr != 0) {
        i64 q = r / newr;
        std::swap(t, newt); newt -= q * t;
        std::swap(r, newr); newr -= q * r;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    return (u64)((t % (i64)n + (i64)n) % (i64)n);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto mulmod = [](u64 a, u64 b, u64 m) -> u64 {
        return (u64)((__uint128_t)a * b % m);
    };
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
        u64 x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1) x = mulmod(x, base, n);
            base = mulmod(base, base, n);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {
i64 pollard_rho(i64 n) {
    if (n % 2 == 0) return 2;
    for (i64 c = 1;; ++c) {
        auto f = [&](i64 x) { return (i64)(((__int128)x * x + c) % n); };
        i64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(std::abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(i64 n, std::map<i64, int>& out) {
    if (n == 1) return;
    if (is_prime_u64((u64)n)) { out[n]++; return; }
    i64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}
}  // namespace

std::map<i64, int> factorize(i64 n) {
    std::map<i64, int> out;
    if (n < 0) { out[-1] = 1; n = -n; }
    if (n == 0) throw std::invalid_argument("factorize(0)");
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) { out[p]++; n /= p; }
    }
    factor_rec(n, out);
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = 1;
    for (auto [p, e] : factorize(n)) {
        if (p < 0) continue;
        i64 pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        r *= pe * (p - 1);
    }
    return r;
}

int kronecker(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    if (v % 2 == 1) {
        Int am8 = ((a % 8) + 8) % 8;
        if (am8 == 0 || am8 == 2 || am8 == 4 || am8 == 6) return 0;
        if (am8 == 3 || am8 == 5) sign = -sign;
    }
    a = ((a % n) + n) % n;
    // now Jacobi (a|n), n odd positive
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

i64 square_part(i64 n) {
    if (n < 0) n = -n;
    i64 s = 1;
    for (auto [p, e] : factorize(n))
        if (p > 0)
            for (int i = 0; i < e / 2; ++i) s *= p;
    return s;
}

i64 squarefree_kernel(i64 n) {
    i64 s = square_part(n);
    return n / (s * s);
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

bool is_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

Int weierstrass_discriminant(const std::vector<Int>& a) {
    const Int &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Int b2 = a1 * a1 + 4 * a2;
    Int b4 = 2 * a4 + a1 * a3;
    Int b6 = a3 * a3 + 4 * a6;
    Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

}  // namespace ell
