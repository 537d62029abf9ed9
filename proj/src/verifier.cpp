#include "ell/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ell {

namespace {

u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
u64 mulm(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^32

// Legendre symbol via Euler's criterion; 0 for a = 0
int legendre(u64 a, u64 p) {
    if (a % p == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Tonelli-Shanks square root mod an odd prime; requires (a|p) = 1
u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1, s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;
    u64 m = s, cc = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mulm(tt, tt, p); ++i; }
        u64 b = powmod(cc, u64(1) << (m - i - 1), p);
        m = i;
        cc = mulm(b, b, p);
        t = mulm(t, cc, p);
        r = mulm(r, b, p);
    }
    return r;
}

u64 mix_seed(u64 seed, u64 p) {
    u64 z = seed ^ (p + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// ---- univariate polynomials mod p, constant term first -------------------

using Poly = std::vector<u64>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& f, const Poly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    }
    return h;
}

Poly poly_sub(Poly f, const Poly& g, u64 p) {
    if (g.size() > f.size()) f.resize(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = subm(f[i], g[i], p);
    trim(f);
    return f;
}

Poly poly_scale(Poly f, u64 c, u64 p) {
    for (auto& x : f) x = mulm(x, c, p);
    trim(f);
    return f;
}

Poly poly_mod(Poly f, const Poly& g, u64 p) {
    trim(f);
    u64 inv_lead = invmod(g.back(), p);
    while (f.size() >= g.size()) {
        u64 c = mulm(f.back(), inv_lead, p);
        std::size_t off = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[off + i] = subm(f[off + i], mulm(c, g[i], p), p);
        trim(f);
    }
    return f;
}

Poly poly_gcd(Poly f, Poly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = poly_mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) f = poly_scale(f, invmod(f.back(), p), p);
    return f;
}

// x^e mod g
Poly poly_xpow(u64 e, const Poly& g, u64 p) {
    Poly base = poly_mod(Poly{0, 1}, g, p);
    Poly acc{1};
    while (e) {
        if (e & 1) acc = poly_mod(poly_mul(acc, base, p), g, p);
        base = poly_mod(poly_mul(base, base, p), g, p);
        e >>= 1;
    }
    return acc;
}

// (h)^e mod g
Poly poly_pow(Poly h, u64 e, const Poly& g, u64 p) {
    Poly acc{1};
    h = poly_mod(std::move(h), g, p);
    while (e) {
        if (e & 1) acc = poly_mod(poly_mul(acc, h, p), g, p);
        h = poly_mod(poly_mul(h, h, p), g, p);
        e >>= 1;
    }
    return acc;
}

// number of distinct roots of f in F_p
std::size_t root_count(const Poly& f, u64 p) {
    Poly xp = poly_xpow(p, f, p);
    xp = poly_sub(std::move(xp), Poly{0, 1}, p);  // x^p - x mod f
    Poly g = poly_gcd(f, xp, p);
    return g.empty() ? 0 : g.size() - 1;
}

// one root of a polynomial that splits into distinct linear factors
u64 find_root(Poly f, u64 p, std::mt19937_64& rng) {
    f = poly_scale(f, invmod(f.back(), p), p);
    while (f.size() > 2) {
        u64 d = rng() % p;
        Poly h = poly_pow(Poly{d, 1}, (p - 1) / 2, f, p);  // (x+d)^((p-1)/2)
        if (h.empty()) continue;
        h[0] = subm(h[0], 1, p);
        trim(h);
        if (h.empty()) continue;
        Poly g = poly_gcd(f, h, p);
        if (g.size() > 1 && g.size() < f.size()) f = std::move(g);
    }
    if (f.size() != 2) throw std::logic_error("root finding failed");
    return subm(0, mulm(f[0], invmod(f[1], p), p), p);
}

u64 curve_rhs(const ShortCurve& c, u64 x) {
    return addm(mulm(addm(mulm(x, x, c.p), c.A, c.p), x, c.p), c.B, c.p);
}

AffinePoint random_point(const ShortCurve& c, std::mt19937_64& rng) {
    for (;;) {
        u64 x = rng() % c.p;
        u64 r = curve_rhs(c, x);
        if (r == 0) return {false, x, 0};
        if (legendre(r, c.p) == 1) return {false, x, sqrt_mod(r, c.p)};
    }
}

// exact order of P given a multiple m of it
u64 point_order(const ShortCurve& c, const AffinePoint& P, u64 m) {
    u64 ord = m;
    for (auto [q, e] : factorize((i64)m))
        while (ord % (u64)q == 0 && ec_mul(c, ord / (u64)q, P).inf) ord /= (u64)q;
    return ord;
}

// some m in [lo, hi] with m P = infinity (exists when the group order is in
// the interval); baby-step giant-step
u64 bsgs_multiple(const ShortCurve& c, const AffinePoint& P, u64 lo, u64 hi) {
    u64 w = hi - lo + 1;
    u64 s = (u64)std::ceil(std::sqrt((double)w)) + 1;
    std::unordered_map<u64, u64> baby;  // x-coord of jP -> smallest j
    AffinePoint J = P;
    for (u64 j = 1; j < s && !J.inf; ++j) {
        baby.emplace(J.x, j);
        J = ec_add(c, J, P);
    }
    AffinePoint S = ec_mul(c, s, P);
    AffinePoint G = ec_mul(c, lo, P);  // (lo + i s) P
    for (u64 i = 0; lo + i * s <= hi + s; ++i) {
        u64 base = lo + i * s;
        if (G.inf && base >= lo && base <= hi) return base;
        if (!G.inf) {
            auto it = baby.find(G.x);
            if (it != baby.end()) {
                u64 j = it->second;
                // G = +- jP, so (base -+ j) P = O
                for (u64 m : {base + j, base >= j ? base - j : 0})
                    if (m >= lo && m <= hi && ec_mul(c, m, P).inf) return m;
            }
        }
        G = ec_add(c, G, S);
    }
    throw std::logic_error("no multiple in the Hasse interval");
}

// ---- census helpers ------------------------------------------------------

struct Tally {
    u64 primes = 0, good = 0, relevant = 0, matching = 0;
    std::string dump;
    void operator+=(const Tally& o) {
        primes += o.primes;
        good += o.good;
        relevant += o.relevant;
        matching += o.matching;
        dump += o.dump;
    }
};

Tally census_block(const WeierstrassCurve& c, const DensityProblem& pr,
                   const std::vector<u64>& primes, i64 bad, u64 seed, bool dump) {
    Tally t;
    for (u64 p : primes) {
        ++t.primes;
        if (p <= 3 || bad % (i64)p == 0) continue;
        ++t.good;
        if (pr.kind == ProblemKind::CyclicAP && (i64)(p % (u64)pr.f) != pr.a) continue;
        ++t.relevant;
        ShortCurve sc = reduce_curve(c, p);
        u64 n = point_count(sc, seed);
        bool match = false;
        i64 witness = 0;
        if (pr.kind == ProblemKind::Koblitz) {
            match = n % (u64)pr.t == 0 && is_prime_u64(n / (u64)pr.t);
        } else {
            auto cw = is_cyclic(sc, n, seed);
            match = cw.cyclic;
            witness = cw.witness;
        }
        if (match) ++t.matching;
        if (dump) {
            t.dump += std::to_string(p) + "," + std::to_string(n) + "," +
                      (pr.kind == ProblemKind::Koblitz ? std::string("-")
                                                       : std::to_string(witness == 0)) +
                      "," + std::to_string(witness) + "," + std::to_string(match) + "\n";
        }
    }
    return t;
}

struct Checkpoint {
    u64 done_hi = 0;
    Tally tally;
};

std::string checkpoint_key(const WeierstrassCurve& c, const DensityProblem& pr, i64 x) {
    std::ostringstream os;
    os << c.a1 << " " << c.a2 << " " << c.a3 << " " << c.a4 << " " << c.a6 << " "
       << pr.str() << " " << x;
    return os.str();
}

std::optional<Checkpoint> load_checkpoint(const std::string& path, const std::string& key) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string stored;
    Checkpoint cp;
    if (!std::getline(in, stored) || stored != key) return std::nullopt;
    if (!(in >> cp.done_hi >> cp.tally.primes >> cp.tally.good >> cp.tally.relevant >>
          cp.tally.matching))
        return std::nullopt;
    return cp;
}

void save_checkpoint(const std::string& path, const std::string& key, const Checkpoint& cp) {
    std::ofstream out(path, std::ios::trunc);
    out << key << "\n"
        << cp.done_hi << " " << cp.tally.primes << " " << cp.tally.good << " "
        << cp.tally.relevant << " " << cp.tally.matching << "\n";
}

CensusReport run_census(const WeierstrassCurve& c, const DensityProblem& pr0, i64 x,
                        const CensusOptions& opt, bool parallel) {
    if (x < 1000) throw std::invalid_argument("census bound must be at least 10^3");
    DensityProblem pr = pr0;
    if (pr.kind == ProblemKind::CyclicAP) {
        if (pr.f < 1) throw std::invalid_argument("modulus must be positive");
        pr.a = ((pr.a % pr.f) + pr.f) % pr.f;
    }
    i64 bad = 1;
    for (i64 p : c.bad_primes()) bad *= p;

    std::string key = checkpoint_key(c, pr, x);
    Checkpoint cp;
    if (!opt.checkpoint_path.empty())
        if (auto prev = load_checkpoint(opt.checkpoint_path, key)) cp = *prev;

    const u64 span = 1 << 16;
    std::vector<std::pair<u64, u64>> blocks;
    for (u64 lo = cp.done_hi + 2; lo <= (u64)x; lo += span)
        blocks.emplace_back(lo, std::min((u64)x, lo + span - 1));

    bool dump = !opt.dump_path.empty();
    std::ofstream dump_out;
    if (dump) {
        dump_out.open(opt.dump_path, std::ios::trunc);
        dump_out << "p,N,cyclic,witness,match\n";
    }

    Tally total = cp.tally;
    u64 since_checkpoint = 0;
    std::size_t next = 0;
    while (next < blocks.size()) {
        // one batch of blocks in parallel, merged in block order
        std::size_t batch = parallel ? 64 : 1;
        std::size_t hi = std::min(blocks.size(), next + batch);
        std::vector<Tally> part(hi - next);
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (long b = 0; b < (long)(hi - next); ++b) {
            auto [lo, bhi] = blocks[next + b];
            auto ps = sieve_range(lo, bhi);
            part[b] = census_block(c, pr, ps, bad, opt.seed, dump);
        }
        for (auto& t : part) {
            total += t;
            if (dump) {
                dump_out << t.dump;
                total.dump.clear();
            }
            since_checkpoint += t.primes;
        }
        next = hi;
        if (!opt.checkpoint_path.empty() && since_checkpoint >= opt.checkpoint_every) {
            save_checkpoint(opt.checkpoint_path, key, {blocks[next - 1].second, total});
            since_checkpoint = 0;
        }
    }
    if (!opt.checkpoint_path.empty()) save_checkpoint(opt.checkpoint_path, key, {(u64)x, total});

    CensusReport rep;
    rep.x = x;
    rep.problem = pr.str();
    rep.seed = opt.seed;
    rep.total_primes = total.primes;
    rep.total_good = total.good;
    rep.total_relevant = total.relevant;
    rep.matching = total.matching;
    if (total.relevant) rep.observed = Float50(total.matching) / Float50(total.relevant);
    if (total.primes) rep.observed_all = Float50(total.matching) / Float50(total.primes);
    if (pr.kind == ProblemKind::Koblitz) rep.koblitz_integral = log_integral2(x);
    return rep;
}

}  // namespace

std::vector<u64> sieve_range(u64 lo, u64 hi) {
    if (lo > hi) return {};
    lo = std::max<u64>(lo, 2);
    u64 root = (u64)std::sqrt((double)hi) + 1;
    static std::vector<u64> base;  // base primes, grown on demand
    static u64 base_limit = 0;
    std::vector<u64> bp;
#pragma omp critical(ell_sieve_base)
    {
        if (root > base_limit) {
            const char* cache = std::getenv("ELLDENSITY_CACHE");
            bool loaded = false;
            if (cache) {
                auto path = std::filesystem::path(cache) / "base_primes.txt";
                std::ifstream in(path);
                u64 limit = 0;
                if (in >> limit && limit >= root) {
                    std::vector<u64> ps;
                    u64 p;
                    while (in >> p) ps.push_back(p);
                    base = std::move(ps);
                    base_limit = limit;
                    loaded = true;
                }
            }
            if (!loaded) {
                base = primes_up_to(root);
                base_limit = root;
                if (cache) {
                    std::error_code ec;
                    std::filesystem::create_directories(cache, ec);
                    std::ofstream out(std::filesystem::path(cache) / "base_primes.txt",
                                      std::ios::trunc);
                    out << base_limit << "\n";
                    for (u64 p : base) out << p << "\n";
                }
            }
        }
        bp = base;
    }
    std::vector<bool> composite(hi - lo + 1, false);
    for (u64 p : bp) {
        if (p * p > hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        for (u64 m = start; m <= hi; m += p) composite[m - lo] = true;
    }
    std::vector<u64> out;
    for (u64 v = lo; v <= hi; ++v)
        if (!composite[v - lo] && v >= 2) out.push_back(v);
    return out;
}

ShortCurve reduce_curve(const WeierstrassCurve& c, u64 p) {
    if (p <= 3) throw std::invalid_argument("short form needs p > 3");
    Int b2 = Int(c.a1) * c.a1 + 4 * Int(c.a2);
    Int b4 = 2 * Int(c.a4) + Int(c.a1) * c.a3;
    Int b6 = Int(c.a3) * c.a3 + 4 * Int(c.a6);
    Int c4 = b2 * b2 - 24 * b4;
    Int c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    Int A = ((-27 * c4) % p + p) % p;
    Int B = ((-54 * c6) % p + p) % p;
    return ShortCurve{p, A.convert_to<u64>(), B.convert_to<u64>()};
}

bool on_curve(const ShortCurve& c, const AffinePoint& P) {
    if (P.inf) return true;
    return mulm(P.y, P.y, c.p) == curve_rhs(c, P.x);
}

AffinePoint ec_add(const ShortCurve& c, const AffinePoint& P, const AffinePoint& Q) {
    u64 p = c.p;
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0) return {};
        lam = mulm(addm(mulm(3, mulm(P.x, P.x, p), p), c.A, p),
                   invmod((2 * P.y) % p, p), p);
    } else {
        lam = mulm(subm(Q.y, P.y, p), invmod(subm(Q.x, P.x, p), p), p);
    }
    u64 x = subm(subm(mulm(lam, lam, p), P.x, p), Q.x, p);
    u64 y = subm(mulm(lam, subm(P.x, x, p), p), P.y, p);
    return {false, x, y};
}

AffinePoint ec_mul(const ShortCurve& c, u64 n, const AffinePoint& P) {
    AffinePoint acc, base = P;
    while (n) {
        if (n & 1) acc = ec_add(c, acc, base);
        base = ec_add(c, base, base);
        n >>= 1;
    }
    return acc;
}

u64 point_count_naive(const ShortCurve& c) {
    // N = p + 1 + sum_x (x^3 + Ax + B | p), with a residue table
    std::vector<bool> sq(c.p, false);
    for (u64 v = 1; v < c.p; ++v) sq[mulm(v, v, c.p)] = true;
    i64 sum = 0;
    for (u64 x = 0; x < c.p; ++x) {
        u64 r = curve_rhs(c, x);
        if (r != 0) sum += sq[r] ? 1 : -1;
    }
    return (u64)((i64)c.p + 1 + sum);
}

u64 point_count_bsgs(const ShortCurve& c, u64 seed) {
    u64 p = c.p;
    if (p >= (u64(1) << 32)) throw std::invalid_argument("point counting needs p < 2^32");
    u64 w = (u64)std::floor(2 * std::sqrt((double)p));
    while ((w + 1) * (w + 1) <= 4 * p) ++w;
    while (w * w > 4 * p) --w;
    u64 lo = p + 1 - w, hi = p + 1 + w;
    u64 g = 2;
    while (legendre(g, p) != -1) ++g;
    ShortCurve tw{p, mulm(mulm(c.A, g, p), g, p), mulm(mulm(mulm(c.B, g, p), g, p), g, p)};
    std::mt19937_64 rng(mix_seed(seed, p));
    u64 le = 1, lt = 1;  // known divisors of N and of 2p+2-N
    for (int iter = 0; iter < 40; ++iter) {
        u64 count = 0, value = 0;
        for (u64 m = (lo + le - 1) / le * le; m <= hi; m += le)
            if ((2 * p + 2 - m) % lt == 0) { ++count; value = m; }
        if (count == 1) return value;
        if (count == 0) throw std::logic_error("no group order candidate");
        const ShortCurve& side = (iter % 2 == 0) ? c : tw;
        AffinePoint P = random_point(side, rng);
        u64 m = bsgs_multiple(side, P, lo, hi);
        u64 ord = point_order(side, P, m);
        u64& l = (iter % 2 == 0) ? le : lt;
        l = std::lcm(l, ord);
    }
    return point_count_naive(c);  // tiny group exponents on both sides: rare
}

u64 point_count(const ShortCurve& c, u64 seed) {
    return c.p <= 10'000 ? point_count_naive(c) : point_count_bsgs(c, seed);
}

std::vector<u64> division_polynomial(const ShortCurve& c, i64 ell) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("need an odd ell >= 3");
    u64 p = c.p, A = c.A, B = c.B;
    Poly C{B, A, 0, 1};  // y^2 = C(x) on the curve
    Poly C2 = poly_mul(C, C, p);
    u64 inv2 = invmod(2, p);
    // psi_n = g[n](x) * y^(n even); even powers of y folded into C
    std::vector<Poly> g(std::max<std::size_t>((std::size_t)ell + 1, 5));
    u64 A2 = mulm(A, A, p);
    g[1] = {1};
    g[2] = {2};
    g[3] = {subm(0, A2, p), mulm(12, B, p), mulm(6, A, p), 0, 3};
    g[4] = poly_scale(
        Poly{subm(subm(0, mulm(8, mulm(B, B, p), p), p), mulm(A2, A, p), p),
             subm(0, mulm(4, mulm(A, B, p), p), p),
             subm(0, mulm(5, A2, p), p), mulm(20, B, p), mulm(5, A, p), 0, 1},
        4, p);
    for (i64 n = 5; n <= ell; ++n) {
        std::size_t m = (std::size_t)(n / 2);
        if (n % 2 == 1) {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3;
            // the even-index side carries y^4 = C^2
            Poly t1 = poly_mul(g[m + 2], poly_mul(g[m], poly_mul(g[m], g[m], p), p), p);
            Poly t2 = poly_mul(g[m - 1], poly_mul(g[m + 1], poly_mul(g[m + 1], g[m + 1], p), p), p);
            if (m % 2 == 0) t1 = poly_mul(t1, C2, p);
            else t2 = poly_mul(t2, C2, p);
            g[(std::size_t)n] = poly_sub(std::move(t1), t2, p);
        } else {
            // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 2y
            Poly t1 = poly_mul(g[m + 2], poly_mul(g[m - 1], g[m - 1], p), p);
            Poly t2 = poly_mul(g[m - 2], poly_mul(g[m + 1], g[m + 1], p), p);
            g[(std::size_t)n] =
                poly_scale(poly_mul(g[m], poly_sub(std::move(t1), t2, p), p), inv2, p);
        }
    }
    Poly out = g[(std::size_t)ell];
    if (!out.empty()) out = poly_scale(out, invmod(out.back(), p), p);
    return out;
}

CyclicWitness is_cyclic(const ShortCurve& c, u64 N, u64 seed) {
    u64 p = c.p;
    for (auto [l, e] : factorize((i64)N)) {
        if (e < 2 || (p - 1) % (u64)l != 0) continue;
        if (l == 2) {
            Poly cubic{c.B, c.A, 0, 1};
            if (root_count(cubic, p) == 3) return {false, 2};
            continue;
        }
        if (l > 47) {
            // the division polynomial has degree (l^2-1)/2; too big.  Sample the
            // l-Sylow instead: a point of order l^e certifies a cyclic Sylow,
            // two independent points of order l certify full l-torsion.
            u64 le = 1;
            for (int i = 0; i < e; ++i) le *= (u64)l;
            std::mt19937_64 rng(mix_seed(seed, p * 31 + (u64)l));
            AffinePoint R;  // first order-l point seen
            bool settled = false, full = false;
            for (u64 tries = 0; tries < 64 * (u64)l && !settled; ++tries) {
                AffinePoint Q = ec_mul(c, N / le, random_point(c, rng));
                if (Q.inf) continue;
                int j = 1;  // Q has order l^j
                for (AffinePoint T = ec_mul(c, (u64)l, Q); !T.inf;
                     T = ec_mul(c, (u64)l, Q = T))
                    ++j;
                if (j == e) {
                    settled = true;  // cyclic Sylow
                } else if (R.inf) {
                    R = Q;
                } else {
                    bool indep = true;
                    AffinePoint W = R;
                    for (i64 k = 1; k < l && indep; ++k, W = ec_add(c, W, R))
                        if (W.x == Q.x) indep = false;
                    if (indep) settled = full = true;
                }
            }
            if (settled) {
                if (full) return {false, l};
                continue;
            }
            // fall through to the exact check (practically unreachable)
        }
        Poly psi = division_polynomial(c, l);
        std::size_t want = (std::size_t)((l * l - 1) / 2);
        if (psi.size() != want + 1) throw std::logic_error("division polynomial degree");
        if (root_count(psi, p) != want) continue;
        // all x-coordinates rational; full torsion iff one y is rational
        std::mt19937_64 rng(mix_seed(seed, p * 31 + (u64)l));
        Poly xp = poly_xpow(p, psi, p);
        xp = poly_sub(std::move(xp), Poly{0, 1}, p);
        Poly split = poly_gcd(psi, xp, p);
        u64 x0 = find_root(split, p, rng);
        if (legendre(curve_rhs(c, x0), p) == 1) return {false, l};
    }
    return {true, 0};
}

CensusReport census(const WeierstrassCurve& c, const DensityProblem& pr, i64 x,
                    const CensusOptions& opt) {
    return run_census(c, pr, x, opt, true);
}

CensusReport census_serial(const WeierstrassCurve& c, const DensityProblem& pr, i64 x,
                           const CensusOptions& opt) {
    return run_census(c, pr, x, opt, false);
}

Deviation compare(const CensusReport& report, const DensityResult& result) {
    if (report.problem != result.problem)
        throw std::invalid_argument("census and density describe different problems");
    Deviation d;
    d.predicted = result.constant;
    d.observed = report.observed;
    d.deviation = d.observed - d.predicted;
    if (report.matching) d.scale = Float50(1) / sqrt(Float50(report.matching));
    if (report.koblitz_integral != 0 && result.constant != 0)
        d.koblitz_ratio = Float50(report.matching) / (result.constant * report.koblitz_integral);
    return d;
}

Float50 log_integral2(i64 x) {
    // trapezoid with unit step from 2 to x; long double is ample here
    long double sum = 0.0L;
    long double prev = 1.0L / (std::log(2.0L) * std::log(2.0L));
    for (i64 t = 3; t <= x; ++t) {
        long double cur = 1.0L / (std::log((long double)t) * std::log((long double)t));
        sum += (prev + cur) / 2;
        prev = cur;
    }
    return Float50((double)sum);
}

}  // namespace ell
