#include "ell/density.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ell {

namespace {

i64 ipow(i64 p, int e) {
    i64 n = 1;
    while (e-- > 0) n *= p;
    return n;
}

int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

Float50 to_f(const Rational& q) {
    return Float50(numerator(q).str()) / Float50(denominator(q).str());
}

// product of the generic local factors over primes <= L outside `skip`
// (OpenMP over fixed blocks, merged in order, so the result is deterministic)
Float50 generic_product(const DensityProblem& pr, i64 L, const std::set<i64>& skip) {
    auto ps = primes_up_to((u64)L);
    std::vector<i64> use;
    for (u64 p : ps)
        if (!skip.count((i64)p)) use.push_back((i64)p);
    const std::size_t block = 4096;
    std::size_t nb = (use.size() + block - 1) / block;
    std::vector<Float50> part(nb, Float50(1));
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < (long)nb; ++b) {
        Float50 acc(1);
        std::size_t hi = std::min(use.size(), (b + 1) * block);
        for (std::size_t i = b * block; i < hi; ++i) {
            Rational d = generic_local_density(pr, use[i]);
            if (pr.kind == ProblemKind::Koblitz) d *= Rational(use[i], use[i] - 1);
            acc *= to_f(d);
        }
        part[b] = acc;
    }
    Float50 out(1);
    for (const auto& p : part) out *= p;
    return out;
}

Float50 tail_fraction(const DensityProblem& pr, i64 L) {
    // cyclic/AP factors are 1 - O(l^-4), Koblitz 1 - O(l^-2)
    if (pr.kind == ProblemKind::Koblitz) return Float50(2) / Float50(L);
    return Float50(2) / (Float50(3) * Float50(L) * Float50(L) * Float50(L));
}

void validate(const DensityProblem& pr, i64 L) {
    if (L < 2) throw std::invalid_argument("truncation bound must be at least 2");
    if (pr.f < 1) throw std::invalid_argument("modulus must be positive");
    if (pr.t < 1) throw std::invalid_argument("Koblitz parameter must be positive");
}

DensityProblem normalized(DensityProblem pr) {
    if (pr.kind == ProblemKind::CyclicAP) pr.a = ((pr.a % pr.f) + pr.f) % pr.f;
    return pr;
}

std::vector<i64> odd_discriminant_primes(i64 D) {
    std::vector<i64> out;
    for (auto [q, e] : factorize(D < 0 ? -D : D))
        if (q != 2) out.push_back(q);
    return out;
}

// 2-part of D as a prime discriminant: 1, -4, 8 or -8
i64 two_part_discriminant(i64 D) {
    i64 d_odd = 1;
    for (i64 q : odd_discriminant_primes(D)) d_odd *= (q % 4 == 1) ? q : -q;
    return D / d_odd;
}

}  // namespace

std::string DensityProblem::str() const {
    switch (kind) {
        case ProblemKind::Cyclic: return "cyclic";
        case ProblemKind::CyclicAP:
            return "cyclic-ap a=" + std::to_string(a) + " f=" + std::to_string(f);
        case ProblemKind::Koblitz: return "koblitz t=" + std::to_string(t);
    }
    return "?";
}

int problem_exponent(const DensityProblem& pr, i64 ell) {
    switch (pr.kind) {
        case ProblemKind::Cyclic: return 1;
        case ProblemKind::CyclicAP: return std::max(1, valuation(pr.f, ell));
        case ProblemKind::Koblitz: return valuation(pr.t, ell) + 1;
    }
    return 1;
}

LocalSet local_set(const DensityProblem& pr, i64 ell, std::size_t component,
                   const MatrixGroup& g) {
    u64 level = g.level();
    u64 need = (u64)ipow(ell, problem_exponent(pr, ell));
    for (u64 l = level; l != 1; l /= (u64)ell)
        if (l % (u64)ell != 0) throw std::invalid_argument("component level is not a power of ell");
    if (level % need != 0) throw std::invalid_argument("component level below the working level");
    LocalSet s{component, {}};
    for (std::size_t j = 0; j < g.size(); ++j) {
        Mat m = g.element(j);
        bool in = false;
        switch (pr.kind) {
            case ProblemKind::Cyclic:
                in = !m.reduced((u64)ell).is_identity();
                break;
            case ProblemKind::CyclicAP: {
                in = !m.reduced((u64)ell).is_identity();
                int v = valuation(pr.f, ell);
                if (in && v > 0) {
                    u64 md = (u64)ipow(ell, v);
                    in = m.reduced(md).det() == (u64)(((pr.a % (i64)md) + (i64)md) % (i64)md);
                }
                break;
            }
            case ProblemKind::Koblitz: {
                int e = valuation(pr.t, ell);
                i64 md = ipow(ell, e + 1);
                Mat r = m.reduced((u64)md);
                i64 x = ((1 - (i64)r.a) * (1 - (i64)r.d) - (i64)r.b * (i64)r.c) % md;
                x = (x + md) % md;
                in = x != 0 && x % ipow(ell, e) == 0;
                break;
            }
        }
        if (in) s.elements.push_back((u32)j);
    }
    return s;
}

Rational local_density(const DensityProblem& pr, i64 ell, const MatrixGroup& g) {
    return Rational((i64)local_set(pr, ell, 0, g).elements.size(), (i64)g.size());
}

Rational generic_local_density(const DensityProblem& pr, i64 ell) {
    Int l2 = Int(ell) * ell;
    Rational generic_cyclic = 1 - Rational(1, (l2 - 1) * (l2 - ell));
    switch (pr.kind) {
        case ProblemKind::Cyclic: return generic_cyclic;
        case ProblemKind::CyclicAP: {
            int v = valuation(pr.f, ell);
            if (v == 0) return generic_cyclic;
            if (pr.a % ell == 0) return Rational(0);
            Rational d(1, euler_phi(ipow(ell, v)));
            if (((pr.a % ell) + ell) % ell == 1)
                d *= 1 - Rational(1, Int(ell) * (ell - 1) * (ell + 1));
            return d;
        }
        case ProblemKind::Koblitz: {
            if (pr.t % ell == 0)
                throw std::invalid_argument("no closed form at a prime dividing t");
            // 1 - |{det(1 - A) = 0 mod l}| / |GL2(Z/l)|
            Int bad = l2 + Int(ell - 2) * (l2 + ell);
            return 1 - Rational(bad, (l2 - 1) * (l2 - ell));
        }
    }
    return Rational(1);
}

ProblemSpec build_problem_spec(const CatalogEntry& e, const DensityProblem& pr) {
    if (e.nonabelian)
        throw std::invalid_argument("entry has non-abelian entanglements; no character spec");
    std::set<i64> ps;
    for (auto [p, w] : e.level_support) ps.insert(p);
    if (pr.kind == ProblemKind::CyclicAP)
        for (auto [p, w] : factorize(pr.f)) ps.insert(p);
    if (pr.kind == ProblemKind::Koblitz)
        for (auto [p, w] : factorize(pr.t)) ps.insert(p);

    std::vector<const RelationRule*> active;
    for (const auto& r : e.relations) {
        bool ok = true;
        for (auto [gp, range] : r.guards) {
            int pe = problem_exponent(pr, gp);
            if (pe < range.first || pe > range.second) ok = false;
        }
        if (ok) active.push_back(&r);
    }

    std::set<i64> involved;
    for (const auto* r : active)
        for (const auto& [p, fn] : r->psi) involved.insert(p);

    ProblemSpec out;
    for (i64 p : ps) {
        int w = problem_exponent(pr, p);
        for (const auto* r : active)
            if (r->needs.count(p)) w = std::max(w, r->needs.at(p));
        if (e.block(p) || involved.count(p)) {
            std::size_t idx = out.spec.components.size();
            MatrixGroup g = e.component_at(p, w);
            out.sets.push_back(local_set(pr, p, idx, g));
            out.spec.components.push_back({p, w, std::move(g)});
            out.primes.push_back(p);
        } else {
            out.closed_form[p] = generic_local_density(pr, p);
        }
    }
    for (const auto* r : active) {
        EntanglementRelation rel;
        rel.target_divisors = r->target_divisors;
        rel.maps.resize(out.spec.components.size());
        for (std::size_t i = 0; i < out.spec.components.size(); ++i) {
            i64 p = out.primes[i];
            auto it = r->psi.find(p);
            if (it == r->psi.end()) continue;
            const auto& g = out.spec.components[i].group;
            rel.maps[i].resize(g.size());
            for (std::size_t j = 0; j < g.size(); ++j) {
                auto v = it->second(g.element(j));
                if (v.size() != r->target_divisors.size())
                    throw std::logic_error("relation value has wrong arity");
                for (std::size_t k = 0; k < v.size(); ++k) {
                    i64 d = r->target_divisors[k];
                    v[k] = ((v[k] % d) + d) % d;
                }
                rel.maps[i][j] = std::move(v);
            }
        }
        out.spec.relations.push_back(std::move(rel));
    }
    return out;
}

DensityResult compute_density(const CatalogEntry& e, const DensityProblem& pr0, i64 L) {
    validate(pr0, L);
    DensityProblem pr = normalized(pr0);
    DensityResult res;
    res.truncation_L = L;
    res.problem = pr.str();

    std::set<i64> skip;
    if (e.nonabelian) {
        if (pr.kind != ProblemKind::Cyclic)
            throw std::invalid_argument(
                "only the cyclic-reduction constant is known for this family");
        // the joint factor at the entangled level equals the generic factor
        // at the remaining prime, i.e. the factor at drop_prime disappears
        skip.insert(e.drop_prime);
        res.special_delta[e.drop_prime] = Rational(1);
    } else {
        ProblemSpec spec = build_problem_spec(e, pr);
        if (!spec.spec.components.empty()) {
            auto fr = member_fraction(spec.spec, spec.sets);
            res.correction = fr.correction;
            if (fr.obstruction_component) {
                res.vanishing = Vanishing::Local;
                res.vanishing_prime = spec.primes[*fr.obstruction_component];
            } else if (fr.correction == 0) {
                res.vanishing = Vanishing::Entanglement;
            }
            for (std::size_t i = 0; i < spec.spec.components.size(); ++i)
                res.special_delta[spec.primes[i]] =
                    Rational((i64)spec.sets[i].elements.size(),
                             (i64)spec.spec.components[i].group.size());
        }
        for (const auto& [p, d] : spec.closed_form) {
            res.special_delta[p] = d;
            if (d == 0 && res.vanishing == Vanishing::None) {
                res.vanishing = Vanishing::Local;
                res.vanishing_prime = p;
            }
        }
        for (const auto& [p, d] : res.special_delta) skip.insert(p);
    }

    Rational special(1);
    for (const auto& [p, d] : res.special_delta) {
        Rational v = d;
        if (pr.kind == ProblemKind::Koblitz) v *= Rational(p, p - 1);
        special *= v;
    }
    res.naive_value = to_f(special) * generic_product(pr, L, skip);
    res.constant = to_f(res.correction) * res.naive_value;
    Float50 tf = tail_fraction(pr, L);
    res.tail_low = res.constant * (Float50(1) - tf);
    res.tail_high = res.constant;
    return res;
}

std::vector<Rational> phi2_E_values(const EntanglementSpec& spec,
                                    const std::vector<LocalSet>& sets) {
    PhiGroup phi = build_phi(spec);
    std::size_t n = spec.components.size();
    std::vector<Rational> out(n, Rational(1));
    if (phi.group.order() == 1) return out;
    if (phi.group.order() != 2)
        throw std::invalid_argument("Phi has more than one nontrivial character");
    auto chis = characters(phi.group);
    for (std::size_t i = 0; i < n; ++i) {
        const LocalSet* s = nullptr;
        for (const auto& ls : sets)
            if (ls.component == i) s = &ls;
        if (!s || s->elements.empty()) {
            out[i] = Rational(0);
            continue;
        }
        auto lift = lift_character(phi, chis[1], i);
        CyclotomicNumber sum;
        for (u32 j : s->elements) sum = sum + lift[j];
        sum = sum * Rational(1, (i64)s->elements.size());
        if (!sum.is_rational()) throw std::logic_error("E value not rational");
        out[i] = sum.to_rational();
    }
    return out;
}

Rational serre_cyclic_correction(i64 D) {
    if (((D % 4) + 4) % 4 != 1) return Rational(1);
    Rational prod(-1, (2 * 2 - 1) * (2 * 2 - 2) - 1);  // ell = 2
    for (i64 q : odd_discriminant_primes(D))
        prod *= Rational(Int(-1), (Int(q) * q - 1) * (Int(q) * q - q) - 1);
    return 1 + prod;
}

Rational serre_ap_E2(i64 a, i64 f, i64 D) {
    i64 d2 = two_part_discriminant(D);
    if (d2 == -4 && (std::abs(D) == 4 || f % 4 != 0)) return Rational(0);
    if ((d2 == 8 || d2 == -8) && (std::abs(D) == 8 || f % 8 != 0)) return Rational(0);
    return Rational(-kronecker(d2, a), 5);
}

Rational serre_ap_correction(i64 a, i64 f, i64 D) {
    Rational prod = serre_ap_E2(a, f, D);
    for (i64 q : odd_discriminant_primes(D)) {
        if (f % q == 0)
            prod *= kronecker(a, q);
        else
            prod *= Rational(Int(-1), (Int(q) * q - 1) * (Int(q) * q - q) - 1);
    }
    return 1 + prod;
}

Rational serre_ap_delta(i64 a, i64 f, i64 D, i64 ell) {
    DensityProblem pr{ProblemKind::CyclicAP, a, f, 1};
    if (ell != 2) return generic_local_density(pr, ell);
    int e2 = valuation(f, 2);
    if (e2 > 0 && a % 2 == 0) return Rational(0);
    i64 phi = euler_phi(ipow(2, e2));
    i64 a8 = ((a % 8) + 8) % 8;
    if (std::abs(D) == 4) {
        if (f % 4 != 0) return Rational(5, 6);
        return a8 % 4 == 3 ? Rational(1, phi) : Rational(2, 3) / phi;
    }
    if (std::abs(D) == 8) {
        if (f % 8 != 0)
            return e2 >= 2 ? Rational(5, 12) : Rational(5, 6);
        bool full = (D == 8) ? (a8 == 3 || a8 == 5) : (a8 == 5 || a8 == 7);
        return full ? Rational(1, phi) : Rational(2, 3) / phi;
    }
    return generic_local_density(pr, 2);  // a odd, so a = 1 mod 2
}

Rational serre_koblitz_correction(i64 D) {
    if (((D % 4) + 4) % 4 != 1) return Rational(1);
    Rational prod(1);
    for (i64 q : odd_discriminant_primes(D))
        prod *= Rational(Int(1), Int(q) * q * q - 2 * Int(q) * q - q + 3);
    return 1 + prod;
}

DensityResult serre_cyclic(i64 D, i64 L) {
    DensityProblem pr{ProblemKind::Cyclic};
    validate(pr, L);
    DensityResult res;
    res.truncation_L = L;
    res.problem = pr.str();
    res.correction = serre_cyclic_correction(D);
    res.naive_value = generic_product(pr, L, {});
    res.constant = to_f(res.correction) * res.naive_value;
    res.tail_low = res.constant * (Float50(1) - tail_fraction(pr, L));
    res.tail_high = res.constant;
    return res;
}

DensityResult serre_ap(i64 a, i64 f, i64 D, i64 L) {
    DensityProblem pr = normalized({ProblemKind::CyclicAP, a, f, 1});
    validate(pr, L);
    DensityResult res;
    res.truncation_L = L;
    res.problem = pr.str();
    res.correction = serre_ap_correction(pr.a, pr.f, D);
    std::set<i64> skip{2};
    for (auto [p, w] : factorize(pr.f)) skip.insert(p);
    Rational special(1);
    for (i64 p : skip) {
        Rational d = serre_ap_delta(pr.a, pr.f, D, p);
        res.special_delta[p] = d;
        special *= d;
        if (d == 0 && res.vanishing == Vanishing::None) {
            res.vanishing = Vanishing::Local;
            res.vanishing_prime = p;
        }
    }
    if (res.vanishing == Vanishing::None && res.correction == 0)
        res.vanishing = Vanishing::Entanglement;
    res.naive_value = to_f(special) * generic_product(pr, L, skip);
    res.constant = to_f(res.correction) * res.naive_value;
    res.tail_low = res.constant * (Float50(1) - tail_fraction(pr, L));
    res.tail_high = res.constant;
    return res;
}

DensityResult serre_koblitz(i64 D, i64 L) {
    DensityProblem pr{ProblemKind::Koblitz, 0, 1, 1};
    validate(pr, L);
    DensityResult res;
    res.truncation_L = L;
    res.problem = pr.str();
    res.correction = serre_koblitz_correction(D);
    res.naive_value = generic_product(pr, L, {});
    res.constant = to_f(res.correction) * res.naive_value;
    res.tail_low = res.constant * (Float50(1) - tail_fraction(pr, L));
    res.tail_high = res.constant;
    return res;
}

ArtinResult artin_classical(const Int& g, i64 L, i64 N) {
    if (g == 0 || g == 1 || g == -1)
        throw std::invalid_argument("primitive-root density needs |g| > 1");
    if (L < 3 || N < 2) throw std::invalid_argument("truncation bounds too small");
    ArtinResult res;
    res.truncation_L = L;
    res.truncation_N = N;
    // h = largest k with g a perfect k-th power (odd k when g < 0)
    Int ag = abs(g);
    for (int k = 2; k <= 63; ++k) {
        if (g < 0 && k % 2 == 0) continue;
        Int lo = 1, hi = ag;
        while (lo < hi) {  // smallest r with r^k >= |g|
            Int mid = (lo + hi) / 2;
            Int p = 1;
            for (int i = 0; i < k && p <= ag; ++i) p *= mid;
            if (p < ag) lo = mid + 1; else hi = mid;
        }
        Int p = 1;
        for (int i = 0; i < k; ++i) p *= lo;
        if (p == ag) res.h = k;
    }
    res.D = quad_field_discriminant(g);
    if (res.h % 2 == 0) {
        res.zero = true;
        res.reason = "g is a perfect square, so it is never a primitive root";
        return res;
    }
    if (((res.D % 4) + 4) % 4 == 1) {
        Rational prod(1);
        for (auto [q, e] : factorize(res.D < 0 ? -res.D : res.D)) {
            if (res.h % q == 0)
                prod *= Rational(-1, q - 2);
            else
                prod *= Rational(Int(-1), Int(q) * q - q - 1);
        }
        res.correction = 1 - prod;
    }
    Float50 prod(1);
    for (u64 p : primes_up_to((u64)L)) {
        i64 q = (i64)p;
        Rational f = res.h % q == 0 ? 1 - Rational(1, q - 1)
                                    : 1 - Rational(1, Int(q) * (q - 1));
        prod *= to_f(f);
    }
    res.product_value = to_f(res.correction) * prod;
    res.product_tail = res.product_value * Float50(2) / Float50(L);

    // Hooley's sum over squarefree n: mu(n) / [F_n : Q], with the degree
    // halved when D = 1 mod 4 and lcm(2, |D|) | n
    std::vector<int> mu(N + 1, 1);
    std::vector<i64> phi(N + 1);
    for (i64 i = 0; i <= N; ++i) phi[i] = i;
    std::vector<bool> sq(N + 1, true);
    for (i64 p = 2; p <= N; ++p) {
        if (phi[p] != p) continue;  // p not prime
        for (i64 m = p; m <= N; m += p) {
            phi[m] -= phi[m] / p;
            mu[m] = -mu[m];
        }
        if (p <= N / p)
            for (i64 m = p * p; m <= N; m += p * p) sq[m] = false;
    }
    i64 half_mod = std::lcm<i64>(2, res.D < 0 ? -res.D : res.D);
    Float50 sum(0);
    for (i64 n = 1; n <= N; ++n) {
        if (!sq[n] || mu[n] == 0) continue;
        Rational deg(n * phi[n], std::gcd(n, res.h));
        if (((res.D % 4) + 4) % 4 == 1 && n % half_mod == 0) deg /= 2;
        sum += Float50(mu[n]) / to_f(deg);
    }
    res.sum_head = sum;
    res.sum_tail = Float50(2) * sqrt(Float50(2)) / sqrt(Float50(N));
    return res;
}

}  // namespace ell
