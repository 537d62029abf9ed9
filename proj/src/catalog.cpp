#include "ell/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ell {

namespace {

i64 ipow(i64 p, int e) {
    i64 n = 1;
    while (e-- > 0) n *= p;
    return n;
}

i64 to_i64(const Int& x) {
    if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
        throw std::overflow_error("integer too large for catalog arithmetic");
    return x.convert_to<i64>();
}

i64 mod4(i64 x) { return ((x % 4) + 4) % 4; }

// (1 - (det g | q)) / 2 for odd prime q
i64 legendre_bit(const Mat& g, i64 q) {
    return (1 - kronecker((i64)g.reduced((u64)q).det(), q)) / 2;
}

// smallest k < ord with base^k = x mod m (+/- variant accepts -x too)
i64 dlog(i64 base, u64 x, i64 m, i64 ord, bool up_to_sign) {
    for (i64 k = 0; k < ord; ++k) {
        u64 v = powmod((u64)base, (u64)k, (u64)m);
        if (v == x || (up_to_sign && (u64)m - v == x)) return k;
    }
    throw std::logic_error("discrete log not found");
}

// rebuild a MatrixGroup from a known element list, picking generators greedily
MatrixGroup from_codes(u64 level, std::vector<u64> codes) {
    std::sort(codes.begin(), codes.end());
    std::vector<Mat> gens;
    MatrixGroup closed = trivial_group(level);
    for (u64 c : codes) {
        Mat m = Mat::from_code(c, level);
        if (!closed.contains(m)) {
            gens.push_back(m);
            closed = group_close(gens, level);
        }
    }
    return MatrixGroup(level, std::move(codes), std::move(gens));
}

// eta: H(8) -> Z/4, the character cut out by the zeta_5-entanglement of the
// level-8 block of curve-4x4; tabulated by element code at level 8
const std::map<u64, i64>& eta8_table() {
    static const std::map<u64, i64> table = [] {
        static const struct { u64 key; i64 val; } kEta8[] = {
            {513,0},{533,1},{545,2},{565,3},{583,0},{597,1},{611,2},{625,3},
            {645,0},{661,1},{677,2},{693,3},{707,0},{725,1},{743,2},{753,3},
            {769,0},{789,1},{801,2},{821,3},{839,0},{853,1},{867,2},{881,3},
            {901,0},{917,1},{933,2},{949,3},{963,0},{981,1},{999,2},{1009,3},
            {1543,0},{1555,3},{1575,2},{1587,1},{1605,0},{1623,3},{1633,2},{1651,1},
            {1667,0},{1683,3},{1699,2},{1715,1},{1729,0},{1751,3},{1765,2},{1779,1},
            {1799,0},{1811,3},{1831,2},{1843,1},{1861,0},{1879,3},{1889,2},{1907,1},
            {1923,0},{1939,3},{1955,2},{1971,1},{1985,0},{2007,3},{2021,2},{2035,1},
            {2565,0},{2577,1},{2597,2},{2609,3},{2627,0},{2641,1},{2663,2},{2677,3},
            {2689,0},{2705,1},{2721,2},{2737,3},{2759,0},{2769,1},{2787,2},{2805,3},
            {2821,0},{2833,1},{2853,2},{2865,3},{2883,0},{2897,1},{2919,2},{2933,3},
            {2945,0},{2961,1},{2977,2},{2993,3},{3015,0},{3025,1},{3043,2},{3061,3},
            {3587,0},{3607,3},{3619,2},{3639,1},{3649,0},{3667,3},{3685,2},{3703,1},
            {3719,0},{3735,3},{3751,2},{3767,1},{3781,0},{3795,3},{3809,2},{3831,1},
            {3843,0},{3863,3},{3875,2},{3895,1},{3905,0},{3923,3},{3941,2},{3959,1},
            {3975,0},{3991,3},{4007,2},{4023,1},{4037,0},{4051,3},{4065,2},{4087,1}};
        std::map<u64, i64> t;
        for (const auto& e : kEta8) t[e.key] = e.val;
        return t;
    }();
    return table;
}

// eta mod 2 factors through reduction to level 4; verified while building
const std::map<u64, i64>& eta4_table() {
    static const std::map<u64, i64> table = [] {
        std::map<u64, i64> t;
        for (const auto& [key, val] : eta8_table()) {
            u64 c4 = Mat::from_code(key, 8).reduced(4).code();
            auto [it, fresh] = t.emplace(c4, val % 2);
            if (!fresh && it->second != val % 2)
                throw std::logic_error("eta parity not defined at level 4");
        }
        return t;
    }();
    return table;
}

CatalogEntry make_lang_trotter_11() {
    CatalogEntry e;
    e.id = "lang-trotter-11";
    e.curve = {0, -1, 1, -10, -20};
    e.level_support = {{2, 1}, {5, 2}, {11, 1}};
    // G(25) = {[[1+5a, 5b], [5c, u]]}, order 2500
    e.components.push_back({5, 2,
        group_close({Mat{25, 6, 0, 0, 1}, Mat{25, 1, 5, 0, 1},
                     Mat{25, 1, 0, 5, 1}, Mat{25, 1, 0, 0, 2}}, 25)});
    // sqrt(Delta) entanglement: eps(g_2) = (det g_11 | 11)
    RelationRule r1;
    r1.target_divisors = {2};
    r1.needs = {{2, 1}, {11, 1}};
    r1.psi[2] = [](const Mat& g) {
        return std::vector<i64>{signature_mod2(g.reduced(2))};
    };
    r1.psi[11] = [](const Mat& g) { return std::vector<i64>{legendre_bit(g, 11)}; };
    e.relations.push_back(std::move(r1));
    // zeta_5 entanglement at level 25: (a_11 - 1)/5 = -dlog_{+-2}(det g_11)
    RelationRule r2;
    r2.target_divisors = {5};
    r2.guards = {{5, {2, std::numeric_limits<int>::max()}}};
    r2.needs = {{5, 2}, {11, 1}};
    r2.psi[5] = [](const Mat& g) {
        Mat m = g.reduced(25);
        return std::vector<i64>{(i64)((m.a - 1) / 5) % 5};
    };
    r2.psi[11] = [](const Mat& g) {
        i64 k = dlog(2, g.reduced(11).det(), 11, 5, true);
        return std::vector<i64>{(5 - k) % 5};
    };
    e.relations.push_back(std::move(r2));
    e.notes = "y^2 + y = x^3 - x^2 - 10x - 20, m_E = 2 * 5^2 * 11";
    return e;
}

CatalogEntry make_curve_4x4() {
    CatalogEntry e;
    e.id = "curve-4x4";
    e.curve = {0, 1, 0, 4, 4};
    e.level_support = {{2, 3}, {3, 1}, {5, 1}};
    // level-8 block H(8), order 128, index 12 in GL2(Z/8)
    e.components.push_back({2, 3,
        group_close({Mat{8, 1, 0, 2, 5}, Mat{8, 1, 1, 0, 7}, Mat{8, 1, 2, 0, 5}}, 8)});
    // level-3 block: Borel {[[1, b], [0, d]]}, order 6
    e.components.push_back({3, 1,
        group_close({Mat{3, 1, 1, 0, 1}, Mat{3, 1, 0, 0, 2}}, 3)});
    // eta(g_2) = -dlog_2(det g_5) in Z/4, defined at level 8
    RelationRule r8;
    r8.target_divisors = {4};
    r8.guards = {{2, {3, std::numeric_limits<int>::max()}}};
    r8.needs = {{2, 3}, {5, 1}};
    r8.psi[2] = [](const Mat& g) {
        return std::vector<i64>{eta8_table().at(g.reduced(8).code())};
    };
    r8.psi[5] = [](const Mat& g) {
        i64 k = dlog(2, g.reduced(5).det(), 5, 4, false);
        return std::vector<i64>{(4 - k) % 4};
    };
    e.relations.push_back(std::move(r8));
    // its mod-2 coarsening, the working relation at level 4
    RelationRule r4;
    r4.target_divisors = {2};
    r4.guards = {{2, {2, 2}}};
    r4.needs = {{2, 2}, {5, 1}};
    r4.psi[2] = [](const Mat& g) {
        return std::vector<i64>{eta4_table().at(g.reduced(4).code())};
    };
    r4.psi[5] = [](const Mat& g) { return std::vector<i64>{legendre_bit(g, 5)}; };
    e.relations.push_back(std::move(r4));
    e.notes = "y^2 = x^3 + x^2 + 4x + 4, m_E = 120, Phi = Z/4";
    return e;
}

CatalogEntry make_curve_17() {
    CatalogEntry e;
    e.id = "curve-17";
    e.curve = {1, -1, 1, -91, -310};
    e.level_support = {{2, 1}, {17, 1}};
    // G(2) = <[[1,1],[0,1]]>, order 2; eps nontrivial on it
    e.components.push_back({2, 1, group_close({Mat{2, 1, 1, 0, 1}}, 2)});
    RelationRule r;
    r.target_divisors = {2};
    r.needs = {{2, 1}, {17, 1}};
    r.psi[2] = [](const Mat& g) {
        return std::vector<i64>{signature_mod2(g.reduced(2))};
    };
    r.psi[17] = [](const Mat& g) { return std::vector<i64>{legendre_bit(g, 17)}; };
    e.relations.push_back(std::move(r));
    e.notes = "discriminant-17 curve, m = 34, eps = theta_17 o det";
    return e;
}

CatalogEntry make_family6_example() {
    CatalogEntry e;
    e.id = "family6-example";
    e.curve = {0, 0, 0, -63504, 6223392};
    e.level_support = {{2, 1}, {3, 1}};
    e.nonabelian = true;
    e.drop_prime = 3;
    e.notes = "level-6 family member (t = 1): non-abelian entanglement, "
              "joint mod-6 factor equals the generic mod-2 factor";
    return e;
}

}  // namespace

Int WeierstrassCurve::discriminant() const {
    return weierstrass_discriminant({Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)});
}

std::vector<i64> WeierstrassCurve::bad_primes() const {
    Int d = discriminant();
    if (d == 0) throw std::invalid_argument("singular curve");
    std::vector<i64> out;
    for (auto [p, e] : factorize(to_i64(abs(d)))) out.push_back(p);
    return out;
}

i64 quad_field_discriminant(const Int& delta) {
    if (delta == 0) throw std::invalid_argument("discriminant of Q(sqrt 0)");
    i64 sf = squarefree_kernel(to_i64(delta));
    return mod4(sf) == 1 ? sf : 4 * sf;
}

SerreCurveData serre_curve_data(const Int& delta) {
    SerreCurveData d;
    d.delta_sf = squarefree_kernel(to_i64(delta));
    d.D = mod4(d.delta_sf) == 1 ? d.delta_sf : 4 * d.delta_sf;
    if (mod4(d.delta_sf) == 1) d.ord2D = 0;
    else if (d.delta_sf % 2 != 0) d.ord2D = 2;
    else {
        d.ord2D = 3;
        d.delta_prime = d.delta_sf / 2;
    }
    return d;
}

const GaloisComponentData* CatalogEntry::block(i64 prime) const {
    for (const auto& c : components)
        if (c.prime == prime) return &c;
    return nullptr;
}

MatrixGroup CatalogEntry::component_at(i64 prime, int exponent) const {
    u64 level = (u64)ipow(prime, exponent);
    const auto* b = block(prime);
    if (!b) {
        if (gl2_order(level) > Int(kGroupCap))
            throw std::length_error("full GL2 level exceeds the group cap");
        return full_gl2(level);
    }
    if (exponent == b->base_exponent) return b->base;
    if (exponent < b->base_exponent) return reduce_group(b->base, level);
    Int size = b->base.size();
    for (int k = b->base_exponent; k < exponent; ++k)
        size *= Int(prime) * prime * prime * prime;
    if (size > Int(kGroupCap))
        throw std::length_error("component preimage exceeds the group cap");
    return preimage_group(b->base, level);
}

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back(make_lang_trotter_11());
        v.push_back(make_curve_4x4());
        v.push_back(make_curve_17());
        v.push_back(make_family6_example());
        v.push_back(serre_entry_for_curve({0, 0, 1, -1, 0}, "serre-37a"));
        return v;
    }();
    return entries;
}

const CatalogEntry* find_entry(const std::string& id) {
    for (const auto& e : catalog_entries())
        if (e.id == id) return &e;
    return nullptr;
}

CatalogEntry serre_entry(i64 D, std::string id) {
    if (D == 0 || D == 1 || ((D % 4 + 4) % 4 > 1))
        throw std::invalid_argument("not a quadratic field discriminant");
    CatalogEntry e;
    e.id = id.empty() ? "serre-D" + std::to_string(D) : std::move(id);
    auto fac = factorize(D < 0 ? -D : D);
    int ord2 = fac.count(2) ? fac.at(2) : 0;
    if (ord2 != 0 && ord2 != 2 && ord2 != 3)
        throw std::invalid_argument("not a quadratic field discriminant");
    // split D into prime discriminants: odd part is a product of q* = +-q = 1
    // mod 4; what is left over is the 2-part, one of 1, -4, 8, -8
    i64 d_odd = 1;
    std::vector<i64> odd_primes;
    for (auto [q, k] : fac)
        if (q != 2) {
            if (k != 1) throw std::invalid_argument("not a quadratic field discriminant");
            odd_primes.push_back(q);
            d_odd *= (q % 4 == 1) ? q : -q;
        }
    i64 d_two = D / d_odd;
    int w2 = std::max(1, ord2);
    e.level_support[2] = w2;
    for (i64 q : odd_primes) e.level_support[q] = 1;
    if (odd_primes.empty()) {
        // |D| in {4, 8}: the entanglement involves prime 2 alone, so the
        // 2-block itself is the index-2 cut subgroup at level |D|
        std::vector<u64> codes;
        auto full = full_gl2((u64)ipow(2, w2));
        for (std::size_t i = 0; i < full.size(); ++i) {
            Mat m = full.element(i);
            if (signature_mod2(m.reduced(2)) == (1 - kronecker(d_two, (i64)m.det())) / 2)
                codes.push_back(m.code());
        }
        e.components.push_back({2, w2, from_codes((u64)ipow(2, w2), std::move(codes))});
        e.notes = "Serre curve, D = " + std::to_string(D);
        return e;
    }
    RelationRule r;
    r.target_divisors = {2};
    r.guards = {{2, {w2, std::numeric_limits<int>::max()}}};
    r.needs[2] = w2;
    r.psi[2] = [d_two, w2](const Mat& g) {
        Mat m = g.reduced((u64)ipow(2, w2));
        return std::vector<i64>{
            (signature_mod2(m.reduced(2)) + (1 - kronecker(d_two, (i64)m.det())) / 2) % 2};
    };
    for (i64 q : odd_primes) {
        r.needs[q] = 1;
        r.psi[q] = [q](const Mat& g) { return std::vector<i64>{legendre_bit(g, q)}; };
    }
    e.relations.push_back(std::move(r));
    e.notes = "Serre curve, D = " + std::to_string(D);
    return e;
}

CatalogEntry serre_entry_for_curve(const WeierstrassCurve& c, std::string id) {
    CatalogEntry e = serre_entry(quad_field_discriminant(c.discriminant()), std::move(id));
    e.curve = c;
    return e;
}

Rational xh_family_j(const Rational& t) {
    Rational t3 = t * t * t;
    return Rational(27648) * t3 * (Rational(1) - Rational(4) * t3);
}

ProductSubgroup xh_level6_subgroup() {
    // graph of GL2(Z/2) against GL2(Z/3)/N, N the unique index-6 normal
    // subgroup; the Goursat quotient is S3, non-abelian
    auto n = group_close({Mat{3, 0, 2, 1, 0}, Mat{3, 1, 2, 2, 2}, Mat{3, 2, 0, 0, 2}}, 3);
    auto g3 = full_gl2(3);
    auto g2 = full_gl2(2);
    std::vector<u32> cosets;
    auto q = quotient(g3, n, &cosets);
    std::vector<int> img(q.size(), -1);
    std::vector<bool> used(q.size(), false);
    auto g2_order = [&](u32 y) {
        Mat m = g2.element(y), acc = m;
        u32 o = 1;
        while (!acc.is_identity()) { acc = acc.mul(m); ++o; }
        return o;
    };
    std::function<bool(u32)> assign = [&](u32 x) {
        if (x == q.size()) {
            for (u32 a = 0; a < q.size(); ++a)
                for (u32 b = 0; b < q.size(); ++b) {
                    Mat m = g2.element((std::size_t)img[a]).mul(g2.element((std::size_t)img[b]));
                    if ((u32)img[q.mul[a][b]] != g2.index_of(m)) return false;
                }
            return true;
        }
        for (u32 y = 0; y < q.size(); ++y) {
            if (used[y] || q.order_of(x) != g2_order(y)) continue;
            img[x] = (int)y;
            used[y] = true;
            if (assign(x + 1)) return true;
            used[y] = false;
            img[x] = -1;
        }
        return false;
    };
    if (!assign(0)) throw std::logic_error("no isomorphism GL2(3)/N = GL2(2)");
    std::vector<std::vector<u32>> tuples;
    for (u32 j = 0; j < g3.size(); ++j)
        tuples.push_back({(u32)img[cosets[j]], j});
    return ProductSubgroup({g2, g3}, std::move(tuples));
}

}  // namespace ell
