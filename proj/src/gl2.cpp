#include "ell/gl2.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ell {

Mat Mat::mul(const Mat& o) const {
    return Mat{n, (a * o.a + b * o.c) % n, (a * o.b + b * o.d) % n,
               (c * o.a + d * o.c) % n, (c * o.b + d * o.d) % n};
}

Mat Mat::inverse() const {
    u64 di = invmod(det(), n);
    return Mat{n, d * di % n, (n - b % n) % n * di % n,
               (n - c % n) % n * di % n, a * di % n};
}

Mat Mat::from_code(u64 code, u64 n) {
    Mat m;
    m.n = n;
    m.d = code % n; code /= n;
    m.c = code % n; code /= n;
    m.b = code % n; code /= n;
    m.a = code;
    return m;
}

Int gl2_order(u64 n) {
    if (n == 1) return 1;
    Int r = Int(n) * n * n * n;
    for (auto [p, e] : factorize((i64)n)) {
        (void)e;
        r = r * (p - 1) / p;
        r = r * (Int(p) * p - 1) / (Int(p) * p);
    }
    return r;
}

MatrixGroup::MatrixGroup(u64 level, std::vector<u64> sorted_codes,
                         std::vector<Mat> gens)
    : level_(level), codes_(std::move(sorted_codes)), gens_(std::move(gens)) {}

bool MatrixGroup::contains(const Mat& m) const {
    return std::binary_search(codes_.begin(), codes_.end(), m.code());
}

std::size_t MatrixGroup::index_of(const Mat& m) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), m.code());
    if (it == codes_.end() || *it != m.code())
        throw std::invalid_argument("element not in group");
    return (std::size_t)(it - codes_.begin());
}

bool MatrixGroup::contains_group(const MatrixGroup& h) const {
    if (h.level_ != level_) return false;
    return std::includes(codes_.begin(), codes_.end(), h.codes_.begin(),
                         h.codes_.end());
}

MatrixGroup group_close(const std::vector<Mat>& generators, u64 level,
                        std::size_t cap) {
    for (const auto& g : generators) {
        if (g.n != level) throw std::invalid_argument("generator level mismatch");
        if (!g.invertible()) throw std::invalid_argument("non-invertible generator");
    }
    std::unordered_set<u64> seen;
    std::vector<Mat> frontier{Mat::identity(level)};
    seen.insert(frontier[0].code());
    std::vector<Mat> all = frontier;
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& x : frontier) {
            for (const auto& g : generators) {
                Mat y = x.mul(g);
                if (seen.insert(y.code()).second) {
                    if (seen.size() > cap)
                        throw std::runtime_error("group closure cap exceeded");
                    next.push_back(y);
                    all.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<u64> codes;
    codes.reserve(all.size());
    for (const auto& m : all) codes.push_back(m.code());
    std::sort(codes.begin(), codes.end());
    return MatrixGroup(level, std::move(codes), generators);
}

MatrixGroup full_gl2(u64 level, std::size_t cap) {
    Int ord = gl2_order(level);
    if (ord > (Int)cap) throw std::runtime_error("full_gl2 cap exceeded");
    std::vector<u64> codes;
    codes.reserve((std::size_t)ord);
    for (u64 a = 0; a < level; ++a)
        for (u64 b = 0; b < level; ++b)
            for (u64 c = 0; c < level; ++c)
                for (u64 d = 0; d < level; ++d) {
                    Mat m{level, a, b, c, d};
                    if (m.invertible()) codes.push_back(m.code());
                }
    std::sort(codes.begin(), codes.end());
    // canonical generators: all elements would be wasteful; record a small set
    std::vector<Mat> gens;
    if (level > 1) {
        // GL2(Z/n) is generated by SL2 generators plus a determinant section.
        gens.push_back(Mat{level, 1, 1, 0, 1});
        gens.push_back(Mat{level, 1, 0, 1, 1});
        for (u64 u = 2; u < level; ++u)
            if (gcd_u64(u, level) == 1) { gens.push_back(Mat{level, 1, 0, 0, u}); break; }
    }
    return MatrixGroup(level, std::move(codes), std::move(gens));
}

MatrixGroup trivial_group(u64 level) {
    return MatrixGroup(level, {Mat::identity(level).code()}, {});
}

MatrixGroup reduce_group(const MatrixGroup& g, u64 m) {
    if (g.level() % m != 0) throw std::invalid_argument("reduce_group: bad level");
    std::set<u64> codes;
    for (std::size_t i = 0; i < g.size(); ++i)
        codes.insert(g.element(i).reduced(m).code());
    return MatrixGroup(m, std::vector<u64>(codes.begin(), codes.end()),
                       {});
}

MatrixGroup preimage_group(const MatrixGroup& g, u64 target, std::size_t cap) {
    u64 base = g.level();
    if (target % base != 0) throw std::invalid_argument("preimage: bad target");
    u64 q = target / base;
    std::size_t total = g.size() * (std::size_t)q * q * q * q;
    if (total > cap) throw std::runtime_error("preimage cap exceeded");
    std::vector<u64> codes;
    codes.reserve(total);
    for (std::size_t i = 0; i < g.size(); ++i) {
        Mat m = g.element(i);
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b)
                for (u64 c = 0; c < q; ++c)
                    for (u64 d = 0; d < q; ++d) {
                        Mat t{target, m.a + base * a, m.b + base * b,
                              m.c + base * c, m.d + base * d};
                        codes.push_back(t.code());
                    }
    }
    std::sort(codes.begin(), codes.end());
    return MatrixGroup(target, std::move(codes), {});
}

bool is_normal(const MatrixGroup& h, const MatrixGroup& g) {
    if (!g.contains_group(h)) throw std::invalid_argument("h not contained in g");
    // conjugating by generators suffices when generators are known; fall back
    // to all elements otherwise
    const std::vector<Mat>* conj = &g.generators();
    std::vector<Mat> all;
    if (conj->empty() && g.size() > 1) {
        all.reserve(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g.element(i));
        conj = &all;
    }
    for (const auto& x : *conj) {
        Mat xi = x.inverse();
        for (std::size_t i = 0; i < h.size(); ++i) {
            Mat y = h.element(i);
            if (!h.contains(x.mul(y).mul(xi))) return false;
        }
    }
    return true;
}

MatrixGroup commutator_subgroup(const MatrixGroup& g) {
    std::vector<Mat> comms;
    std::set<u64> seen;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Mat x = g.element(i), xi = x.inverse();
        for (std::size_t j = 0; j < g.size(); ++j) {
            Mat y = g.element(j);
            Mat c = xi.mul(y.inverse()).mul(x).mul(y);
            if (seen.insert(c.code()).second) comms.push_back(c);
        }
    }
    return group_close(comms, g.level());
}

u32 AbstractFiniteGroup::inverse(u32 x) const {
    for (u32 y = 0; y < mul.size(); ++y)
        if (mul[x][y] == identity) return y;
    throw std::logic_error("no inverse");
}

bool AbstractFiniteGroup::is_abelian() const {
    for (u32 x = 0; x < mul.size(); ++x)
        for (u32 y = (u32)(x + 1); y < mul.size(); ++y)
            if (mul[x][y] != mul[y][x]) return false;
    return true;
}

u32 AbstractFiniteGroup::order_of(u32 x) const {
    u32 o = 1, y = x;
    while (y != identity) { y = mul[y][x]; ++o; }
    return o;
}

u32 AbstractFiniteGroup::pow(u32 x, u64 e) const {
    u32 r = identity;
    for (u64 i = 0; i < e; ++i) r = mul[r][x];
    return r;
}

AbstractFiniteGroup quotient(const MatrixGroup& g, const MatrixGroup& n,
                             std::vector<u32>* coset_of) {
    if (!is_normal(n, g)) throw std::invalid_argument("quotient: not normal");
    // canonical coset representative: minimal code in x*N
    std::unordered_map<u64, u32> rep_id;
    std::vector<u32> cos(g.size());
    std::vector<std::size_t> rep_index;  // element index of one member per coset
    for (std::size_t i = 0; i < g.size(); ++i) {
        Mat x = g.element(i);
        u64 best = ~0ull;
        for (std::size_t j = 0; j < n.size(); ++j)
            best = std::min(best, x.mul(n.element(j)).code());
        auto [it, fresh] = rep_id.emplace(best, (u32)rep_id.size());
        if (fresh) rep_index.push_back(i);
        cos[i] = it->second;
    }
    std::size_t q = rep_id.size();
    AbstractFiniteGroup out;
    out.mul.assign(q, std::vector<u32>(q));
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            Mat prod = g.element(rep_index[a]).mul(g.element(rep_index[b]));
            out.mul[a][b] = cos[g.index_of(prod)];
        }
    out.identity = cos[g.index_of(Mat::identity(g.level()))];
    if (coset_of) *coset_of = cos;
    return out;
}

ProductSubgroup::ProductSubgroup(std::vector<MatrixGroup> factors,
                                 std::vector<std::vector<u32>> tuples)
    : factors_(std::move(factors)), tuples_(std::move(tuples)) {
    std::sort(tuples_.begin(), tuples_.end());
}

bool ProductSubgroup::is_subdirect() const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::set<u32> hit;
        for (const auto& t : tuples_) hit.insert(t[i]);
        if (hit.size() != factors_[i].size()) return false;
    }
    return true;
}

bool ProductSubgroup::contains(const std::vector<u32>& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

namespace {
std::vector<u32> tuple_mul(const std::vector<MatrixGroup>& fs,
                           const std::vector<u32>& x, const std::vector<u32>& y) {
    std::vector<u32> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = (u32)fs[i].index_of(fs[i].element(x[i]).mul(fs[i].element(y[i])));
    return r;
}
}  // namespace

ProductSubgroup product_close(std::vector<MatrixGroup> factors,
                              const std::vector<std::vector<u32>>& gens,
                              std::size_t cap) {
    std::set<std::vector<u32>> seen;
    std::vector<u32> id(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        id[i] = (u32)factors[i].index_of(Mat::identity(factors[i].level()));
    seen.insert(id);
    std::vector<std::vector<u32>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<u32>> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = tuple_mul(factors, x, g);
                if (seen.insert(y).second) {
                    if (seen.size() > cap)
                        throw std::runtime_error("product closure cap exceeded");
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return ProductSubgroup(std::move(factors),
                           std::vector<std::vector<u32>>(seen.begin(), seen.end()));
}

ProductSubgroup full_product(std::vector<MatrixGroup> factors, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& f : factors) {
        if (total > cap / f.size()) throw std::runtime_error("product cap exceeded");
        total *= f.size();
    }
    std::vector<std::vector<u32>> tuples;
    tuples.reserve(total);
    std::vector<u32> cur(factors.size(), 0);
    for (;;) {
        tuples.push_back(cur);
        std::size_t i = factors.size();
        while (i > 0) {
            --i;
            if (++cur[i] < factors[i].size()) break;
            cur[i] = 0;
            if (i == 0) return ProductSubgroup(std::move(factors), std::move(tuples));
        }
    }
}

ProductSubgroup project(const ProductSubgroup& g, const std::vector<int>& s) {
    if (s.empty()) throw std::invalid_argument("empty projection index set");
    std::vector<MatrixGroup> fs;
    for (int i : s) fs.push_back(g.factors().at((std::size_t)i));
    std::set<std::vector<u32>> tuples;
    for (const auto& t : g.tuples()) {
        std::vector<u32> p;
        p.reserve(s.size());
        for (int i : s) p.push_back(t[(std::size_t)i]);
        tuples.insert(std::move(p));
    }
    return ProductSubgroup(std::move(fs),
                           std::vector<std::vector<u32>>(tuples.begin(), tuples.end()));
}

namespace {
// pi_j(ker of projection onto all other coordinates), as a MatrixGroup
MatrixGroup kernel_projection(const ProductSubgroup& g, std::size_t j) {
    const auto& fs = g.factors();
    std::set<u64> codes;
    for (const auto& t : g.tuples()) {
        bool rest_trivial = true;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (i != j && !fs[i].element(t[i]).is_identity()) {
                rest_trivial = false;
                break;
            }
        if (rest_trivial) codes.insert(fs[j].element(t[j]).code());
    }
    return MatrixGroup(fs[j].level(),
                       std::vector<u64>(codes.begin(), codes.end()), {});
}
}  // namespace

GoursatData goursat_data(const ProductSubgroup& g) {
    if (g.factors().size() != 2)
        throw std::invalid_argument("goursat_data expects two factors");
    if (!g.is_subdirect()) throw std::invalid_argument("not subdirect");
    GoursatData out;
    out.n1 = kernel_projection(g, 0);
    out.n2 = kernel_projection(g, 1);
    const MatrixGroup& g1 = g.factors()[0];
    const MatrixGroup& g2 = g.factors()[1];
    std::vector<u32> cos1;
    out.quotient = quotient(g1, out.n1, &cos1);
    out.psi1 = cos1;
    // psi2: y -> psi1(x) for any (x,y) in g; well-defined by Goursat
    out.psi2.assign(g2.size(), 0);
    std::vector<bool> seen(g2.size(), false);
    for (const auto& t : g.tuples()) {
        if (!seen[t[1]]) {
            out.psi2[t[1]] = cos1[t[0]];
            seen[t[1]] = true;
        }
    }
    return out;
}

bool is_normal_in_product(const ProductSubgroup& g) {
    const auto& fs = g.factors();
    // conjugate by one-coordinate generators of the ambient product
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Mat> gens = fs[i].generators();
        if (gens.empty())
            for (std::size_t k = 0; k < fs[i].size(); ++k)
                gens.push_back(fs[i].element(k));
        for (const auto& c : gens) {
            Mat ci = c.inverse();
            for (const auto& t : g.tuples()) {
                std::vector<u32> u = t;
                Mat y = fs[i].element(t[i]);
                u[i] = (u32)fs[i].index_of(c.mul(y).mul(ci));
                if (!g.contains(u)) return false;
            }
        }
    }
    return true;
}

bool has_abelian_entanglements(const ProductSubgroup& g) {
    if (!g.is_subdirect()) throw std::invalid_argument("not subdirect");
    for (std::size_t j = 0; j < g.factors().size(); ++j) {
        MatrixGroup nj = kernel_projection(g, j);
        MatrixGroup comm = commutator_subgroup(g.factors()[j]);
        if (!nj.contains_group(comm)) return false;
    }
    return true;
}

AbstractFiniteGroup product_quotient(const ProductSubgroup& g, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& f : g.factors()) {
        if (total > cap / f.size()) throw std::runtime_error("product cap exceeded");
        total *= f.size();
    }
    // coset id = minimal tuple in t*G
    std::map<std::vector<u32>, u32> rep_id;
    std::vector<std::vector<u32>> rep_tuple;
    const auto& fs = g.factors();
    std::vector<u32> cur(fs.size(), 0);
    std::vector<std::vector<u32>> all;
    all.reserve(total);
    for (;;) {
        all.push_back(cur);
        std::size_t i = fs.size();
        bool done = false;
        while (i > 0) {
            --i;
            if (++cur[i] < fs[i].size()) break;
            cur[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    std::vector<u32> cos(all.size());
    std::map<std::vector<u32>, std::size_t> index_of;
    for (std::size_t i = 0; i < all.size(); ++i) index_of[all[i]] = i;
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::vector<u32> best = all[i];
        bool first = true;
        for (const auto& h : g.tuples()) {
            auto prod = tuple_mul(fs, all[i], h);
            if (first || prod < best) { best = prod; first = false; }
        }
        auto [it, fresh] = rep_id.emplace(best, (u32)rep_id.size());
        if (fresh) rep_tuple.push_back(all[i]);
        cos[i] = it->second;
    }
    AbstractFiniteGroup out;
    std::size_t q = rep_id.size();
    out.mul.assign(q, std::vector<u32>(q));
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            out.mul[a][b] = cos[index_of.at(tuple_mul(fs, rep_tuple[a], rep_tuple[b]))];
    std::vector<u32> id(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        id[i] = (u32)fs[i].index_of(Mat::identity(fs[i].level()));
    out.identity = cos[index_of.at(id)];
    return out;
}

}  // namespace ell
