#include "ell/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ell {

std::vector<i64> FiniteAbelianGroup::add(const std::vector<i64>& x,
                                         const std::vector<i64>& y) const {
    std::vector<i64> r(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i)
        r[i] = (x[i] + y[i]) % divisors[i];
    return r;
}

std::vector<i64> FiniteAbelianGroup::neg(const std::vector<i64>& x) const {
    std::vector<i64> r(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i)
        r[i] = (divisors[i] - x[i]) % divisors[i];
    return r;
}

std::vector<std::vector<i64>> FiniteAbelianGroup::all_elements() const {
    std::vector<std::vector<i64>> out;
    std::vector<i64> cur(divisors.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = divisors.size();
        while (i > 0) {
            --i;
            if (++cur[i] < divisors[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (divisors.empty()) return out;
    }
}

namespace {

// quotient of an abelian abstract group by the cyclic subgroup <x>
AbstractFiniteGroup cyclic_quotient(const AbstractFiniteGroup& g, u32 x,
                                    std::vector<u32>& coset_of) {
    std::vector<u32> cyc{g.identity};
    u32 y = x;
    while (y != g.identity) { cyc.push_back(y); y = g.mul[y][x]; }
    coset_of.assign(g.size(), 0);
    std::map<u32, u32> rep_id;
    std::vector<u32> rep_elem;
    for (u32 e = 0; e < g.size(); ++e) {
        u32 best = e;
        for (u32 c : cyc) best = std::min(best, g.mul[e][c]);
        auto [it, fresh] = rep_id.emplace(best, (u32)rep_id.size());
        if (fresh) rep_elem.push_back(e);
        coset_of[e] = it->second;
    }
    AbstractFiniteGroup q;
    q.mul.assign(rep_id.size(), std::vector<u32>(rep_id.size()));
    for (u32 a = 0; a < rep_id.size(); ++a)
        for (u32 b = 0; b < rep_id.size(); ++b)
            q.mul[a][b] = coset_of[g.mul[rep_elem[a]][rep_elem[b]]];
    q.identity = coset_of[g.identity];
    return q;
}

// independent generators with orders forming a divisor chain (increasing)
void decompose_rec(const AbstractFiniteGroup& g, std::vector<u32>& gens,
                   std::vector<i64>& orders,
                   std::vector<std::vector<u32>>& lift_chain) {
    if (g.size() == 1) return;
    u32 best = g.identity;
    u32 best_ord = 1;
    for (u32 e = 0; e < g.size(); ++e) {
        u32 o = g.order_of(e);
        if (o > best_ord) { best_ord = o; best = e; }
    }
    std::vector<u32> coset_of;
    AbstractFiniteGroup q = cyclic_quotient(g, best, coset_of);
    std::vector<u32> qgens;
    std::vector<i64> qorders;
    std::vector<std::vector<u32>> qlift;
    decompose_rec(q, qgens, qorders, qlift);
    (void)qlift;
    // lift quotient generators into g, correcting so that the lift's order
    // equals the quotient order (possible because best_ord is the exponent)
    std::vector<u32> lifted;
    for (std::size_t i = 0; i < qgens.size(); ++i) {
        u32 gi = 0;
        for (u32 e = 0; e < g.size(); ++e)
            if (coset_of[e] == qgens[i]) { gi = e; break; }
        u32 p = g.pow(gi, (u64)qorders[i]);  // lies in <best>
        i64 t = 0;
        u32 z = g.identity;
        while (z != p) { z = g.mul[z][best]; ++t; }
        if (t % qorders[i] != 0) throw std::logic_error("decompose: lift failed");
        i64 corr = (i64)best_ord - t / qorders[i];
        gi = g.mul[gi][g.pow(best, (u64)(corr % best_ord))];
        if (g.pow(gi, (u64)qorders[i]) != g.identity)
            throw std::logic_error("decompose: corrected lift has wrong order");
        lifted.push_back(gi);
    }
    gens = lifted;
    gens.push_back(best);
    orders = qorders;
    orders.push_back((i64)best_ord);
    lift_chain.push_back(coset_of);
}

}  // namespace

FiniteAbelianGroup decompose_abelian(const AbstractFiniteGroup& g) {
    if (!g.is_abelian()) throw std::invalid_argument("group not abelian");
    std::vector<u32> gens;
    std::vector<i64> orders;
    std::vector<std::vector<u32>> chain;
    decompose_rec(g, gens, orders, chain);
    FiniteAbelianGroup out;
    out.divisors = orders;
    // build iso by enumerating all exponent combinations
    out.iso.assign(g.size(), {});
    std::vector<i64> cur(orders.size(), 0);
    std::size_t filled = 0;
    for (;;) {
        u32 e = g.identity;
        for (std::size_t i = 0; i < gens.size(); ++i)
            e = g.mul[e][g.pow(gens[i], (u64)cur[i])];
        if (!out.iso[e].empty() && e != g.identity)
            throw std::logic_error("decompose: iso not injective");
        if (out.iso[e].empty()) {
            out.iso[e] = cur;
            ++filled;
        } else if (std::any_of(cur.begin(), cur.end(), [](i64 v) { return v != 0; })) {
            throw std::logic_error("decompose: iso not injective");
        }
        std::size_t i = orders.size();
        bool done = orders.empty();
        while (i > 0) {
            --i;
            if (++cur[i] < orders[i]) break;
            cur[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    if (filled != g.size()) throw std::logic_error("decompose: iso not surjective");
    // verify homomorphism property exhaustively
    for (u32 x = 0; x < g.size(); ++x)
        for (u32 y = 0; y < g.size(); ++y)
            if (out.iso[g.mul[x][y]] != out.add(out.iso[x], out.iso[y]))
                throw std::logic_error("decompose: iso not multiplicative");
    return out;
}

bool Character::is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](i64 k) { return k == 0; });
}

CyclotomicNumber Character::value(const std::vector<i64>& v) const {
    i64 e = group->exponent();
    i64 acc = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        acc = (acc + exponents[i] * v[i] % e * (e / group->divisors[i])) % e;
    return CyclotomicNumber::root_of_unity((int)e, acc);
}

std::vector<Character> characters(const FiniteAbelianGroup& a) {
    std::vector<Character> out;
    for (const auto& v : a.all_elements()) out.push_back(Character{&a, v});
    return out;
}

CyclotomicNumber char_sum_average(
    const Character& chi,
    const std::vector<std::pair<std::vector<i64>, Int>>& multiset) {
    Int total = 0;
    CyclotomicNumber sum;
    for (const auto& [v, m] : multiset) {
        total += m;
        sum = sum + chi.value(v) * Rational(m);
    }
    if (total == 0) throw std::invalid_argument("empty multiset");
    return sum * Rational(Int(1), total);
}

}  // namespace ell
