#pragma once
// Finite abelian groups (elementary divisor form), their characters, and
// exact character sums.

#include "ell/cyclotomic.hpp"
#include "ell/gl2.hpp"
#include "ell/numutil.hpp"

#include <numeric>
#include <vector>

namespace ell {

// Z/d1 x Z/d2 x ... with d1 | d2 | ...; elements are exponent vectors.
struct FiniteAbelianGroup {
    std::vector<i64> divisors;          // d1 | d2 | ... (no 1s)
    // realization of a source AbstractFiniteGroup, when decomposed from one:
    std::vector<std::vector<i64>> iso;  // source element id -> exponent vector

    i64 order() const {
        i64 n = 1;
        for (i64 d : divisors) n *= d;
        return n;
    }
    i64 exponent() const {
        i64 e = 1;
        for (i64 d : divisors) e = std::lcm(e, d);
        return e;
    }
    std::vector<i64> zero() const { return std::vector<i64>(divisors.size(), 0); }
    std::vector<i64> add(const std::vector<i64>& x, const std::vector<i64>& y) const;
    std::vector<i64> neg(const std::vector<i64>& x) const;
    std::vector<std::vector<i64>> all_elements() const;
};

// requires g abelian; verified exhaustively
FiniteAbelianGroup decompose_abelian(const AbstractFiniteGroup& g);

struct Character {
    const FiniteAbelianGroup* group;
    std::vector<i64> exponents;  // k_i mod d_i

    bool is_trivial() const;
    // value on exponent vector v: zeta_e^(sum k_i v_i e/d_i), e = lcm d_i
    CyclotomicNumber value(const std::vector<i64>& v) const;
};

// all |A| characters, trivial first, lexicographic in exponent vectors
std::vector<Character> characters(const FiniteAbelianGroup& a);

// exact average of chi over a multiset given as (element, multiplicity) pairs
CyclotomicNumber char_sum_average(
    const Character& chi,
    const std::vector<std::pair<std::vector<i64>, Int>>& multiset);

}  // namespace ell
