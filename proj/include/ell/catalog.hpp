#pragma once
// Curve data, discriminant arithmetic, Serre-curve spec construction, and the
// hard-coded Galois-image blocks for the worked catalog curves.

#include "ell/entangle.hpp"
#include "ell/numutil.hpp"

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace ell {

struct WeierstrassCurve {
    i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    Int discriminant() const;
    std::vector<i64> bad_primes() const;  // prime divisors of the discriminant
};

// D = discriminant of Q(sqrt(delta)); delta_sf its squarefree part;
// when ord2(D) = 3, delta_sf = 2 * delta_prime.
struct SerreCurveData {
    i64 D = 1;
    i64 delta_sf = 1;
    int ord2D = 0;  // 0, 2 or 3
    i64 delta_prime = 0;
};

i64 quad_field_discriminant(const Int& delta);
SerreCurveData serre_curve_data(const Int& delta);

// One prime-power block of the Galois image. At levels above
// prime^base_exponent the image is the full preimage of `base`.
struct GaloisComponentData {
    i64 prime = 2;
    int base_exponent = 1;
    MatrixGroup base;
};

// Relation template, instantiated at the problem's working levels. Involved
// primes are the keys of `psi`; the relation is dropped unless every guard
// [lo, hi] contains the problem's working exponent at its prime.
struct RelationRule {
    std::vector<i64> target_divisors;
    std::map<i64, std::pair<int, int>> guards;
    std::map<i64, int> needs;  // minimum working exponent per involved prime
    std::map<i64, std::function<std::vector<i64>(const Mat&)>> psi;
};

struct CatalogEntry {
    std::string id;
    WeierstrassCurve curve;
    std::map<i64, int> level_support;  // factorization of m_E
    std::vector<GaloisComponentData> components;  // non-full blocks only
    std::vector<RelationRule> relations;
    // section-7 family marker: non-abelian entanglement; the density rule
    // replaces the joint factor by dropping the factor at `drop_prime`
    bool nonabelian = false;
    i64 drop_prime = 0;
    std::string notes;

    const GaloisComponentData* block(i64 prime) const;
    // Galois image at level prime^exponent (reduce or lift the block; full
    // GL2 when no block is stored). Throws on the group cap.
    MatrixGroup component_at(i64 prime, int exponent) const;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry* find_entry(const std::string& id);

// Serre-curve entry (full image up to the quadratic relation) for a given
// quadratic field discriminant, optionally tied to a concrete curve.
CatalogEntry serre_entry(i64 D, std::string id = "");
CatalogEntry serre_entry_for_curve(const WeierstrassCurve& c, std::string id);

// j-map of the level-6 modular curve parametrising the non-abelian family
Rational xh_family_j(const Rational& t);
// the graph subgroup H <= GL2(Z/2) x GL2(Z/3) realizing the family's mod-6
// image (Goursat quotient non-abelian of order 6)
ProductSubgroup xh_level6_subgroup();

}  // namespace ell
