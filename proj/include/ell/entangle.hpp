#pragma once
// Entanglement specs: per-prime-power components plus abelian relations
// cutting out G(m), the quotient Phi_m, character lifting, and the
// member-fraction formula with its brute-force oracle.

#include "ell/abelian.hpp"
#include "ell/gl2.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ell {

struct EntanglementComponent {
    i64 prime = 2;
    int exponent = 1;  // level = prime^exponent
    MatrixGroup group;

    i64 level() const {
        i64 n = 1;
        for (int i = 0; i < exponent; ++i) n *= prime;
        return n;
    }
};

// one relation: product over involved components of psi_i(g_i) = 0 in the
// target group Z/d1 x Z/d2 x ...
struct EntanglementRelation {
    std::vector<i64> target_divisors;
    // per component: element index -> target exponent vector; empty table
    // means the component does not enter this relation (trivial map)
    std::vector<std::vector<std::vector<i64>>> maps;
};

struct EntanglementSpec {
    std::vector<EntanglementComponent> components;
    std::vector<EntanglementRelation> relations;
};

struct PhiGroup {
    FiniteAbelianGroup group;  // the combined relation target T
    // component i, element j -> exponent vector in T (concatenated targets)
    std::vector<std::vector<std::vector<i64>>> component_maps;
    // elementary divisors of T presented canonically (for reports)
    std::vector<i64> canonical_divisors;
    Int kernel_order;  // |G(m)| = prod |G_i| / |T|
};

// Verifies homomorphism property of every map, surjectivity of the joint map
// onto T, and subdirectness of the kernel; throws on violation.
PhiGroup build_phi(const EntanglementSpec& spec);

// chi restricted to one component: element index -> exact value
std::vector<CyclotomicNumber> lift_character(const PhiGroup& phi,
                                             const Character& chi,
                                             std::size_t component);

struct LocalSet {
    std::size_t component = 0;
    std::vector<u32> elements;  // indices into the component's group
};

struct FractionResult {
    Rational value;
    bool vanishing = false;
    std::optional<std::size_t> obstruction_component;  // set when some S empty
    Rational correction;  // 1 + sum over nontrivial chi of prod E_chi
};

// (1 + sum_{chi != 1} prod_i E_{chi,i}) * prod_i |S_i|/|G_i|, exact
FractionResult member_fraction(const EntanglementSpec& spec,
                               const std::vector<LocalSet>& local_sets);

// literal enumeration of the joint kernel; cap on prod |G_i|
Rational brute_force_fraction(const EntanglementSpec& spec,
                              const std::vector<LocalSet>& local_sets,
                              std::size_t cap = 1'000'000);

// Phi is unchanged by appending a relation-free full-GL2 component at a
// coprime prime level (Lemma on square-free reduction).
bool phi_stability_check(const EntanglementSpec& spec, i64 extra_prime);

// Materialize G(m) as a ProductSubgroup (for Goursat analysis); capped.
ProductSubgroup materialize_kernel(const EntanglementSpec& spec,
                                   std::size_t cap = 100'000);

// JSON (de)serialization per the external schema.
EntanglementSpec spec_from_json(const std::string& json_text);
std::string spec_to_json(const EntanglementSpec& spec);

// parity (0 even, 1 odd) of the permutation induced by A mod 2 on the three
// nonzero vectors of F_2^2; the sign character is (-1)^parity
int signature_mod2(const Mat& m);

}  // namespace ell
