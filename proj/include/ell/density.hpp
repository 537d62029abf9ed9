#pragma once
// The three density problems (cyclic reduction, cyclic reduction in an
// arithmetic progression, Koblitz), their local sets and densities,
// correction factors, Euler products with proven tails, Serre-curve closed
// forms, and the classical Artin constants.

#include "ell/catalog.hpp"
#include "ell/entangle.hpp"

#include <map>
#include <string>

namespace ell {

enum class ProblemKind { Cyclic, CyclicAP, Koblitz };

struct DensityProblem {
    ProblemKind kind = ProblemKind::Cyclic;
    i64 a = 0, f = 1;  // CyclicAP: p = a (mod f)
    i64 t = 1;         // Koblitz: |E(F_p)| / t prime

    std::string str() const;
};

enum class Vanishing { None, Local, Entanglement };

struct DensityResult {
    Rational correction{1};
    Vanishing vanishing = Vanishing::None;
    i64 vanishing_prime = 0;  // set for Vanishing::Local
    std::map<i64, Rational> special_delta;  // enumerated |S|/|G| per spec prime
    Float50 naive_value{0};  // truncated product of all local densities
    Float50 constant{0};     // correction * naive_value
    Float50 tail_low{0}, tail_high{0};  // proven interval for the full product
    i64 truncation_L = 0;
    std::string problem;
};

// working exponent demanded by the problem alone: v_ell(f) for AP,
// v_ell(t)+1 for Koblitz, else 1
int problem_exponent(const DensityProblem& pr, i64 ell);

// exact local set inside a working-level component (level = ell^w with
// w >= problem_exponent); throws on level mismatch
LocalSet local_set(const DensityProblem& pr, i64 ell, std::size_t component,
                   const MatrixGroup& g);
Rational local_density(const DensityProblem& pr, i64 ell, const MatrixGroup& g);
// closed form for a full-GL2 prime; Koblitz requires ell not dividing t
Rational generic_local_density(const DensityProblem& pr, i64 ell);

// entanglement spec + local sets covering the problem's exceptional primes
struct ProblemSpec {
    EntanglementSpec spec;
    std::vector<LocalSet> sets;
    std::vector<i64> primes;              // component index -> prime
    std::map<i64, Rational> closed_form;  // f-primes beyond the group cap
};
ProblemSpec build_problem_spec(const CatalogEntry& e, const DensityProblem& pr);

DensityResult compute_density(const CatalogEntry& e, const DensityProblem& pr,
                              i64 L);

// per-component E values for the single nontrivial character; requires
// |Phi| <= 2 (all-ones when Phi is trivial)
std::vector<Rational> phi2_E_values(const EntanglementSpec& spec,
                                    const std::vector<LocalSet>& sets);

// Serre-curve closed forms. The AP E_2 signs follow the proofs of the case
// lemmas (the displayed ord2(D)=3 values contradict their own proof).
Rational serre_cyclic_correction(i64 D);
Rational serre_ap_correction(i64 a, i64 f, i64 D);
Rational serre_ap_delta(i64 a, i64 f, i64 D, i64 ell);  // local density
Rational serre_ap_E2(i64 a, i64 f, i64 D);
Rational serre_koblitz_correction(i64 D);
DensityResult serre_cyclic(i64 D, i64 L);
DensityResult serre_ap(i64 a, i64 f, i64 D, i64 L);
DensityResult serre_koblitz(i64 D, i64 L);

struct ArtinResult {
    bool zero = false;
    std::string reason;
    i64 h = 1;   // largest k with g a perfect k-th power
    i64 D = 1;   // discriminant of Q(sqrt g)
    Rational correction{1};  // Artin entanglement factor
    Float50 product_value{0}, product_tail{0};  // corrected Euler product
    Float50 sum_head{0}, sum_tail{0};           // sum mu(n)/[F_n:Q], n <= N
    i64 truncation_L = 0, truncation_N = 0;
};
ArtinResult artin_classical(const Int& g, i64 L = 100000, i64 N = 100000);

}  // namespace ell
