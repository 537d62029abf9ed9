#pragma once
// Empirical census: segmented prime sieve, point counting mod p (naive and
// baby-step/giant-step with twist disambiguation), cyclicity testing via
// division polynomials, and comparison against computed densities.

#include "ell/catalog.hpp"
#include "ell/density.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ell {

// segmented sieve over [lo, hi]; uses $ELLDENSITY_CACHE for the base primes
std::vector<u64> sieve_range(u64 lo, u64 hi);

// y^2 = x^3 + Ax + B over F_p (short form of a good reduction, p > 3)
struct ShortCurve {
    u64 p = 5, A = 0, B = 0;
};
ShortCurve reduce_curve(const WeierstrassCurve& c, u64 p);

struct AffinePoint {
    bool inf = true;
    u64 x = 0, y = 0;
};
AffinePoint ec_add(const ShortCurve& c, const AffinePoint& P, const AffinePoint& Q);
AffinePoint ec_mul(const ShortCurve& c, u64 n, const AffinePoint& P);
bool on_curve(const ShortCurve& c, const AffinePoint& P);

// |E(F_p)| by summing quadratic characters, O(p)
u64 point_count_naive(const ShortCurve& c);
// |E(F_p)| by random point orders + quadratic twist (orders sum to 2p+2);
// deterministic given the seed, exact for every good p
u64 point_count_bsgs(const ShortCurve& c, u64 seed);
// dispatch: naive for p <= 10^4, BSGS above
u64 point_count(const ShortCurve& c, u64 seed = 1);

// x-division polynomial of the ell-torsion (ell odd prime), degree
// (ell^2-1)/2, coefficients mod p, constant term first
std::vector<u64> division_polynomial(const ShortCurve& c, i64 ell);

struct CyclicWitness {
    bool cyclic = true;
    i64 witness = 0;  // prime with full rational ell-torsion when !cyclic
};
// requires N = |E(F_p)|; checks every prime l with l^2 | N and l | p-1
CyclicWitness is_cyclic(const ShortCurve& c, u64 N, u64 seed = 1);

struct CensusOptions {
    int threads = 0;  // 0 = OpenMP default
    u64 seed = 1;
    std::string dump_path;        // CSV (p, N, cyclic, witness, match) when set
    std::string checkpoint_path;  // resumable progress file when set
    u64 checkpoint_every = 10'000'000;  // primes between checkpoints
};

struct CensusReport {
    i64 x = 0;
    std::string problem;
    u64 total_primes = 0;   // all primes <= x
    u64 total_good = 0;     // good primes: p > 3, p not dividing Delta
    u64 total_relevant = 0; // good primes passing the AP filter
    u64 matching = 0;
    Float50 observed{0};      // matching / total_relevant
    Float50 observed_all{0};  // matching / total_primes
    Float50 koblitz_integral{0};  // int_2^x dt/log^2 t (Koblitz only)
    u64 seed = 1;
};

CensusReport census(const WeierstrassCurve& c, const DensityProblem& pr, i64 x,
                    const CensusOptions& opt = {});
// single-threaded reference implementation (kept for testing and benchmarks)
CensusReport census_serial(const WeierstrassCurve& c, const DensityProblem& pr,
                           i64 x, const CensusOptions& opt = {});

struct Deviation {
    Float50 predicted{0};
    Float50 observed{0};
    Float50 deviation{0};      // observed - predicted
    Float50 scale{0};          // 1/sqrt(matching), crude statistical context
    Float50 koblitz_ratio{0};  // matching / (C * integral) (Koblitz only)
};
Deviation compare(const CensusReport& report, const DensityResult& result);

// trapezoid integral of 1/log^2 t over [2, x], step <= 1
Float50 log_integral2(i64 x);

}  // namespace ell
