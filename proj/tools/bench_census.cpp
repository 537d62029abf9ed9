// Benchmark: parallel census kernel against the serial reference.
#include "ell/catalog.hpp"
#include "ell/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace ell;

namespace {

double run_one(const WeierstrassCurve& c, const DensityProblem& pr, i64 x,
               bool parallel, i64* matching) {
    CensusOptions opt;
    opt.seed = 42;
    auto t0 = std::chrono::steady_clock::now();
    CensusReport r = parallel ? census(c, pr, x, opt) : census_serial(c, pr, x, opt);
    auto t1 = std::chrono::steady_clock::now();
    *matching = r.matching;
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    i64 x = argc > 1 ? std::atoll(argv[1]) : 1'000'000;
    std::printf("census benchmark, x = %lld\n", (long long)x);
    for (const char* id : {"family6-example", "curve-17"}) {
        const CatalogEntry* e = find_entry(id);
        DensityProblem pr;
        i64 mp = 0, ms = 0;
        double tp = run_one(e->curve, pr, x, true, &mp);
        double ts = run_one(e->curve, pr, x, false, &ms);
        std::printf("%-18s parallel %7.2fs   serial %7.2fs   speedup %.2fx   %s\n",
                    id, tp, ts, ts / tp,
                    mp == ms ? "counts agree" : "COUNTS DIFFER");
        if (mp != ms) return 1;
    }
    return 0;
}
