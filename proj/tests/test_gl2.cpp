#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ell/entangle.hpp"
#include "ell/gl2.hpp"

using namespace ell;

namespace {

// index-2 subgroup of GL2(Z/2) x GL2(Z/3) cut out by eps(g2) = (det g3 | 3)
ProductSubgroup serre23_subgroup() {
    MatrixGroup g2 = full_gl2(2), g3 = full_gl2(3);
    std::vector<std::vector<u32>> tuples;
    for (u32 i = 0; i < g2.size(); ++i)
        for (u32 j = 0; j < g3.size(); ++j) {
            int eps = signature_mod2(g2.element(i)) == 0 ? 1 : -1;
            int leg = (int)kronecker(Int((i64)g3.element(j).det()), Int(3));
            if (eps == leg) tuples.push_back({i, j});
        }
    return ProductSubgroup({g2, g3}, std::move(tuples));
}

}  // namespace

TEST_CASE("matrix basics") {
    Mat m{7, 2, 3, 1, 4};
    CHECK(m.det() == 5);
    CHECK(m.mul(m.inverse()) == Mat::identity(7));
    CHECK(Mat::from_code(m.code(), 7) == m);
}

TEST_CASE("gl2 order formula") {
    CHECK(gl2_order(2) == 6);
    CHECK(gl2_order(3) == 48);
    CHECK(gl2_order(4) == 96);
    CHECK(gl2_order(5) == 480);
    CHECK(gl2_order(8) == 1536);
    CHECK(gl2_order(25) == 300000);
}

TEST_CASE("full_gl2 and closure") {
    CHECK(full_gl2(2).size() == 6);
    CHECK(full_gl2(3).size() == 48);
    CHECK(full_gl2(5).size() == 480);
    CHECK(group_close({}, 2).size() == 1);
    // SL2(Z/3) from its standard generators; oracle: filter det=1
    auto sl3 = group_close({Mat{3, 1, 1, 0, 1}, Mat{3, 1, 0, 1, 1}}, 3);
    CHECK(sl3.size() == 24);
    std::size_t det1 = 0;
    auto g3 = full_gl2(3);
    for (std::size_t i = 0; i < g3.size(); ++i)
        if (g3.element(i).det() == 1) ++det1;
    CHECK(det1 == sl3.size());
    // closure of full generator set reproduces full_gl2
    std::vector<Mat> gens;
    for (std::size_t i = 0; i < g3.size(); ++i) gens.push_back(g3.element(i));
    CHECK(group_close(gens, 3) == g3);
}

TEST_CASE("reduce and preimage") {
    auto g4 = full_gl2(4);
    CHECK(reduce_group(g4, 2) == full_gl2(2));
    CHECK(preimage_group(full_gl2(2), 4).size() == 96);
    CHECK(preimage_group(full_gl2(2), 8) == full_gl2(8));
    auto tri = trivial_group(2);
    auto pre = preimage_group(tri, 4);
    CHECK(pre.size() == 16);
    for (std::size_t i = 0; i < pre.size(); ++i)
        CHECK(pre.element(i).reduced(2) == Mat::identity(2));
}

TEST_CASE("normality, commutators, quotients") {
    auto g2 = full_gl2(2);
    auto g3 = full_gl2(3);
    auto sl3 = group_close({Mat{3, 1, 1, 0, 1}, Mat{3, 1, 0, 1, 1}}, 3);
    CHECK(is_normal(trivial_group(3), g3));
    CHECK(is_normal(sl3, g3));
    // an order-2 non-central subgroup of S3 is not normal
    auto flip = group_close({Mat{2, 0, 1, 1, 0}}, 2);
    CHECK(flip.size() == 2);
    CHECK_FALSE(is_normal(flip, g2));

    CHECK(commutator_subgroup(g2).size() == 3);       // (S3)' = A3
    CHECK(commutator_subgroup(g3).size() == 24);      // GL2(3)' = SL2(3)
    CHECK(commutator_subgroup(sl3).size() == 8);      // SL2(3)' = Q8

    auto q = quotient(g3, sl3);
    CHECK(q.size() == 2);
    CHECK(q.is_abelian());
    CHECK(quotient(g2, commutator_subgroup(g2)).size() == 2);
    CHECK(quotient(g3, g3).size() == 1);
}

TEST_CASE("goursat on the index-2 subgroup of GL2(2)xGL2(3)") {
    auto g = serre23_subgroup();
    CHECK(g.size() == 144);
    CHECK(g.is_subdirect());
    auto gd = goursat_data(g);
    CHECK(gd.quotient.size() == 2);
    CHECK(gd.n1.size() == 3);   // A3 = ker eps
    CHECK(gd.n2.size() == 24);  // SL2(3) = ker legendre(det)
    // exact round-trip reconstruction
    std::size_t rebuilt = 0;
    for (u32 i = 0; i < g.factors()[0].size(); ++i)
        for (u32 j = 0; j < g.factors()[1].size(); ++j)
            if (gd.psi1[i] == gd.psi2[j]) {
                ++rebuilt;
                CHECK(g.contains({i, j}));
            }
    CHECK(rebuilt == g.size());
    CHECK(has_abelian_entanglements(g));
    CHECK(is_normal_in_product(g));
    auto q = product_quotient(g);
    CHECK(q.size() == 2);
    CHECK(q.is_abelian());
    // projections are full factors
    CHECK(project(g, {1}).factors()[0].size() == project(g, {1}).size());
}

TEST_CASE("goursat trivial cases") {
    auto g2 = full_gl2(2);
    // diagonal of G x G: quotient isomorphic to G
    std::vector<std::vector<u32>> diag;
    for (u32 i = 0; i < g2.size(); ++i) diag.push_back({i, i});
    ProductSubgroup d({g2, g2}, diag);
    auto gd = goursat_data(d);
    CHECK(gd.quotient.size() == 6);
    CHECK(gd.n1.size() == 1);
    CHECK_FALSE(has_abelian_entanglements(d));  // Q = S3 non-abelian
    CHECK_FALSE(is_normal_in_product(d));
    // full product: trivial quotient
    auto fp = full_product({g2, g2});
    CHECK(goursat_data(fp).quotient.size() == 1);
    CHECK(has_abelian_entanglements(fp));
    CHECK(is_normal_in_product(fp));
    CHECK(project(d, {0}).size() == 6);
}

TEST_CASE("graph of GL2(2) against GL2(3) mod its index-6 normal subgroup") {
    // N = unique index-6 normal subgroup of GL2(Z/3); GL2(3)/N = S3 = GL2(2)
    auto n = group_close({Mat{3, 0, 2, 1, 0}, Mat{3, 1, 2, 2, 2}, Mat{3, 2, 0, 0, 2}}, 3);
    CHECK(n.size() == 8);
    auto g3 = full_gl2(3);
    CHECK(is_normal(n, g3));
    std::vector<u32> cosets;
    auto q = quotient(g3, n, &cosets);
    CHECK(q.size() == 6);
    CHECK_FALSE(q.is_abelian());
    // build an isomorphism q -> GL2(2) by matching element orders greedily
    auto g2 = full_gl2(2);
    // graph subgroup H = {(theta(g3 mod N), g3)} has order 48
    // realize theta by brute-force isomorphism search
    std::vector<int> img(6, -1);
    std::vector<bool> used(6, false);
    std::function<bool(u32)> assign = [&](u32 x) {
        if (x == 6) {
            for (u32 a = 0; a < 6; ++a)
                for (u32 b = 0; b < 6; ++b) {
                    Mat m = g2.element((std::size_t)img[a]).mul(g2.element((std::size_t)img[b]));
                    if ((u32)img[q.mul[a][b]] != g2.index_of(m)) return false;
                }
            return true;
        }
        for (u32 y = 0; y < 6; ++y) {
            if (used[y]) continue;
            if (q.order_of(x) != [&] {
                    Mat m = g2.element(y), acc = m;
                    u32 o = 1;
                    while (!acc.is_identity()) { acc = acc.mul(m); ++o; }
                    return o;
                }())
                continue;
            img[x] = (int)y;
            used[y] = true;
            if (assign(x + 1)) return true;
            used[y] = false;
            img[x] = -1;
        }
        return false;
    };
    REQUIRE(assign(0));
    std::vector<std::vector<u32>> tuples;
    for (u32 j = 0; j < g3.size(); ++j)
        tuples.push_back({(u32)img[cosets[j]], j});
    ProductSubgroup h({g2, g3}, tuples);
    CHECK(h.size() == 48);
    CHECK(h.is_subdirect());
    auto gd = goursat_data(h);
    CHECK(gd.quotient.size() == 6);
    CHECK_FALSE(gd.quotient.is_abelian());
    CHECK_FALSE(has_abelian_entanglements(h));
    CHECK_FALSE(is_normal_in_product(h));
}

TEST_CASE("lagrange and projection-closure spot checks") {
    auto g = serre23_subgroup();
    for (auto s : {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{0, 1}}) {
        auto p = project(g, s);
        std::size_t total = 1;
        for (const auto& f : p.factors()) total *= f.size();
        CHECK(total % p.size() == 0);
        CHECK(has_abelian_entanglements(p));
    }
}
