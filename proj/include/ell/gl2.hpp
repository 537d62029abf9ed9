#pragma once
// Exact arithmetic in GL2(Z/nZ): groups, closure, normality, quotients,
// subdirect products and Goursat decomposition.

#include "ell/numutil.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ell {

// 2x2 matrix over Z/nZ, row-major (a b / c d), entries reduced into [0,n).
struct Mat {
    u64 n = 1;
    u64 a = 1, b = 0, c = 0, d = 1;

    static Mat identity(u64 n) { return Mat{n, 1 % n, 0, 0, 1 % n}; }
    u64 det() const { return ((a * d) % n + n * n - (b * c) % n) % n; }
    u64 trace() const { return (a + d) % n; }
    bool invertible() const { return gcd_u64(det(), n) == 1; }
    Mat mul(const Mat& o) const;
    Mat inverse() const;  // requires invertible
    Mat reduced(u64 m) const { return Mat{m, a % m, b % m, c % m, d % m}; }
    bool is_identity() const { return *this == identity(n); }

    u64 code() const { return ((a * n + b) * n + c) * n + d; }
    static Mat from_code(u64 code, u64 n);
    bool operator==(const Mat&) const = default;
};

constexpr std::size_t kGroupCap = 10'000'000;

Int gl2_order(u64 n);  // |GL2(Z/nZ)|

// A finite subgroup of GL2(Z/nZ), fully enumerated, elements sorted by code.
class MatrixGroup {
  public:
    MatrixGroup() = default;
    MatrixGroup(u64 level, std::vector<u64> sorted_codes, std::vector<Mat> gens);

    u64 level() const { return level_; }
    std::size_t size() const { return codes_.size(); }
    Mat element(std::size_t i) const { return Mat::from_code(codes_[i], level_); }
    const std::vector<u64>& codes() const { return codes_; }
    const std::vector<Mat>& generators() const { return gens_; }
    bool contains(const Mat& m) const;
    std::size_t index_of(const Mat& m) const;  // requires contains
    bool contains_group(const MatrixGroup& h) const;
    bool operator==(const MatrixGroup& o) const {
        return level_ == o.level_ && codes_ == o.codes_;
    }

  private:
    u64 level_ = 1;
    std::vector<u64> codes_;
    std::vector<Mat> gens_;
};

// BFS closure of the generators; throws on non-invertible generator or cap.
MatrixGroup group_close(const std::vector<Mat>& generators, u64 level,
                        std::size_t cap = kGroupCap);
MatrixGroup full_gl2(u64 level, std::size_t cap = kGroupCap);
MatrixGroup trivial_group(u64 level);

// Image of g under reduction mod m (m | g.level()).
MatrixGroup reduce_group(const MatrixGroup& g, u64 m);
// Full preimage of g under GL2(Z/target) -> GL2(Z/g.level()); target multiple
// of g.level() with the same prime support.
MatrixGroup preimage_group(const MatrixGroup& g, u64 target,
                           std::size_t cap = kGroupCap);

bool is_normal(const MatrixGroup& h, const MatrixGroup& g);  // requires h <= g
MatrixGroup commutator_subgroup(const MatrixGroup& g);

// Opaque finite group given by its multiplication table.
struct AbstractFiniteGroup {
    std::vector<std::vector<u32>> mul;  // mul[x][y]
    u32 identity = 0;
    std::vector<std::string> labels;    // optional, for reports

    std::size_t size() const { return mul.size(); }
    u32 inverse(u32 x) const;
    bool is_abelian() const;
    u32 order_of(u32 x) const;
    u32 pow(u32 x, u64 e) const;
};

// Coset group g/n; n must be normal in g. Also returns element -> coset id.
AbstractFiniteGroup quotient(const MatrixGroup& g, const MatrixGroup& n,
                             std::vector<u32>* coset_of = nullptr);

// Subgroup of G <= G1 x ... x Gk stored as tuples of element indices.
class ProductSubgroup {
  public:
    ProductSubgroup() = default;
    ProductSubgroup(std::vector<MatrixGroup> factors,
                    std::vector<std::vector<u32>> tuples);

    const std::vector<MatrixGroup>& factors() const { return factors_; }
    const std::vector<std::vector<u32>>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool is_subdirect() const;
    bool contains(const std::vector<u32>& t) const;

  private:
    std::vector<MatrixGroup> factors_;
    std::vector<std::vector<u32>> tuples_;  // sorted lexicographically
};

// Closure of tuple generators inside the product of the factors.
ProductSubgroup product_close(std::vector<MatrixGroup> factors,
                              const std::vector<std::vector<u32>>& gens,
                              std::size_t cap = kGroupCap);
ProductSubgroup full_product(std::vector<MatrixGroup> factors,
                             std::size_t cap = kGroupCap);

ProductSubgroup project(const ProductSubgroup& g, const std::vector<int>& s);

struct GoursatData {
    MatrixGroup n1;               // pi_1(ker pi_2), subgroup of factor 1
    MatrixGroup n2;               // pi_2(ker pi_1), subgroup of factor 2
    AbstractFiniteGroup quotient; // Q = G1/N1 (≅ G2/N2)
    std::vector<u32> psi1;        // factor-1 element index -> Q element
    std::vector<u32> psi2;        // factor-2 element index -> Q element
};

// Goursat decomposition of a subdirect product with two factors; the
// round-trip identity g = {(x,y) : psi1(x) = psi2(y)} holds exactly.
GoursatData goursat_data(const ProductSubgroup& g);

bool is_normal_in_product(const ProductSubgroup& g);
// True iff every Goursat quotient Q_j = G_j / pi_j(ker pi_{others}) is
// abelian, i.e. [G_j,G_j] <= pi_j(N_j).
bool has_abelian_entanglements(const ProductSubgroup& g);

// Quotient of the full product by a normal subdirect g (used for the
// abelian-quotient property); product size capped.
AbstractFiniteGroup product_quotient(const ProductSubgroup& g,
                                     std::size_t cap = 1'000'000);

}  // namespace ell
