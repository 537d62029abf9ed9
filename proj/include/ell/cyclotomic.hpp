#pragma once
// Exact arithmetic in cyclotomic fields Q(zeta_e), e <= 64: rational
// coefficient vectors reduced modulo the e-th cyclotomic polynomial.

#include "ell/numutil.hpp"

#include <string>
#include <vector>

namespace ell {

constexpr int kMaxCyclotomicOrder = 64;

// monic Phi_e as integer coefficients, constant term first (cached)
const std::vector<Int>& cyclotomic_polynomial(int e);

class CyclotomicNumber {
  public:
    CyclotomicNumber() : order_(1), coeffs_{Rational(0)} {}
    explicit CyclotomicNumber(const Rational& r) : order_(1), coeffs_{r} {}
    // zeta_e^k
    static CyclotomicNumber root_of_unity(int e, i64 k);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    CyclotomicNumber operator+(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const Rational& r) const;
    bool operator==(const CyclotomicNumber& o) const;

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;  // requires is_rational

    std::string str() const;

  private:
    CyclotomicNumber(int order, std::vector<Rational> coeffs)
        : order_(order), coeffs_(std::move(coeffs)) {}
    static CyclotomicNumber promote(const CyclotomicNumber& x, int e);

    int order_;                     // e: values live in Q(zeta_e)
    std::vector<Rational> coeffs_;  // length phi(e), basis 1, z, ..., z^{phi(e)-1}
};

}  // namespace ell
