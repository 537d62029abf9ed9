#include "ell/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ell {

namespace {
// exact division of integer polynomials (constant term first), remainder 0
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}
}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int e) {
    static std::map<int, std::vector<Int>> cache;
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    if (e < 1 || e > kMaxCyclotomicOrder)
        throw std::invalid_argument("cyclotomic order out of range");
    // Phi_e = (x^e - 1) / prod_{d|e, d<e} Phi_d
    std::vector<Int> num(e + 1, 0);
    num[0] = -1;
    num[(std::size_t)e] = 1;
    for (int d = 1; d < e; ++d)
        if (e % d == 0) num = poly_div_exact(std::move(num), cyclotomic_polynomial(d));
    return cache.emplace(e, std::move(num)).first->second;
}

CyclotomicNumber CyclotomicNumber::root_of_unity(int e, i64 k) {
    if (e < 1 || e > kMaxCyclotomicOrder)
        throw std::invalid_argument("cyclotomic order out of range");
    const auto& phi = cyclotomic_polynomial(e);
    std::size_t deg = phi.size() - 1;
    k = ((k % e) + e) % e;
    // reduce x^k mod Phi_e
    std::vector<Rational> c((std::size_t)e, Rational(0));
    c[(std::size_t)k] = 1;
    for (std::size_t i = (std::size_t)e; i-- > deg;) {
        if (c[i] == 0) continue;
        Rational lead = c[i];
        c[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            c[i - deg + j] -= lead * Rational(phi[j]);
    }
    c.resize(deg);
    return CyclotomicNumber(e, std::move(c));
}

CyclotomicNumber CyclotomicNumber::promote(const CyclotomicNumber& x, int e) {
    if (x.order_ == e) return x;
    if (e % x.order_ != 0) throw std::logic_error("bad promotion");
    int stride = e / x.order_;
    CyclotomicNumber out(Rational(0));
    out = CyclotomicNumber(e, std::vector<Rational>(
                                  cyclotomic_polynomial(e).size() - 1, Rational(0)));
    for (std::size_t k = 0; k < x.coeffs_.size(); ++k) {
        if (x.coeffs_[k] == 0) continue;
        out = out + root_of_unity(e, (i64)(k * (std::size_t)stride)) * x.coeffs_[k];
    }
    return out;
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
    int e = (int)std::lcm(order_, o.order_);
    if (e > kMaxCyclotomicOrder) throw std::invalid_argument("order cap exceeded");
    CyclotomicNumber a = promote(*this, e), b = promote(o, e);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
    return *this + o * Rational(-1);
}

CyclotomicNumber CyclotomicNumber::operator*(const Rational& r) const {
    CyclotomicNumber a = *this;
    for (auto& c : a.coeffs_) c *= r;
    return a;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
    int e = (int)std::lcm(order_, o.order_);
    if (e > kMaxCyclotomicOrder) throw std::invalid_argument("order cap exceeded");
    CyclotomicNumber a = promote(*this, e), b = promote(o, e);
    CyclotomicNumber out(e, std::vector<Rational>(a.coeffs_.size(), Rational(0)));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            out = out + root_of_unity(e, (i64)(i + j)) * (a.coeffs_[i] * b.coeffs_[j]);
        }
    }
    return out;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    return (*this - o).is_zero();
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CyclotomicNumber::to_rational() const {
    if (!is_rational()) throw std::logic_error("not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

std::string CyclotomicNumber::str() const {
    std::ostringstream os;
    os << "[e=" << order_;
    for (const auto& c : coeffs_) os << " " << c;
    os << "]";
    return os.str();
}

}  // namespace ell
