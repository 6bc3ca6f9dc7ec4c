#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affine_cells {

// Integer Laurent polynomial in q, stored densely from the lowest nonzero exponent.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::int64_t constant) { if (constant != 0) coeffs_.push_back(constant); }

    static LaurentPoly monomial(std::int64_t coeff, int exponent);
    // sum_k c[k] q^(lo + step*k)
    static LaurentPoly from_coeffs(int lo, const std::vector<std::int64_t>& c, int step = 1);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    // Only meaningful when nonzero.
    int valuation() const noexcept { return lo_; }
    int degree() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t coeff(int exponent) const noexcept;
    // (exponent, coefficient) pairs with nonzero coefficient, increasing exponent.
    std::vector<std::pair<int, std::int64_t>> terms() const;

    LaurentPoly bar() const;                // q -> q^{-1}
    LaurentPoly shifted(int k) const;       // times q^k

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.lo_ == b.lo_);
    }

    std::string to_string() const;

private:
    void normalize();
    void add_scaled(const LaurentPoly& o, std::int64_t sign);

    int lo_ = 0;
    std::vector<std::int64_t> coeffs_;
};

// A polynomial in v = q^2 with integer coefficients; index k holds the v^k coefficient.
using KLPoly = std::vector<std::int64_t>;

// P(q^2) as a Laurent polynomial in q.
LaurentPoly kl_to_laurent(const KLPoly& p);
std::string kl_to_string(const KLPoly& p);

std::int64_t checked_add_i64(std::int64_t a, std::int64_t b);
std::int64_t checked_mul_i64(std::int64_t a, std::int64_t b);

} // namespace affine_cells
