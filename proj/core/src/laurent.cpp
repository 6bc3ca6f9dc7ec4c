#include "affine_cells/laurent.hpp"

#include <algorithm>

#include "affine_cells/error.hpp"

namespace affine_cells {

std::int64_t checked_add_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "coefficient overflow");
    return r;
}

std::int64_t checked_mul_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "coefficient overflow");
    return r;
}

LaurentPoly LaurentPoly::monomial(std::int64_t coeff, int exponent) {
    LaurentPoly p;
    if (coeff != 0) {
        p.lo_ = exponent;
        p.coeffs_.push_back(coeff);
    }
    return p;
}

LaurentPoly LaurentPoly::from_coeffs(int lo, const std::vector<std::int64_t>& c, int step) {
    LaurentPoly p;
    if (c.empty()) return p;
    p.lo_ = lo;
    p.coeffs_.assign((c.size() - 1) * static_cast<std::size_t>(step) + 1, 0);
    for (std::size_t k = 0; k < c.size(); ++k) p.coeffs_[k * static_cast<std::size_t>(step)] = c[k];
    p.normalize();
    return p;
}

std::int64_t LaurentPoly::coeff(int exponent) const noexcept {
    if (coeffs_.empty() || exponent < lo_ || exponent > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(exponent - lo_)];
}

std::vector<std::pair<int, std::int64_t>> LaurentPoly::terms() const {
    std::vector<std::pair<int, std::int64_t>> out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) out.emplace_back(lo_ + static_cast<int>(k), coeffs_[k]);
    return out;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly p;
    if (is_zero()) return p;
    p.lo_ = -degree();
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return p;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.lo_ += k;
    return p;
}

void LaurentPoly::normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
        coeffs_.clear();
        lo_ = 0;
        return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0) --last;
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<std::int64_t>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                            coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
        lo_ += static_cast<int>(first);
    }
}

void LaurentPoly::add_scaled(const LaurentPoly& o, std::int64_t sign) {
    if (o.is_zero()) return;
    if (is_zero()) {
        lo_ = o.lo_;
        coeffs_ = o.coeffs_;
        if (sign < 0)
            for (auto& c : coeffs_) c = -c;
        return;
    }
    int lo = std::min(lo_, o.lo_);
    int hi = std::max(degree(), o.degree());
    std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[static_cast<std::size_t>(lo_ - lo) + k] = coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        auto& slot = out[static_cast<std::size_t>(o.lo_ - lo) + k];
        slot = checked_add_i64(slot, sign * o.coeffs_[k]);
    }
    lo_ = lo;
    coeffs_ = std::move(out);
    normalize();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    add_scaled(o, 1);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    add_scaled(o, -1);
    return *this;
}

LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly p = a;
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.lo_ = a.lo_ + b.lo_;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            auto& slot = p.coeffs_[i + j];
            slot = checked_add_i64(slot, checked_mul_i64(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    p.normalize();
    return p;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int e = degree(); e >= lo_; --e) {
        std::int64_t c = coeff(e);
        if (c == 0) continue;
        std::int64_t mag = c < 0 ? -c : c;
        if (s.empty()) {
            if (c < 0) s += '-';
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (e == 0) {
            s += std::to_string(mag);
            continue;
        }
        if (mag != 1) s += std::to_string(mag) + '*';
        s += 'q';
        if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
}

LaurentPoly kl_to_laurent(const KLPoly& p) { return LaurentPoly::from_coeffs(0, p, 2); }

std::string kl_to_string(const KLPoly& p) {
    std::string s;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k > 0) s += ',';
        s += std::to_string(p[k]);
    }
    return s;
}

} // namespace affine_cells
