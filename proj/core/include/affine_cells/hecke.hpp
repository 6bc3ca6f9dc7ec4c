#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "affine_cells/affine_perm.hpp"
#include "affine_cells/laurent.hpp"

namespace affine_cells {

enum class Pivot { smallest_left_descent, largest_left_descent };

// Default bound on l(w) + l(u) for products (and on l(w) for KL columns).
int default_budget(int n);

namespace detail {
class WeylBall;
}

struct KLColumn {
    int length = 0;
    // (ball index of y, P_{y,w}) for all y <= w, sorted by index.
    std::vector<std::pair<std::int32_t, KLPoly>> entries;
    // (ball index of y, mu(y,w)) for y < w with mu != 0.
    std::vector<std::pair<std::int32_t, std::int64_t>> mu;
};

struct HeckeProduct {
    // (v, h_{w,u,v}) sorted by (length, window); zero terms omitted.
    std::vector<std::pair<AffinePerm, LaurentPoly>> terms;

    const LaurentPoly* find(const AffinePerm& v) const;
    LaurentPoly coefficient(const AffinePerm& v) const;

private:
    friend class KLStore;
    std::unordered_map<AffinePerm, std::size_t, AffinePermHash> index_;
};

// Memoized Kazhdan-Lusztig data for one rank. Safe for concurrent use once the
// budget is fixed.
class KLStore {
public:
    explicit KLStore(int n, int budget = 0, Pivot pivot = Pivot::smallest_left_descent);
    ~KLStore();
    KLStore(const KLStore&) = delete;
    KLStore& operator=(const KLStore&) = delete;

    int rank() const noexcept { return n_; }
    int budget() const noexcept { return budget_; }
    void set_budget(int budget);
    Pivot pivot() const noexcept { return pivot_; }
    // Enumerates everything the budget allows; call before sharing the store
    // between threads.
    void prepare();

    KLPoly polynomial(const AffinePerm& y, const AffinePerm& w);
    std::int64_t mu(const AffinePerm& y, const AffinePerm& w);
    // Lower Bruhat interval of w with the KL polynomials.
    std::vector<std::pair<AffinePerm, KLPoly>> column(const AffinePerm& w);

    std::shared_ptr<const HeckeProduct> product(const AffinePerm& w, const AffinePerm& u);

    std::size_t column_count() const;
    std::size_t product_count() const;
    void clear_products();

    // Records "KL n=<n> y=<window> w=<window> P=<c0,c1,...>".
    void save(const std::string& path) const;
    // Returns the number of records read; validates degree bounds.
    std::size_t load(const std::string& path);

private:
    std::shared_ptr<const KLColumn> column_by_index(std::int32_t w);
    std::shared_ptr<const KLColumn> compute_column(std::int32_t w);
    std::shared_ptr<const HeckeProduct> compute_product(const AffinePerm& w, const AffinePerm& u);
    void check_budget(std::int64_t len, const char* what) const;

    int n_;
    int budget_;
    Pivot pivot_;
    std::unique_ptr<detail::WeylBall> ball_;
    std::vector<std::shared_ptr<const KLColumn>> columns_;
    std::map<std::pair<AffinePerm, AffinePerm>, std::shared_ptr<const HeckeProduct>> products_;
    mutable std::recursive_mutex mu_;
};

KLPoly kl_polynomial(const AffinePerm& y, const AffinePerm& w, KLStore& store);
std::shared_ptr<const HeckeProduct> c_product(const AffinePerm& w, const AffinePerm& u, KLStore& store);
std::int64_t a_value(const AffinePerm& w);
std::int64_t gamma_oracle(const AffinePerm& w, const AffinePerm& u, const AffinePerm& v, KLStore& store);
// Leading coefficient at q^{a(v)} of an already computed h; checks the degree bound.
std::int64_t gamma_from_h(const LaurentPoly& h, std::int64_t a);

// Sparse Hecke algebra elements, used for basis conversions and cross-checks.
enum class Basis { T, C };

struct HeckeElement {
    Basis basis = Basis::T;
    std::map<AffinePerm, LaurentPoly> terms;

    void add(const AffinePerm& w, const LaurentPoly& c);
    friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
        return a.basis == b.basis && a.terms == b.terms;
    }
};

HeckeElement t_basis(const AffinePerm& w);
// T_x * T_s (s = s_k) in the T-basis, using (T_s - q^2)(T_s + 1) = 0.
HeckeElement t_times_simple(const HeckeElement& x, int k);
HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b);
// C_w expanded in the T-basis.
HeckeElement c_in_t_basis(const AffinePerm& w, KLStore& store);
HeckeElement to_t_basis(const HeckeElement& x, KLStore& store);
HeckeElement to_c_basis(const HeckeElement& x, KLStore& store);
// sum a_w T_w -> sum bar(a_w) T_{w^{-1}}^{-1}
HeckeElement bar_involution(const HeckeElement& x);

} // namespace affine_cells
