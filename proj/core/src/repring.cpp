#include "affine_cells/repring.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include <json.hpp>

#include "affine_cells/error.hpp"
#include "affine_cells/laurent.hpp"

namespace affine_cells {

void RepRingElement::add(const DominantWeight& x, std::int64_t mult) {
    if (mult == 0) return;
    auto& m = terms[x];
    m = checked_add_i64(m, mult);
    if (m == 0) terms.erase(x);
}

std::int64_t RepRingElement::multiplicity(const DominantWeight& x) const {
    auto it = terms.find(x);
    return it == terms.end() ? 0 : it->second;
}

namespace {

bool dominant(const GLWeight& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] < x[i]) return false;
    return true;
}

void require_dominant(const GLWeight& x) {
    if (!dominant(x)) fail(errc::not_dominant, "weight is not weakly decreasing");
}

using PartitionRep = std::map<Partition, std::int64_t>;

// Partition products truncated to at most max_rows rows (0 = no limit).
PartitionRep lr_partitions(const Partition& alpha, const Partition& beta, int max_rows) {
    static std::mutex mu;
    static std::map<std::tuple<Partition, Partition, int>, PartitionRep> memo;
    auto key = std::make_tuple(alpha, beta, max_rows);
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    PartitionRep out;
    const int letters = static_cast<int>(beta.size());
    const int rows_cap = max_rows > 0 ? max_rows : static_cast<int>(alpha.size()) + letters;
    if (static_cast<int>(alpha.size()) <= rows_cap) {
        std::vector<int> shape(static_cast<std::size_t>(rows_cap), 0);
        for (std::size_t r = 0; r < alpha.size(); ++r) shape[r] = alpha[r];
        // count[i][r]: number of letters i+1 placed in row r
        std::vector<std::vector<int>> count(static_cast<std::size_t>(letters), std::vector<int>(static_cast<std::size_t>(rows_cap), 0));

        std::function<void(int)> place_letter;
        // Distribute `left` copies of letter i over rows r, r+1, ... as a horizontal strip.
        std::function<void(int, int, int, const std::vector<int>&)> strip = [&](int i, int r, int left, const std::vector<int>& before) {
            if (left == 0) {
                place_letter(i + 1);
                return;
            }
            if (r >= rows_cap) return;
            const int room = r == 0 ? left : before[static_cast<std::size_t>(r - 1)] - shape[static_cast<std::size_t>(r)];
            // lattice: letters i placed in rows <= r never exceed letters i-1 in rows < r
            int cum_i = 0, cum_prev = 0;
            for (int q = 0; q < r; ++q) cum_i += count[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
            if (i > 0)
                for (int q = 0; q < r; ++q) cum_prev += count[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(q)];
            const int lattice_room = i == 0 ? left : cum_prev - cum_i;
            const int top = std::min({left, std::max(room, 0), std::max(lattice_room, 0)});
            for (int a = top; a >= 0; --a) {
                shape[static_cast<std::size_t>(r)] += a;
                count[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = a;
                strip(i, r + 1, left - a, before);
                count[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = 0;
                shape[static_cast<std::size_t>(r)] -= a;
            }
        };
        place_letter = [&](int i) {
            if (i == letters) {
                Partition nu;
                for (int v : shape)
                    if (v > 0) nu.push_back(v);
                out[nu] += 1;
                return;
            }
            std::vector<int> before = shape;
            strip(i, 0, beta[static_cast<std::size_t>(i)], before);
        };
        place_letter(0);
    }
    std::lock_guard lock(mu);
    memo.emplace(std::move(key), out);
    return out;
}

Partition trimmed_partition(const GLWeight& x, entry_t base) {
    Partition p;
    for (entry_t v : x)
        if (v - base > 0) p.push_back(static_cast<int>(v - base));
    return p;
}

} // namespace

GLRep pieri_wedge(int i, const GLWeight& x) {
    const int m = static_cast<int>(x.size());
    if (i < 1 || i > m) fail(errc::index_out_of_range, "wedge degree must lie in 1..m");
    require_dominant(x);
    GLRep out;
    std::vector<char> pick(static_cast<std::size_t>(m), 0);
    std::fill(pick.begin(), pick.begin() + i, 1);
    do {
        GLWeight y = x;
        for (int k = 0; k < m; ++k) y[static_cast<std::size_t>(k)] += pick[static_cast<std::size_t>(k)];
        if (dominant(y)) out[y] += 1;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

GLRep pieri_sym(entry_t a, const GLWeight& x) {
    if (a < 0) fail(errc::negative_degree, "symmetric power degree must be nonnegative");
    require_dominant(x);
    const int m = static_cast<int>(x.size());
    GLRep out;
    GLWeight add(static_cast<std::size_t>(m), 0);
    // choose a_m, a_{m-1}, ... so every suffix addition stays dominant
    std::function<void(int, entry_t)> rec = [&](int k, entry_t left) {
        if (k < 0) {
            if (left != 0) return;
            GLWeight y = x;
            for (int q = 0; q < m; ++q) y[static_cast<std::size_t>(q)] += add[static_cast<std::size_t>(q)];
            out[y] += 1;
            return;
        }
        for (entry_t v = 0; v <= left; ++v) {
            add[static_cast<std::size_t>(k)] = v;
            // suffix from k: x + (0..0, a_k..a_m); only the boundary at k-1 and inside the suffix matter
            bool ok = true;
            for (int q = std::max(k, 1); q < m && ok; ++q) {
                entry_t prev = x[static_cast<std::size_t>(q - 1)] + (q - 1 >= k ? add[static_cast<std::size_t>(q - 1)] : 0);
                ok = prev >= x[static_cast<std::size_t>(q)] + add[static_cast<std::size_t>(q)];
            }
            if (ok) rec(k - 1, left - v);
        }
        add[static_cast<std::size_t>(k)] = 0;
    };
    if (m == 0) {
        if (a == 0) out[x] = 1;
        return out;
    }
    rec(m - 1, a);
    return out;
}

GLRep lr_product(const GLWeight& x, const GLWeight& y) {
    if (x.size() != y.size()) fail(errc::length_mismatch, "weights of different lengths");
    require_dominant(x);
    require_dominant(y);
    const int m = static_cast<int>(x.size());
    GLRep out;
    if (m == 0) {
        out[GLWeight{}] = 1;
        return out;
    }
    const entry_t kx = x.back(), ky = y.back();
    for (const auto& [nu, c] : lr_partitions(trimmed_partition(x, kx), trimmed_partition(y, ky), m)) {
        GLWeight z(static_cast<std::size_t>(m), kx + ky);
        for (std::size_t r = 0; r < nu.size(); ++r) z[r] += nu[r];
        out[z] += c;
    }
    return out;
}

std::int64_t lr_coefficient(const Partition& alpha, const Partition& beta, const Partition& nu) {
    if (partition_size(nu) != partition_size(alpha) + partition_size(beta)) return 0;
    auto prod = lr_partitions(alpha, beta, static_cast<int>(nu.size()));
    auto it = prod.find(nu);
    return it == prod.end() ? 0 : it->second;
}

std::int64_t lr_multiplicity(const GLWeight& x, const GLWeight& y, const GLWeight& z) {
    if (x.size() != y.size() || x.size() != z.size()) fail(errc::length_mismatch, "weights of different lengths");
    require_dominant(x);
    require_dominant(y);
    if (!dominant(z)) return 0;
    if (x.empty()) return 1;
    const entry_t base = x.back() + y.back();
    if (z.back() < base) return 0;
    return lr_coefficient(trimmed_partition(x, x.back()), trimmed_partition(y, y.back()), trimmed_partition(z, base));
}

RepRingElement product_Flambda(const DominantWeight& a, const DominantWeight& b, const GroupShape& shape) {
    check_weight(a, shape);
    check_weight(b, shape);
    RepRingElement out;
    std::vector<std::vector<std::pair<GLWeight, std::int64_t>>> factors;
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        auto prod = lr_product(a.classes[i], b.classes[i]);
        factors.emplace_back(prod.begin(), prod.end());
    }
    DominantWeight cur;
    cur.classes.resize(factors.size());
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t mult) {
        if (i == factors.size()) {
            out.add(cur, mult);
            return;
        }
        for (const auto& [wt, c] : factors[i]) {
            cur.classes[i] = wt;
            rec(i + 1, checked_mul_i64(mult, c));
        }
    };
    rec(0, 1);
    return out;
}

std::int64_t product_multiplicity(const DominantWeight& a, const DominantWeight& b, const DominantWeight& c, const GroupShape& shape) {
    check_weight(a, shape);
    check_weight(b, shape);
    if (!fits_shape(c, shape)) fail(errc::shape_mismatch, "weight " + to_string(c) + " does not fit the shape");
    std::int64_t m = 1;
    for (std::size_t i = 0; i < a.classes.size() && m != 0; ++i)
        m = checked_mul_i64(m, lr_multiplicity(a.classes[i], b.classes[i], c.classes[i]));
    return m;
}

DominantWeight restrict_sl(const DominantWeight& x, const GroupShape& shape) {
    check_weight(x, shape);
    const entry_t rp = shape.classes.back().antichain_length;
    const entry_t anchor = x.classes.back().back();
    return shift_by_rows(x, shape, -floor_div(anchor, rp));
}

entry_t weight_sum(const DominantWeight& x) {
    entry_t s = 0;
    for (const auto& cls : x.classes)
        for (entry_t v : cls) s = checked_add_i64(s, v);
    return s;
}

bool is_pgl_weight(const DominantWeight& x) { return weight_sum(x) == 0; }

std::string to_json(const RepRingElement& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [wt, m] : x.terms) arr.push_back({{"weight", wt.classes}, {"multiplicity", m}});
    return arr.dump();
}

} // namespace affine_cells
