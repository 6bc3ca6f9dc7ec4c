#include "affine_cells/canonical.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "affine_cells/cells.hpp"
#include "affine_cells/error.hpp"
#include "affine_cells/laurent.hpp"

namespace affine_cells {

std::string to_string(const DominantWeight& x) {
    std::string s;
    for (const auto& cls : x.classes) {
        s += '(';
        for (std::size_t j = 0; j < cls.size(); ++j) {
            if (j > 0) s += ',';
            s += std::to_string(cls[j]);
        }
        s += ')';
    }
    return s;
}

std::string to_json(const DominantWeight& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.classes.size(); ++i) {
        if (i > 0) s += ',';
        s += '[';
        for (std::size_t j = 0; j < x.classes[i].size(); ++j) {
            if (j > 0) s += ',';
            s += std::to_string(x.classes[i][j]);
        }
        s += ']';
    }
    return s + "]";
}

DominantWeight parse_weight(std::string_view text) {
    DominantWeight x;
    std::size_t pos = 0;
    auto bad = [&]() { fail(errc::parse_error, "bad weight '" + std::string(text) + "'"); };
    auto skip = [&]() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip();
    while (pos < text.size()) {
        if (text[pos] != '(') bad();
        ++pos;
        std::vector<entry_t> cls;
        while (true) {
            skip();
            entry_t v = 0;
            const char* begin = text.data() + pos;
            if (pos < text.size() && text[pos] == '+') bad();
            auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
            if (ec != std::errc()) bad();
            pos += static_cast<std::size_t>(ptr - begin);
            cls.push_back(v);
            skip();
            if (pos >= text.size()) bad();
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (text[pos] != ')') bad();
            ++pos;
            break;
        }
        x.classes.push_back(std::move(cls));
        skip();
    }
    if (x.classes.empty()) bad();
    return x;
}

bool is_dominant(const DominantWeight& x) {
    for (const auto& cls : x.classes)
        for (std::size_t j = 1; j < cls.size(); ++j)
            if (cls[j - 1] < cls[j]) return false;
    return true;
}

bool fits_shape(const DominantWeight& x, const GroupShape& shape) {
    if (x.classes.size() != shape.classes.size()) return false;
    for (std::size_t i = 0; i < x.classes.size(); ++i)
        if (static_cast<int>(x.classes[i].size()) != shape.classes[i].size) return false;
    return true;
}

void check_weight(const DominantWeight& x, const GroupShape& shape) {
    if (!fits_shape(x, shape))
        fail(errc::shape_mismatch, "weight " + to_string(x) + " does not fit lambda=" + to_string(shape.lambda));
    if (!is_dominant(x)) fail(errc::not_dominant, "weight " + to_string(x) + " is not weakly decreasing per class");
}

DominantWeight zero_weight(const GroupShape& shape) {
    DominantWeight x;
    for (const auto& c : shape.classes) x.classes.emplace_back(static_cast<std::size_t>(c.size), 0);
    return x;
}

namespace {

void check_index(const GroupShape& shape, int i, int j) {
    if (i < 1 || i > shape.classes_count() || j < 1 || j > shape.classes[static_cast<std::size_t>(i - 1)].size)
        fail(errc::index_out_of_range, "class index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
}

} // namespace

DominantWeight fundamental_weight(const GroupShape& shape, int i, int j) {
    check_index(shape, i, j);
    DominantWeight x = zero_weight(shape);
    for (int l = 0; l < j; ++l) x.classes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(l)] = 1;
    return x;
}

DominantWeight unit_weight(const GroupShape& shape, int i, int j) {
    check_index(shape, i, j);
    DominantWeight x = zero_weight(shape);
    x.classes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = 1;
    return x;
}

DominantWeight add(const DominantWeight& a, const DominantWeight& b) {
    DominantWeight c = a;
    if (a.classes.size() != b.classes.size()) fail(errc::shape_mismatch, "weights of different shapes");
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        if (a.classes[i].size() != b.classes[i].size()) fail(errc::shape_mismatch, "weights of different shapes");
        for (std::size_t j = 0; j < a.classes[i].size(); ++j) c.classes[i][j] = checked_add_i64(a.classes[i][j], b.classes[i][j]);
    }
    return c;
}

DominantWeight subtract(const DominantWeight& a, const DominantWeight& b) {
    DominantWeight nb = b;
    for (auto& cls : nb.classes)
        for (auto& v : cls) v = -v;
    return add(a, nb);
}

DominantWeight shift_by_rows(const DominantWeight& x, const GroupShape& shape, entry_t k) {
    DominantWeight y = x;
    for (std::size_t i = 0; i < y.classes.size(); ++i)
        for (auto& v : y.classes[i]) v = checked_add_i64(v, checked_mul_i64(k, shape.classes[i].antichain_length));
    return y;
}

DominantWeight dual_weight(const DominantWeight& x) {
    DominantWeight y = x;
    for (auto& cls : y.classes) {
        std::reverse(cls.begin(), cls.end());
        for (auto& v : cls) v = -v;
    }
    return y;
}

AffinePerm w_lambda(const Partition& lambda) {
    GroupShape shape = GroupShape::of(lambda);
    const int n = shape.rank();
    auto e = shape.prefix_sums();
    window_t win(static_cast<std::size_t>(n));
    for (int k = 1; k <= shape.rows(); ++k)
        for (int l = 1; l <= lambda[static_cast<std::size_t>(k - 1)]; ++l)
            win[static_cast<std::size_t>(e[static_cast<std::size_t>(k - 1)] + l - 1)] = e[static_cast<std::size_t>(k)] - l + 1;
    return AffinePerm::from_trusted(n, std::move(win));
}

namespace {

bool blocks_decreasing(const AffinePerm& w, const Partition& lambda) {
    int start = 0;
    for (int part : lambda) {
        for (int l = 1; l < part; ++l)
            if (w[start + l] <= w[start + l + 1]) return false;
        start += part;
    }
    return true;
}

} // namespace

bool is_member(const AffinePerm& w, const Partition& lambda) {
    if (!is_partition(lambda) || partition_size(lambda) != w.rank()) return false;
    if (!blocks_decreasing(w, lambda) || !blocks_decreasing(inverse(w), lambda)) return false;
    return lambda_partition(w) == lambda;
}

void check_admissible(const Partition& lambda, const std::vector<std::vector<entry_t>>& rows) {
    auto bad = [](const std::string& why) { fail(errc::not_admissible, why); };
    if (rows.size() != lambda.size()) bad("expected " + std::to_string(lambda.size()) + " rows");
    std::set<entry_t> seen;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (static_cast<int>(rows[k].size()) != lambda[k])
            bad("row " + std::to_string(k + 1) + " has " + std::to_string(rows[k].size()) + " entries, expected " + std::to_string(lambda[k]));
        for (std::size_t q = 0; q < rows[k].size(); ++q) {
            if (!seen.insert(rows[k][q]).second) bad("condition 1: value " + std::to_string(rows[k][q]) + " repeated");
            if (q > 0 && rows[k][q - 1] <= rows[k][q])
                bad("condition 2: row " + std::to_string(k + 1) + " not strictly decreasing at column " + std::to_string(q + 1));
        }
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        for (std::size_t h = 0; h < i; ++h)
            for (int j = 1; j <= lambda[i]; ++j) {
                const int col = lambda[h] - lambda[i] + j;
                if (rows[i][static_cast<std::size_t>(j - 1)] <= rows[h][static_cast<std::size_t>(col - 1)])
                    bad("condition 3: x(" + std::to_string(i + 1) + "," + std::to_string(j) + ") <= x(" + std::to_string(h + 1) + "," +
                        std::to_string(col) + ")");
            }
}

GreedyGrid greedy_epsilon_grid(const Partition& lambda, const std::vector<std::vector<entry_t>>& rows) {
    check_admissible(lambda, rows);
    GroupShape shape = GroupShape::of(lambda);
    std::vector<int> class_of_row(lambda.size() + 1, 0);
    for (int i = 0; i < shape.classes_count(); ++i) class_of_row[static_cast<std::size_t>(shape.classes[static_cast<std::size_t>(i)].antichain_length)] = i + 1;

    std::vector<std::vector<char>> used(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) used[k].assign(rows[k].size(), 0);

    GreedyGrid grid;
    grid.passes.resize(shape.classes.size());
    const int n = shape.rank();
    int remaining = n;
    while (remaining > 0) {
        int top_row = -1, top_col = -1;
        for (std::size_t k = 0; k < rows.size(); ++k)
            for (std::size_t q = 0; q < rows[k].size(); ++q)
                if (!used[k][q] && (top_row < 0 || rows[k][q] > rows[static_cast<std::size_t>(top_row)][static_cast<std::size_t>(top_col)])) {
                    top_row = static_cast<int>(k);
                    top_col = static_cast<int>(q);
                }
        const int cls = class_of_row[static_cast<std::size_t>(top_row + 1)];
        if (cls == 0) fail(errc::not_admissible, "greatest remaining value lies in row " + std::to_string(top_row + 1) + ", which ends no class");
        std::vector<GridEntry> pass(static_cast<std::size_t>(top_row + 1));
        entry_t bound = rows[static_cast<std::size_t>(top_row)][static_cast<std::size_t>(top_col)];
        pass[static_cast<std::size_t>(top_row)] = {bound, top_row + 1, top_col + 1};
        used[static_cast<std::size_t>(top_row)][static_cast<std::size_t>(top_col)] = 1;
        for (int k = top_row - 1; k >= 0; --k) {
            int pick = -1;
            const auto& row = rows[static_cast<std::size_t>(k)];
            for (std::size_t q = 0; q < row.size(); ++q)
                if (!used[static_cast<std::size_t>(k)][q] && row[q] < bound && (pick < 0 || row[q] > row[static_cast<std::size_t>(pick)])) pick = static_cast<int>(q);
            if (pick < 0) fail(errc::not_admissible, "greedy pass found no value below " + std::to_string(bound) + " in row " + std::to_string(k + 1));
            used[static_cast<std::size_t>(k)][static_cast<std::size_t>(pick)] = 1;
            bound = row[static_cast<std::size_t>(pick)];
            pass[static_cast<std::size_t>(k)] = {bound, k + 1, pick + 1};
        }
        auto& passes = grid.passes[static_cast<std::size_t>(cls - 1)];
        passes.push_back(std::move(pass));
        if (static_cast<int>(passes.size()) > shape.classes[static_cast<std::size_t>(cls - 1)].size)
            fail(errc::not_admissible, "class " + std::to_string(cls) + " received too many passes");
        remaining -= top_row + 1;
    }
    return grid;
}

DominantWeight weight_from_grid(const GroupShape& shape, const GreedyGrid& grid, int n) {
    DominantWeight x;
    for (std::size_t i = 0; i < grid.passes.size(); ++i) {
        std::vector<entry_t> cls;
        for (const auto& pass : grid.passes[i]) {
            entry_t c = 0;
            for (const auto& e : pass) c += floor_div(e.value - 1, n);
            cls.push_back(c);
        }
        if (static_cast<int>(cls.size()) != shape.classes[i].size) fail(errc::not_admissible, "grid does not fill class " + std::to_string(i + 1));
        x.classes.push_back(std::move(cls));
    }
    if (!is_dominant(x)) fail(errc::not_dominant, "grid weight " + to_string(x) + " is not dominant");
    return x;
}

std::vector<std::vector<entry_t>> block_rows(const AffinePerm& w, const Partition& lambda) {
    std::vector<std::vector<entry_t>> rows;
    int start = 0;
    for (int part : lambda) {
        std::vector<entry_t> row;
        for (int l = 1; l <= part; ++l) row.push_back(w[start + l]);
        rows.push_back(std::move(row));
        start += part;
    }
    return rows;
}

GreedyGrid epsilon_grid(const AffinePerm& w, const Partition& lambda) {
    if (!is_member(w, lambda)) fail(errc::not_member, to_string(w) + " is not in the canonical intersection for lambda=" + to_string(lambda));
    return greedy_epsilon_grid(lambda, block_rows(w, lambda));
}

DominantWeight epsilon(const AffinePerm& w, const Partition& lambda) {
    return weight_from_grid(GroupShape::of(lambda), epsilon_grid(w, lambda), w.rank());
}

namespace {

struct Layout {
    GroupShape shape;
    std::vector<int> e;
    int n;
    // 1-based window position of a_{k,q}
    int pos(int k, int q) const { return e[static_cast<std::size_t>(k - 1)] + q; }
    int row_len(int k) const { return shape.lambda[static_cast<std::size_t>(k - 1)]; }
};

Layout layout_of(const Partition& lambda) {
    Layout lay{GroupShape::of(lambda), {}, 0};
    lay.e = lay.shape.prefix_sums();
    lay.n = lay.shape.rank();
    return lay;
}

AffinePerm raw_increment(const AffinePerm& w, const Layout& lay, int i, int j) {
    const int r = lay.shape.classes[static_cast<std::size_t>(i - 1)].antichain_length;
    std::vector<int> jk(static_cast<std::size_t>(r) + 1, 0);
    jk[static_cast<std::size_t>(r)] = j;
    for (int k = r; k >= 2; --k) {
        const entry_t target = w[lay.pos(k, jk[static_cast<std::size_t>(k)])];
        int q = 1;
        while (q <= lay.row_len(k - 1) && w[lay.pos(k - 1, q)] > target) ++q;
        if (q > lay.row_len(k - 1)) fail(errc::precondition_violated, "increment: no pick in row " + std::to_string(k - 1));
        jk[static_cast<std::size_t>(k - 1)] = q;
    }
    window_t win = w.window();
    for (int k = 2; k <= r; ++k)
        win[static_cast<std::size_t>(lay.pos(k - 1, jk[static_cast<std::size_t>(k - 1)]) - 1)] = w[lay.pos(k, jk[static_cast<std::size_t>(k)])];
    win[static_cast<std::size_t>(lay.pos(r, j) - 1)] = w[lay.pos(1, jk[1])] + lay.n;
    return AffinePerm::from_window(lay.n, std::span<const entry_t>(win.data(), win.size()));
}

AffinePerm raw_decrement(const AffinePerm& w, const Layout& lay, int i, int j) {
    const int r = lay.shape.classes[static_cast<std::size_t>(i - 1)].antichain_length;
    std::vector<int> jk(static_cast<std::size_t>(r) + 1, 0);
    auto last_above = [&](int k, entry_t bound) {
        int q = 0;
        for (int c = 1; c <= lay.row_len(k); ++c)
            if (w[lay.pos(k, c)] > bound) q = c;
        if (q == 0) fail(errc::precondition_violated, "decrement: no pick in row " + std::to_string(k));
        return q;
    };
    if (r >= 2) {
        jk[1] = last_above(1, w[lay.pos(r, j)] - lay.n);
        for (int k = 2; k <= r - 1; ++k) jk[static_cast<std::size_t>(k)] = last_above(k, w[lay.pos(k - 1, jk[static_cast<std::size_t>(k - 1)])]);
    }
    jk[static_cast<std::size_t>(r)] = j;
    window_t win = w.window();
    win[static_cast<std::size_t>(lay.pos(1, jk[1]) - 1)] = w[lay.pos(r, j)] - lay.n;
    for (int k = 2; k <= r; ++k)
        win[static_cast<std::size_t>(lay.pos(k, jk[static_cast<std::size_t>(k)]) - 1)] = w[lay.pos(k - 1, jk[static_cast<std::size_t>(k - 1)])];
    return AffinePerm::from_window(lay.n, std::span<const entry_t>(win.data(), win.size()));
}

// Shared precondition of increment and decrement: nonnegative weight, zeros after
// (i, j), and w agreeing with w_lambda past a_{r_i, j}.
DominantWeight check_unit_step(const AffinePerm& w, const Layout& lay, const Partition& lambda, int i, int j, const char* what) {
    check_index(lay.shape, i, j);
    DominantWeight eps = epsilon(w, lambda);
    auto bad = [&](const std::string& why) { fail(errc::precondition_violated, std::string(what) + ": " + why); };
    for (std::size_t a = 0; a < eps.classes.size(); ++a)
        for (std::size_t b = 0; b < eps.classes[a].size(); ++b) {
            if (eps.classes[a][b] < 0) bad("weight " + to_string(eps) + " has a negative component");
            bool after = static_cast<int>(a) + 1 > i || (static_cast<int>(a) + 1 == i && static_cast<int>(b) + 1 > j);
            if (after && eps.classes[a][b] != 0) bad("weight " + to_string(eps) + " is nonzero after the target component");
        }
    const AffinePerm base = w_lambda(lambda);
    const int r = lay.shape.classes[static_cast<std::size_t>(i - 1)].antichain_length;
    for (int a = lay.pos(r, j) + 1; a <= lay.n; ++a)
        if (w[a] != base[a]) bad("window differs from w_lambda at position " + std::to_string(a));
    return eps;
}

} // namespace

AffinePerm increment(const AffinePerm& w, const Partition& lambda, int i, int j) {
    Layout lay = layout_of(lambda);
    DominantWeight eps = check_unit_step(w, lay, lambda, i, j, "increment");
    const auto& cls = eps.classes[static_cast<std::size_t>(i - 1)];
    if (j > 1 && cls[static_cast<std::size_t>(j - 2)] < cls[static_cast<std::size_t>(j - 1)] + 1)
        fail(errc::precondition_violated, "increment: result would not be dominant");
    return raw_increment(w, lay, i, j);
}

AffinePerm decrement(const AffinePerm& w, const Partition& lambda, int i, int j) {
    Layout lay = layout_of(lambda);
    DominantWeight eps = check_unit_step(w, lay, lambda, i, j, "decrement");
    if (eps.classes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] < 1)
        fail(errc::precondition_violated, "decrement: target component is zero");
    return raw_decrement(w, lay, i, j);
}

AffinePerm from_epsilon_shifted(const Partition& lambda, const DominantWeight& eps, int extra) {
    Layout lay = layout_of(lambda);
    check_weight(eps, lay.shape);
    entry_t k = 0;
    for (std::size_t i = 0; i < eps.classes.size(); ++i) {
        const entry_t r = lay.shape.classes[i].antichain_length;
        for (entry_t v : eps.classes[i])
            if (v < 0) k = std::max(k, (-v + r - 1) / r);
    }
    k += extra;
    DominantWeight target = shift_by_rows(eps, lay.shape, k);
    AffinePerm w = w_lambda(lambda);
    for (std::size_t i = 0; i < target.classes.size(); ++i)
        for (std::size_t j = 0; j < target.classes[i].size(); ++j)
            for (entry_t t = 0; t < target.classes[i][j]; ++t) w = raw_increment(w, lay, static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    window_t win = w.window();
    for (auto& v : win) v = checked_add_i64(v, -checked_mul_i64(k, lay.n));
    return AffinePerm::from_trusted(lay.n, std::move(win));
}

AffinePerm from_epsilon(const Partition& lambda, const DominantWeight& eps) { return from_epsilon_shifted(lambda, eps, 0); }

AffinePerm fundamental_translation(const Partition& lambda, int i, int j) {
    Layout lay = layout_of(lambda);
    check_index(lay.shape, i, j);
    const int h = lay.shape.classes[static_cast<std::size_t>(i - 1)].antichain_length;
    const auto& e = lay.e;
    window_t win(static_cast<std::size_t>(lay.n));
    for (int a = 1; a <= lay.n; ++a) win[static_cast<std::size_t>(a - 1)] = a;
    for (int l = 1; l <= j; ++l) {
        for (int k = 1; k <= h - 1; ++k) win[static_cast<std::size_t>(e[static_cast<std::size_t>(k)] - l)] = e[static_cast<std::size_t>(k + 1)] - l + 1;
        win[static_cast<std::size_t>(e[static_cast<std::size_t>(h)] - l)] = e[1] - l + 1 + lay.n;
    }
    return AffinePerm::from_window(lay.n, std::span<const entry_t>(win.data(), win.size()));
}

AffinePerm fundamental_element(const Partition& lambda, int i, int j) {
    Layout lay = layout_of(lambda);
    check_index(lay.shape, i, j);
    const int h = lay.shape.classes[static_cast<std::size_t>(i - 1)].antichain_length;
    const auto& e = lay.e;
    window_t win = w_lambda(lambda).window();
    for (int l = 1; l <= j; ++l) {
        for (int k = 1; k <= h - 1; ++k) win[static_cast<std::size_t>(e[static_cast<std::size_t>(k - 1)] + l - 1)] = e[static_cast<std::size_t>(k + 1)] - l + 1;
        win[static_cast<std::size_t>(e[static_cast<std::size_t>(h - 1)] + l - 1)] = e[1] - l + 1 + lay.n;
    }
    return AffinePerm::from_window(lay.n, std::span<const entry_t>(win.data(), win.size()));
}

AffinePerm cycle_element(int n, const std::vector<entry_t>& points) {
    window_t win(static_cast<std::size_t>(n));
    for (int a = 1; a <= n; ++a) win[static_cast<std::size_t>(a - 1)] = a;
    for (std::size_t l = 0; l < points.size(); ++l) {
        const entry_t from = points[l];
        const entry_t to = points[(l + 1) % points.size()];
        const entry_t rho = residue1(from, n);
        win[static_cast<std::size_t>(rho - 1)] = to - (from - rho);
    }
    return AffinePerm::from_window(n, std::span<const entry_t>(win.data(), win.size()));
}

AffinePerm m_element(int n, const std::vector<int>& subset) {
    std::vector<int> a(subset.begin(), subset.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) fail(errc::empty_subset, "m_I needs a nonempty subset");
    if (a.front() < 1 || a.back() > n - 1) fail(errc::index_out_of_range, "subset must lie in 1..n-1");
    const int k = static_cast<int>(a.size());
    a.insert(a.begin(), 0);
    a.push_back(n);
    window_t win(static_cast<std::size_t>(n));
    for (int i = 1; i <= k + 1; ++i)
        for (int j = 1; j <= a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i - 1)]; ++j)
            win[static_cast<std::size_t>(n - a[static_cast<std::size_t>(i)] + j - 1)] =
                a[static_cast<std::size_t>(i - 1)] + j + static_cast<entry_t>(k - i + 1) * n;
    return AffinePerm::from_window(n, std::span<const entry_t>(win.data(), win.size()));
}

AffinePerm dominant_monomial(int n, const std::vector<entry_t>& exponents) {
    if (static_cast<int>(exponents.size()) != n) fail(errc::length_mismatch, "expected n exponents");
    AffinePerm x = AffinePerm::identity(n);
    for (int i = 1; i <= n; ++i) {
        entry_t a = exponents[static_cast<std::size_t>(i - 1)];
        if (i < n && a < 0) fail(errc::precondition_violated, "exponents of x_1..x_{n-1} must be nonnegative");
        if (a != 0) x = multiply(x, power(dominant_generator(n, i), a));
    }
    return x;
}

AffinePerm m_of_dominant(int n, const std::vector<entry_t>& exponents) {
    AffinePerm x = dominant_monomial(n, exponents);
    std::vector<int> support;
    for (int i = 1; i < n; ++i)
        if (exponents[static_cast<std::size_t>(i - 1)] >= 1) support.push_back(i);
    if (support.empty()) return x;
    AffinePerm xi = AffinePerm::identity(n);
    for (int i : support) xi = multiply(xi, dominant_generator(n, i));
    return multiply(multiply(x, inverse(xi)), m_element(n, support));
}

ConjectureReport conjecture_diagnostic(const AffinePerm& w, const Partition& lambda) {
    GreedyGrid grid = epsilon_grid(w, lambda);
    GroupShape shape = GroupShape::of(lambda);
    DominantWeight eps = weight_from_grid(shape, grid, w.rank());
    const AffinePerm base = w_lambda(lambda);
    ConjectureReport rep;
    for (std::size_t i = 0; i < grid.passes.size(); ++i) {
        std::vector<std::vector<entry_t>> cls_grid;
        std::vector<std::pair<entry_t, entry_t>> cls_cmp;
        for (std::size_t j = 0; j < grid.passes[i].size(); ++j) {
            std::vector<entry_t> shifted;
            entry_t sum = 0;
            for (const auto& e : grid.passes[i][j]) {
                entry_t v = e.value - base[shape.position(e.row, e.col)];
                shifted.push_back(v);
                sum += v;
            }
            const entry_t eij = eps.classes[i][j];
            cls_cmp.emplace_back(eij, sum);
            if (eij * w.rank() != sum) rep.holds = false;
            cls_grid.push_back(std::move(shifted));
        }
        rep.shifted_grid.push_back(std::move(cls_grid));
        rep.comparisons.push_back(std::move(cls_cmp));
    }
    return rep;
}

} // namespace affine_cells
