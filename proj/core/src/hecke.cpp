#include "affine_cells/hecke.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "affine_cells/cells.hpp"
#include "affine_cells/error.hpp"

namespace affine_cells {

int default_budget(int n) {
    if (n <= 2) return 20;
    if (n == 3) return 14;
    return 10;
}

namespace detail {

// Elements of W' ordered by length (breadth-first), with cached neighbours.
class WeylBall {
public:
    explicit WeylBall(int n) : n_(n) {
        add(AffinePerm::identity(n), 0);
        level_end_.push_back(1);
    }

    int rank() const { return n_; }
    int top() const { return static_cast<int>(level_end_.size()) - 1; }

    void grow(int max_length) {
        while (top() < max_length) grow_one();
    }

    std::int32_t count_upto(int len) const {
        if (len < 0) return 0;
        return level_end_[static_cast<std::size_t>(std::min(len, top()))];
    }

    std::int32_t find(const AffinePerm& w) const {
        auto it = index_.find(w);
        return it == index_.end() ? -1 : it->second;
    }

    std::int32_t locate(const AffinePerm& wprime) {
        grow(static_cast<int>(length(wprime)));
        std::int32_t i = find(wprime);
        if (i < 0) fail(errc::precondition_violated, "element not in W': " + to_string(wprime));
        return i;
    }

    const AffinePerm& perm(std::int32_t i) const { return perms_[static_cast<std::size_t>(i)]; }
    int len(std::int32_t i) const { return lens_[static_cast<std::size_t>(i)]; }
    std::int32_t rmul(std::int32_t i, int s) const { return rmul_[static_cast<std::size_t>(i) * n_ + s]; }
    std::int32_t lmul(std::int32_t i, int s) const { return lmul_[static_cast<std::size_t>(i) * n_ + s]; }

    // index of omega^{-b} x omega^{b}
    std::int32_t conj(std::int32_t i, int b) {
        b = static_cast<int>(((b % n_) + n_) % n_);
        if (b == 0) return i;
        if (conj_.empty()) conj_.resize(static_cast<std::size_t>(n_));
        auto& table = conj_[static_cast<std::size_t>(b)];
        while (table.size() < perms_.size()) {
            const AffinePerm& x = perms_[table.size()];
            window_t win(static_cast<std::size_t>(n_));
            for (int j = 1; j <= n_; ++j) win[static_cast<std::size_t>(j - 1)] = x(j + b) - b;
            table.push_back(find(AffinePerm::from_trusted(n_, std::move(win))));
        }
        return table[static_cast<std::size_t>(i)];
    }

private:
    std::int32_t add(AffinePerm w, int l) {
        auto idx = static_cast<std::int32_t>(perms_.size());
        index_.emplace(w, idx);
        perms_.push_back(std::move(w));
        lens_.push_back(l);
        rmul_.resize(perms_.size() * static_cast<std::size_t>(n_), -1);
        lmul_.resize(perms_.size() * static_cast<std::size_t>(n_), -1);
        return idx;
    }

    void grow_one() {
        const int l = top();
        const std::int32_t begin = count_upto(l - 1);
        const std::int32_t end = level_end_.back();
        for (std::int32_t i = begin; i < end; ++i)
            for (int s = 0; s < n_; ++s) {
                AffinePerm x = right_mul_simple(perms_[static_cast<std::size_t>(i)], s);
                if (!has_right_descent(x, s)) continue; // went down
                if (find(x) < 0) add(std::move(x), l + 1);
            }
        const auto new_end = static_cast<std::int32_t>(perms_.size());
        for (std::int32_t i = end; i < new_end; ++i)
            for (int s = 0; s < n_; ++s) {
                const AffinePerm& x = perms_[static_cast<std::size_t>(i)];
                if (has_right_descent(x, s)) {
                    std::int32_t y = find(right_mul_simple(x, s));
                    rmul_[static_cast<std::size_t>(i) * n_ + s] = y;
                    rmul_[static_cast<std::size_t>(y) * n_ + s] = i;
                }
                AffinePerm sx = left_mul_simple(s, x);
                if (length(sx) < l + 1) {
                    std::int32_t y = find(sx);
                    lmul_[static_cast<std::size_t>(i) * n_ + s] = y;
                    lmul_[static_cast<std::size_t>(y) * n_ + s] = i;
                }
            }
        level_end_.push_back(new_end);
    }

    int n_;
    std::vector<AffinePerm> perms_;
    std::vector<int> lens_;
    std::vector<std::int32_t> level_end_;
    std::vector<std::int32_t> rmul_;
    std::vector<std::int32_t> lmul_;
    std::unordered_map<AffinePerm, std::int32_t, AffinePermHash> index_;
    std::vector<std::vector<std::int32_t>> conj_;
};

} // namespace detail

namespace {

// Dense rows of polynomials in t = q^2.
struct PolyRows {
    int width = 0;
    std::vector<std::int64_t> data;

    PolyRows(std::size_t rows, int w) : width(w), data(rows * static_cast<std::size_t>(w), 0) {}
    std::int64_t* row(std::int32_t r) { return data.data() + static_cast<std::size_t>(r) * width; }
    const std::int64_t* row(std::int32_t r) const { return data.data() + static_cast<std::size_t>(r) * width; }
    bool row_zero(std::int32_t r) const {
        const std::int64_t* p = row(r);
        for (int k = 0; k < width; ++k)
            if (p[k] != 0) return false;
        return true;
    }
};

// dst += sign * t^shift * src
void add_shifted(std::int64_t* dst, int dst_width, const std::int64_t* src, std::size_t src_len, int shift, std::int64_t sign) {
    for (std::size_t k = 0; k < src_len; ++k) {
        if (src[k] == 0) continue;
        std::size_t at = k + static_cast<std::size_t>(shift);
        if (at >= static_cast<std::size_t>(dst_width)) fail(errc::degree_violation, "polynomial exceeds working width");
        dst[at] = checked_add_i64(dst[at], checked_mul_i64(sign, src[k]));
    }
}

KLPoly trimmed(const std::int64_t* p, int width) {
    int last = width;
    while (last > 0 && p[last - 1] == 0) --last;
    return KLPoly(p, p + last);
}

} // namespace

const LaurentPoly* HeckeProduct::find(const AffinePerm& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? nullptr : &terms[it->second].second;
}

LaurentPoly HeckeProduct::coefficient(const AffinePerm& v) const {
    const LaurentPoly* p = find(v);
    return p ? *p : LaurentPoly();
}

KLStore::KLStore(int n, int budget, Pivot pivot)
    : n_(n), budget_(budget > 0 ? budget : default_budget(n)), pivot_(pivot), ball_(std::make_unique<detail::WeylBall>(n)) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
}

KLStore::~KLStore() = default;

void KLStore::set_budget(int budget) {
    std::lock_guard lock(mu_);
    if (budget <= 0) fail(errc::precondition_violated, "budget must be positive");
    budget_ = budget;
}

void KLStore::prepare() {
    std::lock_guard lock(mu_);
    ball_->grow(budget_);
    for (int b = 1; b < n_; ++b) ball_->conj(0, b);
}

void KLStore::check_budget(std::int64_t len, const char* what) const {
    if (len > budget_)
        fail(errc::limit_exceeded, std::string(what) + " needs length " + std::to_string(len) + " above budget " + std::to_string(budget_));
}

std::size_t KLStore::column_count() const {
    std::lock_guard lock(mu_);
    std::size_t c = 0;
    for (const auto& p : columns_)
        if (p) ++c;
    return c;
}

std::size_t KLStore::product_count() const {
    std::lock_guard lock(mu_);
    return products_.size();
}

void KLStore::clear_products() {
    std::lock_guard lock(mu_);
    products_.clear();
}

std::shared_ptr<const KLColumn> KLStore::column_by_index(std::int32_t w) {
    std::lock_guard lock(mu_);
    if (static_cast<std::size_t>(w) < columns_.size() && columns_[static_cast<std::size_t>(w)])
        return columns_[static_cast<std::size_t>(w)];
    auto col = compute_column(w);
    if (columns_.size() <= static_cast<std::size_t>(w)) columns_.resize(static_cast<std::size_t>(w) + 1);
    columns_[static_cast<std::size_t>(w)] = col;
    return col;
}

std::shared_ptr<const KLColumn> KLStore::compute_column(std::int32_t w) {
    auto& B = *ball_;
    const int l = B.len(w);
    auto col = std::make_shared<KLColumn>();
    col->length = l;
    if (l == 0) {
        col->entries.push_back({w, KLPoly{1}});
        return col;
    }
    int s = -1;
    for (int k = 0; k < n_; ++k) {
        int kk = pivot_ == Pivot::smallest_left_descent ? k : n_ - 1 - k;
        std::int32_t down = B.lmul(w, kk);
        if (down >= 0 && B.len(down) == l - 1) {
            s = kk;
            break;
        }
    }
    const std::int32_t v = B.lmul(w, s);
    auto colv = column_by_index(v);

    struct Correction {
        std::shared_ptr<const KLColumn> col;
        std::int64_t mu;
        int shift;
    };
    std::vector<Correction> corr;
    for (const auto& [z, m] : colv->mu) {
        std::int32_t sz = B.lmul(z, s);
        if (B.len(sz) < B.len(z)) corr.push_back({column_by_index(z), m, (l - B.len(z)) / 2});
    }

    const std::int32_t cnt = B.count_upto(l);
    const int width = l / 2 + 2;
    PolyRows pv(static_cast<std::size_t>(B.count_upto(l - 1)), width);
    for (const auto& [y, p] : colv->entries) add_shifted(pv.row(y), width, p.data(), p.size(), 0, 1);

    PolyRows res(static_cast<std::size_t>(cnt), width);
    std::vector<char> marked(static_cast<std::size_t>(cnt), 0);
    std::vector<std::int32_t> members;
    for (const auto& [y, p] : colv->entries) {
        for (std::int32_t x : {y, B.lmul(y, s)}) {
            if (!marked[static_cast<std::size_t>(x)]) {
                marked[static_cast<std::size_t>(x)] = 1;
                members.push_back(x);
            }
        }
    }
    const std::int32_t cnt_v = B.count_upto(l - 1);
    for (std::int32_t y : members) {
        std::int32_t sy = B.lmul(y, s);
        int c = B.len(sy) < B.len(y) ? 1 : 0;
        if (sy < cnt_v) add_shifted(res.row(y), width, pv.row(sy), static_cast<std::size_t>(width - 1), 1 - c, 1);
        if (y < cnt_v) add_shifted(res.row(y), width, pv.row(y), static_cast<std::size_t>(width - 1), c, 1);
    }
    for (const auto& cr : corr)
        for (const auto& [y, p] : cr.col->entries) add_shifted(res.row(y), width, p.data(), p.size(), cr.shift, -cr.mu);

    std::sort(members.begin(), members.end());
    for (std::int32_t y : members) {
        KLPoly p = trimmed(res.row(y), width);
        const int d = l - B.len(y);
        if (p.empty() || p[0] != 1)
            fail(errc::degree_violation, "KL polynomial without constant term 1 at " + to_string(B.perm(y)) + " <= " + to_string(B.perm(w)));
        if (y != w && 2 * (static_cast<int>(p.size()) - 1) > d - 1)
            fail(errc::degree_violation, "KL degree bound fails at " + to_string(B.perm(y)) + " <= " + to_string(B.perm(w)));
        if (y != w && d % 2 == 1 && static_cast<int>(p.size()) - 1 == (d - 1) / 2) col->mu.push_back({y, p.back()});
        col->entries.push_back({y, std::move(p)});
    }
    // Anything outside the interval must have cancelled.
    for (const auto& cr : corr)
        for (const auto& [y, p] : cr.col->entries)
            if (!marked[static_cast<std::size_t>(y)] && !res.row_zero(y))
                fail(errc::degree_violation, "KL recursion left a term outside the interval");
    return col;
}

KLPoly KLStore::polynomial(const AffinePerm& y, const AffinePerm& w) {
    if (y.rank() != n_ || w.rank() != n_) fail(errc::rank_mismatch, "element rank differs from store rank");
    check_budget(length(w), "KL polynomial");
    if (omega_exponent(y) != omega_exponent(w)) return {};
    AffinePerm yp = wprime_part(y), wp = wprime_part(w);
    std::int32_t wi, yi;
    {
        std::lock_guard lock(mu_);
        wi = ball_->locate(wp);
        yi = ball_->find(yp);
    }
    if (yi < 0) return {};
    auto col = column_by_index(wi);
    auto it = std::lower_bound(col->entries.begin(), col->entries.end(), yi,
                               [](const auto& e, std::int32_t key) { return e.first < key; });
    if (it == col->entries.end() || it->first != yi) return {};
    return it->second;
}

std::int64_t KLStore::mu(const AffinePerm& y, const AffinePerm& w) {
    std::int64_t ly = length(y), lw = length(w);
    if (ly >= lw || (lw - ly) % 2 == 0) return 0;
    KLPoly p = polynomial(y, w);
    if (static_cast<std::int64_t>(p.size()) - 1 != (lw - ly - 1) / 2) return 0;
    return p.back();
}

std::vector<std::pair<AffinePerm, KLPoly>> KLStore::column(const AffinePerm& w) {
    if (w.rank() != n_) fail(errc::rank_mismatch, "element rank differs from store rank");
    check_budget(length(w), "KL column");
    entry_t k = omega_exponent(w);
    std::int32_t wi;
    {
        std::lock_guard lock(mu_);
        wi = ball_->locate(wprime_part(w));
    }
    auto col = column_by_index(wi);
    std::vector<std::pair<AffinePerm, KLPoly>> out;
    std::lock_guard lock(mu_);
    for (const auto& [y, p] : col->entries) {
        window_t win = ball_->perm(y).window();
        for (auto& v : win) v += k;
        out.emplace_back(AffinePerm::from_trusted(n_, std::move(win)), p);
    }
    return out;
}

std::shared_ptr<const HeckeProduct> KLStore::product(const AffinePerm& w, const AffinePerm& u) {
    if (w.rank() != n_ || u.rank() != n_) fail(errc::rank_mismatch, "element rank differs from store rank");
    auto key = std::make_pair(w, u);
    {
        std::lock_guard lock(mu_);
        if (auto it = products_.find(key); it != products_.end()) return it->second;
    }
    auto prod = compute_product(w, u);
    std::lock_guard lock(mu_);
    products_.emplace(std::move(key), prod);
    return prod;
}

std::shared_ptr<const HeckeProduct> KLStore::compute_product(const AffinePerm& w, const AffinePerm& u) {
    const int lw = static_cast<int>(length(w));
    const int lu = static_cast<int>(length(u));
    check_budget(lw + lu, "product");
    const int L = lw + lu;
    const entry_t a = omega_exponent(w), b = omega_exponent(u);

    std::int32_t ix, iy;
    {
        std::lock_guard lock(mu_);
        ball_->grow(budget_);
        ix = ball_->conj(ball_->locate(wprime_part(w)), static_cast<int>(((b % n_) + n_) % n_));
        iy = ball_->locate(wprime_part(u));
    }
    const auto& B = *ball_;
    auto colx = column_by_index(ix);
    auto coly = column_by_index(iy);

    const std::int32_t cnt = B.count_upto(L);
    const int width = 2 * L + 4;

    // Spanning tree of the interval below y: parent(z) = z s for the smallest right descent s.
    std::unordered_map<std::int32_t, std::vector<std::pair<std::int32_t, int>>> children;
    std::unordered_map<std::int32_t, const KLPoly*> py;
    for (const auto& [z, p] : coly->entries) {
        py.emplace(z, &p);
        if (B.len(z) == 0) continue;
        for (int s = 0; s < n_; ++s) {
            std::int32_t down = B.rmul(z, s);
            if (down >= 0 && B.len(down) < B.len(z)) {
                children[down].push_back({z, s});
                break;
            }
        }
    }

    PolyRows acc(static_cast<std::size_t>(cnt), width);
    // One buffer per tree depth; the buffer at depth d holds T-coefficients of
    // C_x T_z for the current node z of length d.
    const int depth_max = B.len(iy);
    std::vector<PolyRows> level_buf;
    level_buf.reserve(static_cast<std::size_t>(depth_max) + 1);
    for (int d = 0; d <= depth_max; ++d) level_buf.emplace_back(static_cast<std::size_t>(B.count_upto(B.len(ix) + d + 1)), width);
    for (const auto& [z, p] : colx->entries) add_shifted(level_buf[0].row(z), width, p.data(), p.size(), 0, 1);

    auto apply_ts = [&](PolyRows& Y, int s, int max_len_before) {
        const std::int32_t limit = B.count_upto(max_len_before);
        std::vector<std::int64_t> ya(static_cast<std::size_t>(width)), yb(static_cast<std::size_t>(width));
        for (std::int32_t r = 0; r < limit; ++r) {
            std::int32_t up = B.rmul(r, s);
            if (up < 0) {
                if (!Y.row_zero(r)) fail(errc::limit_exceeded, "product support left the enumerated ball");
                continue;
            }
            if (B.len(up) < B.len(r)) continue;
            std::int64_t* pa = Y.row(r);
            std::int64_t* pb = Y.row(up);
            std::copy(pa, pa + width, ya.begin());
            std::copy(pb, pb + width, yb.begin());
            if (yb[static_cast<std::size_t>(width - 1)] != 0) fail(errc::degree_violation, "polynomial exceeds working width");
            // T_a T_s = T_b; T_b T_s = (t - 1) T_b + t T_a
            for (int k = 0; k < width; ++k) {
                std::int64_t shifted = k > 0 ? yb[static_cast<std::size_t>(k - 1)] : 0;
                pb[k] = checked_add_i64(checked_add_i64(ya[static_cast<std::size_t>(k)], shifted), -yb[static_cast<std::size_t>(k)]);
                pa[k] = shifted;
            }
        }
    };

    const int lx = B.len(ix);
    std::function<void(std::int32_t, int)> visit = [&](std::int32_t z, int depth) {
        const PolyRows& Y = level_buf[static_cast<std::size_t>(depth)];
        const KLPoly& p = *py.at(z);
        const std::int32_t rows = B.count_upto(lx + depth);
        for (std::int32_t r = 0; r < rows; ++r) {
            const std::int64_t* src = Y.row(r);
            int last = width;
            while (last > 0 && src[last - 1] == 0) --last;
            if (last == 0) continue;
            std::int64_t* dst = acc.row(r);
            for (std::size_t j = 0; j < p.size(); ++j) add_shifted(dst, width, src, static_cast<std::size_t>(last), static_cast<int>(j), p[j]);
        }
        auto it = children.find(z);
        if (it == children.end()) return;
        PolyRows& next = level_buf[static_cast<std::size_t>(depth) + 1];
        const std::size_t keep = static_cast<std::size_t>(rows) * static_cast<std::size_t>(width);
        for (const auto& [c, s] : it->second) {
            std::copy(Y.data.begin(), Y.data.begin() + static_cast<std::ptrdiff_t>(keep), next.data.begin());
            std::fill(next.data.begin() + static_cast<std::ptrdiff_t>(keep), next.data.end(), 0);
            apply_ts(next, s, lx + depth);
            visit(c, depth + 1);
        }
    };
    // The root of the tree is the identity, always index 0.
    visit(0, 0);

    // C-basis extraction: peel the longest surviving terms.
    struct Term {
        std::int32_t idx;
        LaurentPoly h;
    };
    std::vector<Term> found;
    for (int level = L; level >= 0; --level) {
        std::int32_t lo = B.count_upto(level - 1), hi = B.count_upto(level);
        std::vector<std::int32_t> order;
        for (std::int32_t r = lo; r < hi; ++r)
            if (!acc.row_zero(r)) order.push_back(r);
        std::sort(order.begin(), order.end(), [&](std::int32_t x, std::int32_t y) { return B.perm(x) < B.perm(y); });
        for (std::int32_t r : order) {
            KLPoly R = trimmed(acc.row(r), width);
            LaurentPoly h = LaurentPoly::from_coeffs(level - L, R, 2);
            if (!(h == h.bar())) fail(errc::degree_violation, "structure constant is not bar invariant");
            auto colr = column_by_index(r);
            for (const auto& [z, p] : colr->entries) {
                std::int64_t* dst = acc.row(z);
                for (std::size_t j = 0; j < p.size(); ++j) add_shifted(dst, width, R.data(), R.size(), static_cast<int>(j), -p[j]);
            }
            found.push_back({r, std::move(h)});
        }
    }

    auto out = std::make_shared<HeckeProduct>();
    const entry_t shift = a + b;
    for (auto& t : found) {
        window_t win = B.perm(t.idx).window();
        for (auto& v : win) v += shift;
        out->terms.emplace_back(AffinePerm::from_trusted(n_, std::move(win)), std::move(t.h));
    }
    std::sort(out->terms.begin(), out->terms.end(), [](const auto& x, const auto& y) { return length_lex_less(x.first, y.first); });
    for (std::size_t i = 0; i < out->terms.size(); ++i) out->index_.emplace(out->terms[i].first, i);
    return out;
}

void KLStore::save(const std::string& path) const {
    std::lock_guard lock(mu_);
    std::ofstream out(path);
    if (!out) fail(errc::precondition_violated, "cannot write cache file " + path);
    for (std::size_t w = 0; w < columns_.size(); ++w) {
        if (!columns_[w]) continue;
        const std::string ws = to_string(ball_->perm(static_cast<std::int32_t>(w)));
        for (const auto& [y, p] : columns_[w]->entries)
            out << "KL n=" << n_ << " y=" << to_string(ball_->perm(y)) << " w=" << ws << " P=" << kl_to_string(p) << '\n';
    }
}

std::size_t KLStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    std::lock_guard lock(mu_);
    std::map<AffinePerm, std::vector<std::pair<AffinePerm, KLPoly>>> grouped;
    std::string line;
    std::size_t records = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto bad = [&](const std::string& why) {
            fail(errc::cache_corrupt, path + ":" + std::to_string(lineno) + ": " + why);
        };
        auto field = [&](const std::string& key) -> std::string {
            auto pos = line.find(key + "=");
            if (pos == std::string::npos) bad("missing " + key);
            auto start = pos + key.size() + 1;
            auto end = line.find(' ', start);
            return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
        };
        if (line.rfind("KL ", 0) != 0) bad("record must start with KL");
        int n = std::stoi(field("n"));
        if (n != n_) bad("rank " + std::to_string(n) + " does not match store rank " + std::to_string(n_));
        AffinePerm y = parse_window(field("y"), n_);
        AffinePerm w = parse_window(field("w"), n_);
        KLPoly p;
        std::stringstream ss(field("P"));
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(std::stoll(tok));
        while (!p.empty() && p.back() == 0) p.pop_back();
        const auto d = length(w) - length(y);
        if (omega_exponent(w) != 0 || omega_exponent(y) != 0) bad("records must lie in W'");
        if (p.empty() || p[0] != 1) bad("constant term must be 1");
        if (d < 0 || (y != w && 2 * (static_cast<std::int64_t>(p.size()) - 1) > d - 1) || (y == w && p.size() != 1))
            bad("degree bound violated");
        grouped[w].emplace_back(std::move(y), std::move(p));
        ++records;
    }
    std::int64_t max_len = 0;
    for (const auto& [w, entries] : grouped) max_len = std::max(max_len, length(w));
    ball_->grow(static_cast<int>(max_len));
    for (auto& [w, entries] : grouped) {
        auto col = std::make_shared<KLColumn>();
        std::int32_t wi = ball_->find(w);
        col->length = ball_->len(wi);
        for (auto& [y, p] : entries) {
            std::int32_t yi = ball_->find(y);
            if (yi < 0) fail(errc::cache_corrupt, "element outside W' ball: " + to_string(y));
            const int d = col->length - ball_->len(yi);
            if (yi != wi && d % 2 == 1 && static_cast<int>(p.size()) - 1 == (d - 1) / 2) col->mu.push_back({yi, p.back()});
            col->entries.emplace_back(yi, std::move(p));
        }
        std::sort(col->entries.begin(), col->entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::sort(col->mu.begin(), col->mu.end());
        if (columns_.size() <= static_cast<std::size_t>(wi)) columns_.resize(static_cast<std::size_t>(wi) + 1);
        columns_[static_cast<std::size_t>(wi)] = std::move(col);
    }
    return records;
}

KLPoly kl_polynomial(const AffinePerm& y, const AffinePerm& w, KLStore& store) { return store.polynomial(y, w); }

std::shared_ptr<const HeckeProduct> c_product(const AffinePerm& w, const AffinePerm& u, KLStore& store) {
    return store.product(w, u);
}

std::int64_t a_value(const AffinePerm& w) {
    std::int64_t a = 0;
    for (int part : lambda_partition(w)) a += static_cast<std::int64_t>(part) * (part - 1) / 2;
    return a;
}

std::int64_t gamma_from_h(const LaurentPoly& h, std::int64_t a) {
    if (h.is_zero()) return 0;
    if (h.degree() > a)
        fail(errc::degree_violation, "h = " + h.to_string() + " has degree above a = " + std::to_string(a));
    return h.coeff(static_cast<int>(a));
}

std::int64_t gamma_oracle(const AffinePerm& w, const AffinePerm& u, const AffinePerm& v, KLStore& store) {
    auto prod = store.product(w, u);
    const LaurentPoly* h = prod->find(v);
    if (!h) return 0;
    return gamma_from_h(*h, a_value(v));
}

// ---------------------------------------------------------------------------
// Sparse elements

void HeckeElement::add(const AffinePerm& w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

HeckeElement t_basis(const AffinePerm& w) {
    HeckeElement e;
    e.add(w, LaurentPoly(1));
    return e;
}

HeckeElement t_times_simple(const HeckeElement& x, int k) {
    if (x.basis != Basis::T) fail(errc::precondition_violated, "T-basis element expected");
    HeckeElement out;
    const LaurentPoly q2 = LaurentPoly::monomial(1, 2);
    const LaurentPoly q2m1 = LaurentPoly::monomial(1, 2) - LaurentPoly(1);
    for (const auto& [w, c] : x.terms) {
        AffinePerm ws = right_mul_simple(w, k);
        if (!has_right_descent(w, k)) {
            out.add(ws, c);
        } else {
            out.add(w, c * q2m1);
            out.add(ws, c * q2);
        }
    }
    return out;
}

HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b) {
    if (a.basis != Basis::T || b.basis != Basis::T) fail(errc::precondition_violated, "T-basis elements expected");
    HeckeElement out;
    for (const auto& [z, cz] : b.terms) {
        Word word = reduced_word(z);
        HeckeElement cur;
        AffinePerm om = omega_power(z.rank(), word.omega_power);
        for (const auto& [y, cy] : a.terms) cur.add(multiply(y, om), cy * cz);
        for (int k : word.letters) cur = t_times_simple(cur, k);
        for (const auto& [y, cy] : cur.terms) out.add(y, cy);
    }
    return out;
}

HeckeElement c_in_t_basis(const AffinePerm& w, KLStore& store) {
    HeckeElement out;
    const int lw = static_cast<int>(length(w));
    for (const auto& [y, p] : store.column(w)) out.add(y, kl_to_laurent(p).shifted(-lw));
    return out;
}

HeckeElement to_t_basis(const HeckeElement& x, KLStore& store) {
    if (x.basis == Basis::T) return x;
    HeckeElement out;
    for (const auto& [w, c] : x.terms)
        for (const auto& [y, cy] : c_in_t_basis(w, store).terms) out.add(y, c * cy);
    return out;
}

HeckeElement to_c_basis(const HeckeElement& x, KLStore& store) {
    if (x.basis == Basis::C) return x;
    HeckeElement rest = x;
    HeckeElement out;
    out.basis = Basis::C;
    while (!rest.terms.empty()) {
        auto top = std::max_element(rest.terms.begin(), rest.terms.end(), [](const auto& p, const auto& q) {
            auto lp = length(p.first), lq = length(q.first);
            if (lp != lq) return lp < lq;
            return q.first < p.first; // lexicographically smallest window wins ties
        });
        AffinePerm y = top->first;
        LaurentPoly h = top->second.shifted(static_cast<int>(length(y)));
        out.add(y, h);
        for (const auto& [z, cz] : c_in_t_basis(y, store).terms) rest.add(z, -(h * cz));
    }
    return out;
}

HeckeElement bar_involution(const HeckeElement& x) {
    if (x.basis != Basis::T) fail(errc::precondition_violated, "T-basis element expected");
    HeckeElement out;
    for (const auto& [w, c] : x.terms) {
        // T_{w^{-1}}^{-1} = T_{omega^k} T_{s_1}^{-1} ... T_{s_l}^{-1} for w = omega^k s_1 ... s_l
        Word word = reduced_word(w);
        HeckeElement cur = t_basis(omega_power(w.rank(), word.omega_power));
        const LaurentPoly qm2 = LaurentPoly::monomial(1, -2);
        const LaurentPoly qm2m1 = LaurentPoly::monomial(1, -2) - LaurentPoly(1);
        for (int k : word.letters) {
            // X T_s^{-1} = q^{-2} X T_s + (q^{-2} - 1) X
            HeckeElement next = t_times_simple(cur, k);
            HeckeElement combined;
            for (const auto& [y, cy] : next.terms) combined.add(y, cy * qm2);
            for (const auto& [y, cy] : cur.terms) combined.add(y, cy * qm2m1);
            cur = std::move(combined);
        }
        for (const auto& [y, cy] : cur.terms) out.add(y, c.bar() * cy);
    }
    return out;
}

} // namespace affine_cells
