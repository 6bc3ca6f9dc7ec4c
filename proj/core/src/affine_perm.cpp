#include "affine_cells/affine_perm.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace affine_cells {

const char* errc_name(errc code) {
    switch (code) {
    case errc::residue_clash: return "ResidueClash";
    case errc::sum_not_divisible: return "SumNotDivisible";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::rank_too_small: return "RankTooSmall";
    case errc::parse_error: return "ParseError";
    case errc::overflow: return "Overflow";
    case errc::limit_exceeded: return "LimitExceeded";
    case errc::degree_violation: return "DegreeViolation";
    case errc::not_in_star_domain: return "NotInStarDomain";
    case errc::not_admissible: return "NotAdmissible";
    case errc::not_member: return "NotMember";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::not_dominant: return "NotDominant";
    case errc::empty_subset: return "EmptySubset";
    case errc::negative_degree: return "NegativeDegree";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_in_subring: return "NotInSubring";
    case errc::cache_corrupt: return "CacheCorrupt";
    }
    return "Unknown";
}

namespace {

entry_t checked_add(entry_t a, entry_t b) {
    entry_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "window entry overflow");
    return r;
}

entry_t checked_mul(entry_t a, entry_t b) {
    entry_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "window entry overflow");
    return r;
}

void require_same_rank(const AffinePerm& a, const AffinePerm& b) {
    if (a.rank() != b.rank())
        fail(errc::rank_mismatch, "ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
}

} // namespace

entry_t floor_div(entry_t a, entry_t b) {
    entry_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

entry_t residue1(entry_t a, entry_t n) { return a - floor_div(a - 1, n) * n; }

AffinePerm AffinePerm::from_window(int n, std::span<const entry_t> window) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    if (window.size() != static_cast<std::size_t>(n))
        fail(errc::length_mismatch, "window has " + std::to_string(window.size()) + " entries, expected " + std::to_string(n));
    entry_t displacement = 0;
    for (int i = 1; i <= n; ++i) displacement = checked_add(displacement, window[static_cast<std::size_t>(i - 1)] - i);
    if (displacement % n != 0)
        fail(errc::sum_not_divisible, "displacement sum " + std::to_string(displacement) + " is not divisible by " + std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (entry_t v : window) {
        auto r = static_cast<std::size_t>(residue1(v, n));
        if (seen[r]) fail(errc::residue_clash, "two entries are congruent to " + std::to_string(r) + " mod " + std::to_string(n));
        seen[r] = 1;
    }
    return from_trusted(n, window_t(window.begin(), window.end()));
}

AffinePerm AffinePerm::from_trusted(int n, window_t window) {
    AffinePerm w;
    w.n_ = n;
    w.window_ = std::move(window);
    return w;
}

AffinePerm AffinePerm::identity(int n) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    window_t win(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) win[static_cast<std::size_t>(i)] = i + 1;
    return from_trusted(n, std::move(win));
}

entry_t AffinePerm::operator()(entry_t k) const {
    entry_t q = floor_div(k - 1, n_);
    entry_t i = k - q * n_;
    return checked_add(window_[static_cast<std::size_t>(i - 1)], checked_mul(q, n_));
}

bool AffinePerm::is_identity() const noexcept {
    for (int i = 0; i < n_; ++i)
        if (window_[static_cast<std::size_t>(i)] != i + 1) return false;
    return true;
}

bool operator<(const AffinePerm& a, const AffinePerm& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return std::lexicographical_compare(a.window_.begin(), a.window_.end(), b.window_.begin(), b.window_.end());
}

std::size_t AffinePerm::hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ULL;
    for (entry_t v : window_) {
        h ^= std::hash<entry_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

AffinePerm simple(int n, int i) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    int k = static_cast<int>(residue1(i, n)) % n;
    window_t win(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) win[static_cast<std::size_t>(j)] = j + 1;
    if (k == 0) {
        win[0] = 0;
        win[static_cast<std::size_t>(n - 1)] = n + 1;
    } else {
        std::swap(win[static_cast<std::size_t>(k - 1)], win[static_cast<std::size_t>(k)]);
    }
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm omega(int n) { return omega_power(n, 1); }

AffinePerm omega_power(int n, entry_t k) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    window_t win(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) win[static_cast<std::size_t>(j)] = checked_add(j + 1, k);
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm tau(int n, int i) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    if (i < 1 || i > n) fail(errc::index_out_of_range, "tau index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    window_t win(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) win[static_cast<std::size_t>(j)] = j + 1;
    win[static_cast<std::size_t>(i - 1)] += n;
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm dominant_generator(int n, int i) {
    if (n < 2) fail(errc::rank_too_small, "rank must be at least 2");
    if (i < 1 || i > n) fail(errc::index_out_of_range, "x index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    window_t win(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) win[static_cast<std::size_t>(j - 1)] = j <= i ? j + n : j;
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm multiply(const AffinePerm& a, const AffinePerm& b) {
    require_same_rank(a, b);
    int n = a.rank();
    window_t win(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) win[static_cast<std::size_t>(i - 1)] = a(b[i]);
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm inverse(const AffinePerm& a) {
    int n = a.rank();
    window_t win(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        entry_t v = a[i];
        entry_t q = floor_div(v - 1, n);
        entry_t r = v - q * n;
        win[static_cast<std::size_t>(r - 1)] = checked_add(i, -checked_mul(q, n));
    }
    return AffinePerm::from_trusted(n, std::move(win));
}

entry_t apply(const AffinePerm& a, entry_t k) { return a(k); }

AffinePerm power(const AffinePerm& a, entry_t k) {
    AffinePerm base = k < 0 ? inverse(a) : a;
    entry_t e = k < 0 ? -k : k;
    AffinePerm result = AffinePerm::identity(a.rank());
    while (e > 0) {
        if (e & 1) result = multiply(result, base);
        e >>= 1;
        if (e > 0) base = multiply(base, base);
    }
    return result;
}

AffinePerm right_mul_simple(const AffinePerm& w, int k) {
    int n = w.rank();
    k = static_cast<int>(residue1(k, n)) % n;
    window_t win = w.window();
    if (k == 0) {
        entry_t first = win[0];
        entry_t last = win[static_cast<std::size_t>(n - 1)];
        win[0] = last - n;
        win[static_cast<std::size_t>(n - 1)] = first + n;
    } else {
        std::swap(win[static_cast<std::size_t>(k - 1)], win[static_cast<std::size_t>(k)]);
    }
    return AffinePerm::from_trusted(n, std::move(win));
}

AffinePerm left_mul_simple(int k, const AffinePerm& w) {
    int n = w.rank();
    k = static_cast<int>(residue1(k, n)) % n;
    entry_t lo = k == 0 ? n : k; // residue of the smaller swapped value
    entry_t hi = k == 0 ? 1 : k + 1;
    window_t win = w.window();
    for (auto& v : win) {
        entry_t r = residue1(v, n);
        if (r == lo) v += 1;
        else if (r == hi) v -= 1;
    }
    return AffinePerm::from_trusted(n, std::move(win));
}

std::int64_t length(const AffinePerm& w) {
    int n = w.rank();
    std::int64_t total = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            entry_t f = floor_div(w[j] - w[i], n);
            total += f < 0 ? -f : f;
        }
    return total;
}

bool has_right_descent(const AffinePerm& w, int k) {
    int n = w.rank();
    k = static_cast<int>(residue1(k, n)) % n;
    if (k == 0) return w[n] - n > w[1];
    return w[k] > w[k + 1];
}

bool has_left_descent(const AffinePerm& w, int k) { return has_right_descent(inverse(w), k); }

std::vector<int> right_descents(const AffinePerm& w) {
    std::vector<int> out;
    for (int k = 0; k < w.rank(); ++k)
        if (has_right_descent(w, k)) out.push_back(k);
    return out;
}

std::vector<int> left_descents(const AffinePerm& w) { return right_descents(inverse(w)); }

entry_t omega_exponent(const AffinePerm& w) {
    entry_t total = 0;
    for (int i = 1; i <= w.rank(); ++i) total = checked_add(total, w[i] - i);
    return total / w.rank();
}

AffinePerm wprime_part(const AffinePerm& w) {
    entry_t k = omega_exponent(w);
    window_t win = w.window();
    for (auto& v : win) v -= k;
    return AffinePerm::from_trusted(w.rank(), std::move(win));
}

Word reduced_word(const AffinePerm& w) {
    Word word;
    AffinePerm cur = w;
    std::vector<int> peeled;
    for (;;) {
        int found = -1;
        for (int k = 0; k < cur.rank(); ++k)
            if (has_right_descent(cur, k)) {
                found = k;
                break;
            }
        if (found < 0) break;
        peeled.push_back(found);
        cur = right_mul_simple(cur, found);
    }
    word.omega_power = omega_exponent(cur);
    word.letters.assign(peeled.rbegin(), peeled.rend());
    return word;
}

AffinePerm evaluate(int n, const Word& word) {
    AffinePerm w = omega_power(n, word.omega_power);
    for (int k : word.letters) {
        if (k < 0 || k >= n) fail(errc::index_out_of_range, "simple letter " + std::to_string(k) + " outside 0.." + std::to_string(n - 1));
        w = right_mul_simple(w, k);
    }
    return w;
}

bool bruhat_leq(const AffinePerm& y, const AffinePerm& w) {
    require_same_rank(y, w);
    if (omega_exponent(y) != omega_exponent(w)) return false;
    AffinePerm a = wprime_part(y);
    AffinePerm b = wprime_part(w);
    if (length(a) > length(b)) return false;
    // Walk down w by left descents; y follows whenever it shares the descent.
    while (!b.is_identity()) {
        int s = left_descents(b).front();
        if (has_left_descent(a, s)) a = left_mul_simple(s, a);
        b = left_mul_simple(s, b);
    }
    return a.is_identity();
}

const std::vector<AffinePerm>& lower_interval(const AffinePerm& w) {
    static std::mutex mu;
    static std::unordered_map<AffinePerm, std::vector<AffinePerm>, AffinePermHash> memo;

    std::function<const std::vector<AffinePerm>&(const AffinePerm&)> rec = [&](const AffinePerm& x) -> const std::vector<AffinePerm>& {
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        std::vector<AffinePerm> out;
        AffinePerm xp = wprime_part(x);
        if (xp.is_identity()) {
            out.push_back(x);
        } else {
            int s = left_descents(xp).front();
            const auto& below = rec(left_mul_simple(s, x));
            std::unordered_set<AffinePerm, AffinePermHash> seen(below.begin(), below.end());
            out = below;
            for (const auto& y : below) {
                AffinePerm sy = left_mul_simple(s, y);
                if (seen.insert(sy).second) out.push_back(sy);
            }
            std::sort(out.begin(), out.end(), length_lex_less);
        }
        return memo.emplace(x, std::move(out)).first->second;
    };

    std::lock_guard lock(mu);
    return rec(w);
}

std::string to_string(const AffinePerm& w) {
    std::string s = "[";
    for (int i = 1; i <= w.rank(); ++i) {
        if (i > 1) s += ',';
        s += std::to_string(w[i]);
    }
    s += ']';
    return s;
}

std::string to_string(const Word& word) {
    std::string s;
    if (word.omega_power != 0) s = "w^" + std::to_string(word.omega_power);
    for (int k : word.letters) {
        if (!s.empty()) s += '.';
        s += 's' + std::to_string(k);
    }
    return s.empty() ? "e" : s;
}

namespace {

std::string_view trim(std::string_view t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t' || t.front() == '\n' || t.front() == '\r')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\n' || t.back() == '\r')) t.remove_suffix(1);
    return t;
}

entry_t parse_int(std::string_view t, std::string_view context) {
    t = trim(t);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    entry_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        fail(errc::parse_error, "bad integer '" + std::string(t) + "' in " + std::string(context));
    return v;
}

} // namespace

AffinePerm parse_window(std::string_view text, int n) {
    std::string_view t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        fail(errc::parse_error, "window must look like [a1,...,an]: '" + std::string(text) + "'");
    t = t.substr(1, t.size() - 2);
    std::vector<entry_t> vals;
    if (!trim(t).empty()) {
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = t.find(',', start);
            vals.push_back(parse_int(t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), text));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    if (n == 0) n = static_cast<int>(vals.size());
    return AffinePerm::from_window(n, vals);
}

Word parse_word(std::string_view text) {
    std::string_view t = trim(text);
    Word word;
    if (t.empty() || t == "e") return word;
    std::size_t start = 0;
    bool first = true;
    for (;;) {
        std::size_t dot = t.find('.', start);
        std::string_view tok = trim(t.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        if (tok.size() >= 2 && tok[0] == 'w' && tok[1] == '^') {
            if (!first) fail(errc::parse_error, "omega power must come first in '" + std::string(text) + "'");
            word.omega_power = parse_int(tok.substr(2), text);
        } else if (tok.size() >= 2 && tok[0] == 's') {
            auto k = parse_int(tok.substr(1), text);
            if (k < 0) fail(errc::parse_error, "negative simple letter in '" + std::string(text) + "'");
            word.letters.push_back(static_cast<int>(k));
        } else {
            fail(errc::parse_error, "bad word token '" + std::string(tok) + "'");
        }
        first = false;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return word;
}

bool length_lex_less(const AffinePerm& a, const AffinePerm& b) {
    auto la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a < b;
}

} // namespace affine_cells
