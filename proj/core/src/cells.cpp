#include "affine_cells/cells.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <set>

#include "affine_cells/error.hpp"
#include "affine_cells/hecke.hpp"

namespace affine_cells {

namespace {

bool distinct_residues(const std::vector<entry_t>& positions, int n) {
    std::set<entry_t> seen;
    for (entry_t p : positions)
        if (!seen.insert(residue1(p, n)).second) return false;
    return true;
}

bool strictly_increasing(const std::vector<entry_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return true;
}

// Per subset of {1..n} (bit k-1 for position k): is it a d-antichain?
std::vector<char> antichain_table(const AffinePerm& w) {
    const int n = w.rank();
    const std::uint32_t full = 1u << n;
    std::vector<char> ok(full, 0);
    ok[0] = 1;
    for (std::uint32_t s = 1; s < full; ++s) {
        entry_t first = 0, prev = 0, last = 0;
        bool good = true, started = false;
        for (int k = 0; k < n && good; ++k) {
            if (!(s >> k & 1u)) continue;
            entry_t v = w[k + 1];
            if (!started) {
                first = v;
                started = true;
            } else if (v <= prev) {
                good = false;
            }
            prev = last = v;
        }
        ok[s] = good && last - n < first;
    }
    return ok;
}

// Minimum number of d-antichains covering each subset.
std::vector<int> cover_table(const std::vector<char>& anti, int n) {
    const std::uint32_t full = 1u << n;
    std::vector<int> cover(full, INT_MAX);
    cover[0] = 0;
    for (std::uint32_t s = 1; s < full; ++s) {
        const std::uint32_t low = s & (~s + 1);
        const std::uint32_t rest = s ^ low;
        // submasks t of s that contain the lowest bit
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t t = sub | low;
            if (anti[t] && cover[s ^ t] != INT_MAX) cover[s] = std::min(cover[s], cover[s ^ t] + 1);
            if (sub == 0) break;
        }
    }
    return cover;
}

// Lengths of the rows of the RSK insertion tableau of a sequence.
Partition rsk_shape(const std::vector<entry_t>& seq) {
    std::vector<std::vector<entry_t>> rows;
    for (entry_t x : seq) {
        entry_t cur = x;
        std::size_t r = 0;
        for (;; ++r) {
            if (r == rows.size()) {
                rows.push_back({cur});
                break;
            }
            auto it = std::upper_bound(rows[r].begin(), rows[r].end(), cur);
            if (it == rows[r].end()) {
                rows[r].push_back(cur);
                break;
            }
            std::swap(*it, cur);
        }
    }
    Partition shape;
    for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
    return shape;
}

} // namespace

bool is_d_antichain(const AffinePerm& w, const std::vector<entry_t>& positions) {
    if (positions.empty()) return true;
    if (!strictly_increasing(positions) || !distinct_residues(positions, w.rank())) return false;
    std::vector<entry_t> vals;
    for (entry_t p : positions) vals.push_back(w(p));
    return strictly_increasing(vals) && vals.back() - w.rank() < vals.front();
}

bool is_d_chain(const AffinePerm& w, const std::vector<entry_t>& positions) {
    if (!strictly_increasing(positions) || !distinct_residues(positions, w.rank())) return false;
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (w(positions[i - 1]) <= w(positions[i])) return false;
    return true;
}

Partition mu_partition(const AffinePerm& w) {
    const int n = w.rank();
    if (n > 20) fail(errc::limit_exceeded, "antichain cover search limited to n <= 20");
    auto cover = cover_table(antichain_table(w), n);
    std::vector<int> best(static_cast<std::size_t>(n) + 1, 0); // best[q] = d'_q
    for (std::uint32_t s = 0; s < cover.size(); ++s) {
        int size = std::popcount(s);
        for (int q = cover[s]; q <= n; ++q) best[static_cast<std::size_t>(q)] = std::max(best[static_cast<std::size_t>(q)], size);
    }
    Partition mu;
    for (int q = 1; q <= n; ++q) {
        int part = best[static_cast<std::size_t>(q)] - best[static_cast<std::size_t>(q - 1)];
        if (part == 0) break;
        mu.push_back(part);
    }
    return mu;
}

Partition lambda_partition(const AffinePerm& w) { return dual(mu_partition(w)); }

std::vector<std::vector<int>> complete_antichain_family(const AffinePerm& w) {
    const int n = w.rank();
    auto anti = antichain_table(w);
    auto cover = cover_table(anti, n);
    Partition mu = mu_partition(w);
    std::multiset<int> sizes(mu.begin(), mu.end());
    std::vector<std::uint32_t> chosen;
    std::function<bool(std::uint32_t)> search = [&](std::uint32_t s) -> bool {
        if (s == 0) return sizes.empty();
        if (cover[s] > static_cast<int>(sizes.size())) return false;
        const std::uint32_t low = s & (~s + 1);
        const std::uint32_t rest = s ^ low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t t = sub | low;
            auto it = sizes.find(std::popcount(t));
            if (anti[t] && it != sizes.end()) {
                sizes.erase(it);
                chosen.push_back(t);
                if (search(s ^ t)) return true;
                chosen.pop_back();
                sizes.insert(std::popcount(t));
            }
            if (sub == 0) break;
        }
        return false;
    };
    if (!search((1u << n) - 1)) fail(errc::precondition_violated, "no complete antichain family for " + to_string(w));
    std::vector<std::vector<int>> blocks;
    for (std::uint32_t t : chosen) {
        std::vector<int> b;
        for (int k = 0; k < n; ++k)
            if (t >> k & 1u) b.push_back(k + 1);
        blocks.push_back(std::move(b));
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return blocks;
}

ChainOracleResult lambda_by_chains(const AffinePerm& w) {
    const int n = w.rank();
    entry_t max_disp = 0;
    for (int i = 1; i <= n; ++i) max_disp = std::max(max_disp, w[i] - i < 0 ? i - w[i] : w[i] - i);
    const int limit = static_cast<int>(2 * (max_disp / n + n));

    auto best_for_width = [&](int width) {
        std::vector<int> d(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> shift(static_cast<std::size_t>(n), -width);
        shift[0] = 0;
        std::vector<std::pair<entry_t, entry_t>> pts(static_cast<std::size_t>(n));
        std::vector<entry_t> seq(static_cast<std::size_t>(n));
        while (true) {
            for (int i = 0; i < n; ++i) {
                entry_t p = i + 1 + static_cast<entry_t>(shift[static_cast<std::size_t>(i)]) * n;
                pts[static_cast<std::size_t>(i)] = {p, w(p)};
            }
            std::sort(pts.begin(), pts.end());
            for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].second;
            // decreasing subsequences correspond to columns of the RSK shape
            Partition cols = dual(rsk_shape(seq));
            int acc = 0;
            for (int q = 1; q <= n; ++q) {
                if (q <= static_cast<int>(cols.size())) acc += cols[static_cast<std::size_t>(q - 1)];
                d[static_cast<std::size_t>(q)] = std::max(d[static_cast<std::size_t>(q)], acc);
            }
            int k = 1;
            while (k < n && shift[static_cast<std::size_t>(k)] == width) shift[static_cast<std::size_t>(k++)] = -width;
            if (k >= n) break;
            ++shift[static_cast<std::size_t>(k)];
        }
        return d;
    };

    ChainOracleResult res;
    auto prev = best_for_width(0);
    for (int width = 1; width <= limit; ++width) {
        auto cur = best_for_width(width);
        res.width = width;
        if (cur == prev) {
            res.converged = true;
            break;
        }
        prev = std::move(cur);
    }
    for (int q = 1; q <= n; ++q) {
        int part = prev[static_cast<std::size_t>(q)] - prev[static_cast<std::size_t>(q - 1)];
        if (part == 0) break;
        res.lambda.push_back(part);
    }
    return res;
}

bool in_DR(const AffinePerm& w, int i) {
    const int n = w.rank();
    if (n < 3) fail(errc::rank_too_small, "star operations need n >= 3");
    int a = static_cast<int>(residue1(i, n) % n);
    int b = (a + 1) % n;
    return has_right_descent(w, a) != has_right_descent(w, b);
}

bool in_DL(const AffinePerm& w, int i) { return in_DR(inverse(w), i); }

AffinePerm right_star(const AffinePerm& w, int i) {
    if (!in_DR(w, i)) fail(errc::not_in_star_domain, to_string(w) + " is not in the right star domain for index " + std::to_string(i));
    const int n = w.rank();
    const int a = static_cast<int>(residue1(i, n) % n);
    const entry_t x = w(a), y = w(a + 1), z = w(a + 2);
    auto between = [](entry_t v, entry_t p, entry_t q) { return (p < v && v < q) || (q < v && v < p); };
    if (between(x, y, z)) return right_mul_simple(w, (a + 1) % n);
    if (between(z, x, y)) return right_mul_simple(w, a);
    fail(errc::not_in_star_domain, "no star case applies");
}

AffinePerm left_star(const AffinePerm& w, int i) { return inverse(right_star(inverse(w), i)); }

std::uint64_t n_mu(const Partition& lambda) {
    Partition mu = dual(lambda);
    // multinomial as a product of binomials
    unsigned __int128 result = 1;
    int total = 0;
    for (int part : mu) {
        for (int k = 1; k <= part; ++k) {
            // result *= (total + k) / k, exact at every step
            result = result * static_cast<unsigned>(total + k) / static_cast<unsigned>(k);
            if (result > UINT64_MAX) fail(errc::overflow, "n_mu exceeds 64 bits");
        }
        total += part;
    }
    return static_cast<std::uint64_t>(result);
}

namespace {

std::vector<int> scc_classes(const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(adj.size());
    std::vector<int> index(static_cast<std::size_t>(m), -1), low(static_cast<std::size_t>(m), 0), comp(static_cast<std::size_t>(m), -1);
    std::vector<char> on(static_cast<std::size_t>(m), 0);
    std::vector<int> stack;
    int counter = 0, comps = 0;
    std::function<void(int)> strong = [&](int v) {
        index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        stack.push_back(v);
        on[static_cast<std::size_t>(v)] = 1;
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (index[static_cast<std::size_t>(u)] < 0) {
                strong(u);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(u)]);
            } else if (on[static_cast<std::size_t>(u)]) {
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(u)]);
            }
        }
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
            while (true) {
                int u = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(u)] = 0;
                comp[static_cast<std::size_t>(u)] = comps;
                if (u == v) break;
            }
            ++comps;
        }
    };
    for (int v = 0; v < m; ++v)
        if (index[static_cast<std::size_t>(v)] < 0) strong(v);
    // renumber by first appearance
    std::map<int, int> renum;
    for (int& c : comp) {
        auto [it, inserted] = renum.emplace(c, static_cast<int>(renum.size()));
        c = it->second;
    }
    return comp;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

CellBall cell_ball(int n, int max_length, KLStore& store) {
    if (store.rank() != n) fail(errc::rank_mismatch, "store rank differs");
    if (max_length > store.budget()) fail(errc::limit_exceeded, "cell ball radius above KL budget");
    CellBall ball;
    std::map<AffinePerm, int> index;
    std::vector<AffinePerm> frontier{AffinePerm::identity(n)};
    ball.elements.push_back(frontier.front());
    for (int l = 0; l < max_length; ++l) {
        std::set<AffinePerm> next;
        for (const auto& x : frontier)
            for (int s = 0; s < n; ++s)
                if (!has_right_descent(x, s)) next.insert(right_mul_simple(x, s));
        frontier.assign(next.begin(), next.end());
        ball.elements.insert(ball.elements.end(), frontier.begin(), frontier.end());
    }
    std::sort(ball.elements.begin(), ball.elements.end(), length_lex_less);
    for (std::size_t i = 0; i < ball.elements.size(); ++i) index.emplace(ball.elements[i], static_cast<int>(i));

    const auto m = ball.elements.size();
    std::vector<std::vector<int>> ldesc(m), rdesc(m);
    for (std::size_t i = 0; i < m; ++i) {
        ldesc[i] = left_descents(ball.elements[i]);
        rdesc[i] = right_descents(ball.elements[i]);
    }
    std::vector<std::vector<int>> left(m), right(m), both(m);
    auto link = [&](int x, int y) {
        // x and y joined by a nonzero mu
        for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
            bool l = !subset_of(ldesc[static_cast<std::size_t>(a)], ldesc[static_cast<std::size_t>(b)]);
            bool r = !subset_of(rdesc[static_cast<std::size_t>(a)], rdesc[static_cast<std::size_t>(b)]);
            if (l) left[static_cast<std::size_t>(a)].push_back(b);
            if (r) right[static_cast<std::size_t>(a)].push_back(b);
            if (l || r) both[static_cast<std::size_t>(a)].push_back(b);
        }
    };
    for (std::size_t j = 0; j < m; ++j) {
        const AffinePerm& w = ball.elements[j];
        const auto lw = length(w);
        for (const auto& [y, p] : store.column(w)) {
            const auto d = lw - length(y);
            if (d % 2 == 0 || static_cast<std::int64_t>(p.size()) - 1 != (d - 1) / 2) continue;
            link(index.at(y), static_cast<int>(j));
        }
    }
    ball.left_class = scc_classes(left);
    ball.right_class = scc_classes(right);
    ball.two_sided_class = scc_classes(both);
    auto count = [](const std::vector<int>& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; };
    ball.left_count = count(ball.left_class);
    ball.right_count = count(ball.right_class);
    ball.two_sided_count = count(ball.two_sided_class);
    return ball;
}

} // namespace affine_cells
