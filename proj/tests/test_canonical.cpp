#include <doctest.h>

#include <algorithm>
#include <set>

#include "affine_cells/canonical.hpp"
#include "affine_cells/cells.hpp"
#include "support.hpp"

using namespace affine_cells;
using test_support::uniform;

namespace {

DominantWeight random_weight(const GroupShape& shape, entry_t lo, entry_t hi) {
    DominantWeight x;
    for (const auto& c : shape.classes) {
        std::vector<entry_t> v(static_cast<std::size_t>(c.size));
        for (auto& e : v) e = uniform(lo, hi);
        std::sort(v.rbegin(), v.rend());
        x.classes.push_back(std::move(v));
    }
    return x;
}

// Positions (i, j) in lexicographic order.
std::vector<std::pair<int, int>> positions(const GroupShape& shape) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= shape.classes_count(); ++i)
        for (int j = 1; j <= shape.classes[static_cast<std::size_t>(i - 1)].size; ++j) out.emplace_back(i, j);
    return out;
}

entry_t& comp(DominantWeight& x, int i, int j) {
    return x.classes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

// s_i s_{i+1} ... s_j
AffinePerm segment(int n, int i, int j) {
    AffinePerm w = AffinePerm::identity(n);
    for (int k = i; k <= j; ++k) w = right_mul_simple(w, k);
    return w;
}

// m_I from the factorization x_I x_{a_1}^{-1} w_k ... w_2 omega^{a_1}.
AffinePerm m_by_product(int n, const std::vector<int>& subset) {
    std::vector<int> a(subset);
    std::sort(a.begin(), a.end());
    const int k = static_cast<int>(a.size());
    AffinePerm xi = AffinePerm::identity(n);
    for (int i : a) xi = multiply(xi, dominant_generator(n, i));
    AffinePerm z = multiply(xi, inverse(dominant_generator(n, a[0])));
    for (int i = k; i >= 2; --i) {
        const int hi = a[static_cast<std::size_t>(i - 1)], lo = a[static_cast<std::size_t>(i - 2)];
        for (int t = 0; t < hi - lo; ++t) z = multiply(z, segment(n, hi - t, n - 1 - t));
    }
    return multiply(z, omega_power(n, a[0]));
}

std::multiset<entry_t> translation_multiset(const AffinePerm& w) {
    std::multiset<entry_t> out;
    for (int i = 1; i <= w.rank(); ++i) out.insert(floor_div(w[i] - 1, w.rank()));
    return out;
}

} // namespace

TEST_CASE("w_lambda and membership") {
    CHECK(to_string(w_lambda({2, 1})) == "[2,1,3]");
    CHECK(w_lambda({1, 1, 1, 1}).is_identity());
    CHECK(to_string(w_lambda({4})) == "[4,3,2,1]");
    for (int n = 2; n <= 6; ++n)
        for (const auto& lam : partitions_of(n)) {
            auto w = w_lambda(lam);
            std::int64_t expected = 0;
            for (int p : lam) expected += p * (p - 1) / 2;
            REQUIRE(length(w) == expected);
            REQUIRE(is_member(w, lam));
            for (int k = -2; k <= 2; ++k) REQUIRE(is_member(multiply(omega_power(n, k * n), w), lam));
        }
    CHECK_FALSE(is_member(parse_window("[6,3,10,7,8,11]"), {2, 2, 1, 1}));
}

TEST_CASE("greedy grid example") {
    const Partition lam{4, 3, 2, 2};
    const std::vector<std::vector<entry_t>> rows{{11, 7, 4, 3}, {12, 6, 5}, {10, 8}, {14, 9}};
    auto grid = greedy_epsilon_grid(lam, rows);
    CHECK(grid.at(4, 3, 1) == 14);
    CHECK(grid.at(3, 3, 1) == 10);
    CHECK(grid.at(2, 3, 1) == 6);
    CHECK(grid.at(1, 3, 1) == 4);
    CHECK(grid.at(4, 3, 2) == 9);
    CHECK(grid.at(3, 3, 2) == 8);
    CHECK(grid.at(2, 3, 2) == 5);
    CHECK(grid.at(1, 3, 2) == 3);
    CHECK(grid.at(2, 2, 1) == 12);
    CHECK(grid.at(1, 2, 1) == 11);
    CHECK(grid.at(1, 1, 1) == 7);
    auto shape = GroupShape::of(lam);
    CHECK(to_string(weight_from_grid(shape, grid, 11)) == "(0)(1)(1,0)");
    CHECK_THROWS_AS(check_admissible(lam, {{11, 7, 4, 3}, {12, 6, 5}, {10, 8}, {9, 14}}), error);
}

TEST_CASE("weight text and json forms") {
    auto x = parse_weight("(0)(1)(1,0)");
    CHECK(to_string(x) == "(0)(1)(1,0)");
    CHECK(to_json(x) == "[[0],[1],[1,0]]");
    CHECK(to_string(dual_weight(parse_weight("(2,0)"))) == "(0,-2)");
    CHECK_THROWS_AS(check_weight(parse_weight("(0,1)"), GroupShape::of({2})), error);
    CHECK_THROWS_AS(check_weight(parse_weight("(0)"), GroupShape::of({2})), error);
}

TEST_CASE("grid of w_lambda and partition property") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& lam : partitions_of(n)) {
            auto w = w_lambda(lam);
            CHECK(epsilon(w, lam) == zero_weight(GroupShape::of(lam)));
            CHECK(from_epsilon(lam, zero_weight(GroupShape::of(lam))) == w);
        }
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(uniform(2, 6));
        auto parts = partitions_of(n);
        const auto& lam = parts[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(parts.size()) - 1))];
        auto shape = GroupShape::of(lam);
        auto w = from_epsilon(lam, random_weight(shape, -3, 3));
        auto grid = epsilon_grid(w, lam);
        std::multiset<entry_t> picked, window(w.window().begin(), w.window().end());
        for (std::size_t i = 0; i < grid.passes.size(); ++i)
            for (const auto& pass : grid.passes[i]) {
                std::vector<entry_t> values;
                for (const auto& e : pass) {
                    picked.insert(e.value);
                    values.push_back(e.value);
                }
                REQUIRE(static_cast<int>(pass.size()) == shape.classes[i].antichain_length);
                std::sort(values.begin(), values.end());
                REQUIRE(is_d_antichain(inverse(w), values));
            }
        REQUIRE(picked == window);
        auto diag = conjecture_diagnostic(w, lam);
        for (const auto& cls : diag.shifted_grid)
            for (std::size_t j = 0; j + 1 < cls.size(); ++j)
                for (std::size_t k = 0; k < cls[j].size(); ++k) REQUIRE(cls[j][k] >= cls[j + 1][k]);
    }
}

TEST_CASE("epsilon on explicit families") {
    // lambda = (n): w_0 x_1^{a_1} ... x_n^{a_n}
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<entry_t> a(static_cast<std::size_t>(n));
            for (auto& e : a) e = uniform(0, 2);
            auto w = multiply(w_lambda({n}), dominant_monomial(n, a));
            DominantWeight expected{{std::vector<entry_t>(static_cast<std::size_t>(n))}};
            entry_t tail = 0;
            for (int i = n; i >= 1; --i) {
                tail += a[static_cast<std::size_t>(i - 1)];
                expected.classes[0][static_cast<std::size_t>(i - 1)] = tail;
            }
            REQUIRE(is_member(w, {n}));
            REQUIRE(epsilon(w, {n}) == expected);
            REQUIRE(from_epsilon({n}, expected) == w);
        }
    }
    // lambda = (2,1,...,1): omega^{an} s_1 (omega s_1)^b
    for (int n = 3; n <= 6; ++n) {
        Partition lam{2};
        lam.resize(static_cast<std::size_t>(n - 1), 1);
        const auto s1 = simple(n, 1);
        for (entry_t a = -2; a <= 2; ++a)
            for (entry_t b = 0; b <= 4; ++b) {
                auto w = multiply(multiply(omega_power(n, a * n), s1), power(multiply(omega(n), s1), b));
                if (!is_member(w, lam)) continue;
                REQUIRE(epsilon(w, lam) == DominantWeight{{{a}, {a * (n - 1) + b}}});
            }
    }
}

TEST_CASE("bijection, duality and shift law") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& lam : partitions_of(n)) {
            auto shape = GroupShape::of(lam);
            for (int trial = 0; trial < 40; ++trial) {
                auto x = random_weight(shape, -3, 3);
                auto w = from_epsilon(lam, x);
                REQUIRE(is_member(w, lam));
                REQUIRE(lambda_partition(w) == lam);
                REQUIRE(epsilon(w, lam) == x);
                REQUIRE(epsilon(inverse(w), lam) == dual_weight(x));
                const entry_t k = uniform(-2, 2);
                REQUIRE(epsilon(multiply(omega_power(n, k * n), w), lam) == shift_by_rows(x, shape, k));
                bool nonneg = true;
                for (const auto& c : x.classes)
                    for (auto e : c) nonneg = nonneg && e >= 0;
                if (nonneg)
                    for (int i = 1; i <= n; ++i) REQUIRE(w[i] > 0);
            }
        }
}

TEST_CASE("fill order does not matter") {
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(uniform(2, 6));
        auto parts = partitions_of(n);
        const auto& lam = parts[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(parts.size()) - 1))];
        auto x = random_weight(GroupShape::of(lam), -3, 3);
        REQUIRE(from_epsilon_shifted(lam, x, 2) == from_epsilon(lam, x));
    }
}

TEST_CASE("increment and decrement") {
    const Partition base{3, 2, 2};
    auto wl = w_lambda(base);
    auto u = increment(wl, base, 1, 1);
    // first block rows: lambda_1 = 3, r_1 = 1
    CHECK(u[1] == 3 + 7);
    CHECK(decrement(u, base, 1, 1) == wl);
    CHECK_THROWS_AS(decrement(wl, base, 1, 1), error);
    {
        const Partition lam{2, 2, 1};
        auto v = increment(w_lambda(lam), lam, 1, 1);
        // r_1 = 2: u(a_{1,1}) = e_2, u(a_{2,1}) = lambda_1 + n
        CHECK(v[1] == 4);
        CHECK(v[3] == 2 + 5);
    }

    int legal = 0;
    for (int trial = 0; trial < 4000 && legal < 500; ++trial) {
        const int n = static_cast<int>(uniform(2, 6));
        auto parts = partitions_of(n);
        const auto& lam = parts[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(parts.size()) - 1))];
        auto shape = GroupShape::of(lam);
        auto pos = positions(shape);
        const auto cut = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pos.size()) - 1));
        auto x = random_weight(shape, 0, 3);
        for (std::size_t t = cut + 1; t < pos.size(); ++t) comp(x, pos[t].first, pos[t].second) = 0;
        const auto [i, j] = pos[cut];
        auto bumped = add(x, unit_weight(shape, i, j));
        if (!is_dominant(bumped)) continue;
        ++legal;
        auto w = from_epsilon(lam, x);
        auto up = increment(w, lam, i, j);
        REQUIRE(epsilon(up, lam) == bumped);
        REQUIRE(decrement(up, lam, i, j) == w);
        if (comp(x, i, j) >= 1) REQUIRE(epsilon(decrement(w, lam, i, j), lam) == subtract(x, unit_weight(shape, i, j)));
    }
    CHECK(legal == 500);
}

TEST_CASE("fundamental elements") {
    for (int n = 2; n <= 7; ++n)
        for (const auto& lam : partitions_of(n)) {
            auto shape = GroupShape::of(lam);
            const auto wl = w_lambda(lam);
            const auto e = shape.prefix_sums();
            for (int i = 1; i <= shape.classes_count(); ++i) {
                const auto& c = shape.classes[static_cast<std::size_t>(i - 1)];
                const int h = c.antichain_length;
                for (int j = 1; j <= c.size; ++j) {
                    auto u = fundamental_translation(lam, i, j);
                    REQUIRE(length(u) == (n - h * j) * j);
                    auto uw = fundamental_element(lam, i, j);
                    REQUIRE(uw == multiply(u, wl));
                    REQUIRE(length(uw) == length(u) + length(wl));
                    REQUIRE(epsilon(uw, lam) == fundamental_weight(shape, i, j));
                    REQUIRE(from_epsilon(lam, fundamental_weight(shape, i, j)) == uw);
                    // tau_{lambda_1} s(e_1..e_h) tau_{lambda_1 - 1} s(e_1 - 1, ..) ...
                    AffinePerm prod = AffinePerm::identity(n);
                    for (int l = 0; l < j; ++l) {
                        std::vector<entry_t> pts;
                        for (int k = 1; k <= h; ++k) pts.push_back(e[static_cast<std::size_t>(k)] - l);
                        prod = multiply(multiply(prod, tau(n, lam[0] - l)), cycle_element(n, pts));
                    }
                    REQUIRE(prod == u);
                }
            }
        }
}

TEST_CASE("double coset representatives") {
    for (int n = 2; n <= 6; ++n) {
        for (int i = 1; i < n; ++i) {
            std::vector<entry_t> a(static_cast<std::size_t>(n), 0);
            a[static_cast<std::size_t>(i - 1)] = 1;
            CHECK(m_of_dominant(n, a) == omega_power(n, i));
        }
        std::vector<int> all;
        for (int i = 1; i < n; ++i) all.push_back(i);
        std::vector<entry_t> ones(static_cast<std::size_t>(n), 1);
        ones.back() = 0;
        CHECK(m_element(n, all) == multiply(dominant_monomial(n, ones), w_lambda({n})));
        for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> subset;
            for (int i = 1; i < n; ++i)
                if (mask & (1u << (i - 1))) subset.push_back(i);
            auto m = m_element(n, subset);
            REQUIRE(m == m_by_product(n, subset));
            REQUIRE(left_descents(m) == right_descents(m));
            for (int d : right_descents(m)) REQUIRE(d == 0);
        }
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<entry_t> a(static_cast<std::size_t>(n));
            for (auto& x : a) x = uniform(0, 2);
            auto m = m_of_dominant(n, a);
            auto x = dominant_monomial(n, a);
            REQUIRE(translation_multiset(m) == translation_multiset(x));
            REQUIRE(left_descents(m) == right_descents(m));
            for (int d : right_descents(m)) REQUIRE(d == 0);
            REQUIRE(length(m) <= length(x));
        }
    }
    CHECK_THROWS_AS(m_element(4, {}), error);
}
