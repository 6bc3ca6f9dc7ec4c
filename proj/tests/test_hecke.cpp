#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "affine_cells/basedring.hpp"
#include "affine_cells/canonical.hpp"
#include "affine_cells/hecke.hpp"
#include "support.hpp"

using namespace affine_cells;

namespace {

std::vector<AffinePerm> ball(int n, int L) {
    std::set<AffinePerm> seen{AffinePerm::identity(n)};
    std::vector<AffinePerm> frontier{AffinePerm::identity(n)};
    for (int l = 0; l < L; ++l) {
        std::vector<AffinePerm> next;
        for (const auto& w : frontier)
            for (int k = 0; k < n; ++k) {
                auto v = right_mul_simple(w, k);
                if (length(v) == l + 1 && seen.insert(v).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// Longest element of the subgroup generated by the given simple reflections.
AffinePerm parabolic_longest(int n, const std::vector<int>& gens) {
    AffinePerm w = AffinePerm::identity(n);
    for (bool grew = true; grew;) {
        grew = false;
        for (int k : gens)
            if (!has_right_descent(w, k)) {
                w = right_mul_simple(w, k);
                grew = true;
            }
    }
    return w;
}

HeckeElement sparse_product(const AffinePerm& w, const AffinePerm& u, KLStore& store) {
    return to_c_basis(t_multiply(c_in_t_basis(w, store), c_in_t_basis(u, store)), store);
}

} // namespace

TEST_CASE("quadratic relation") {
    const int n = 3;
    auto s = t_basis(simple(n, 1));
    auto ss = t_times_simple(s, 1);
    HeckeElement expected;
    expected.add(simple(n, 1), LaurentPoly::monomial(1, 2) - LaurentPoly(1));
    expected.add(AffinePerm::identity(n), LaurentPoly::monomial(1, 2));
    CHECK(ss == expected);
    CHECK(t_multiply(s, s) == expected);
}

TEST_CASE("T-basis multiplication is associative") {
    for (int trial = 0; trial < 40; ++trial) {
        auto a = t_basis(test_support::random_wprime(3, 1));
        auto b = t_basis(test_support::random_wprime(3, 1));
        auto c = t_basis(test_support::random_wprime(3, 1));
        REQUIRE(t_multiply(t_multiply(a, b), c) == t_multiply(a, t_multiply(b, c)));
    }
}

TEST_CASE("KL polynomials: normalization and small ranks") {
    KLStore st2(2, 12);
    for (const auto& w : ball(2, 10)) {
        CHECK(kl_polynomial(w, w, st2) == KLPoly{1});
        for (const auto& [y, p] : st2.column(w)) REQUIRE(p == KLPoly{1});
    }
    KLStore st4(4, 8);
    auto w = evaluate(4, parse_word("s2.s1.s3.s2"));
    CHECK(kl_polynomial(AffinePerm::identity(4), w, st4) == KLPoly{1, 1});
    CHECK(kl_polynomial(simple(4, 2), w, st4) == KLPoly{1, 1});
    CHECK(kl_polynomial(simple(4, 1), w, st4) == KLPoly{1});
    CHECK(kl_polynomial(simple(4, 0), w, st4).empty());
}

TEST_CASE("C-basis elements are bar invariant with the degree bound") {
    for (int n = 2; n <= 3; ++n) {
        KLStore st(n, 10);
        for (const auto& w : ball(n, n == 2 ? 8 : 6)) {
            auto c = c_in_t_basis(w, st);
            REQUIRE(bar_involution(c) == c);
            const auto lw = length(w);
            for (const auto& [y, p] : st.column(w)) {
                REQUIRE(p.at(0) == 1);
                if (y != w) REQUIRE(2 * static_cast<std::int64_t>(p.size() - 1) <= lw - length(y) - 1);
            }
        }
    }
}

TEST_CASE("pivot policies agree") {
    KLStore a(3, 9, Pivot::smallest_left_descent), b(3, 9, Pivot::largest_left_descent);
    for (const auto& w : ball(3, 7))
        for (const auto& y : lower_interval(w)) REQUIRE(a.polynomial(y, w) == b.polynomial(y, w));
    KLStore c(4, 7, Pivot::smallest_left_descent), d(4, 7, Pivot::largest_left_descent);
    for (int trial = 0; trial < 30; ++trial) {
        auto w = test_support::random_wprime(4, 1);
        if (length(w) > 7) continue;
        for (const auto& y : lower_interval(w)) REQUIRE(c.polynomial(y, w) == d.polynomial(y, w));
    }
}

TEST_CASE("dense products match sparse T-basis products") {
    KLStore st(2, 10);
    auto s1 = simple(2, 1);
    auto p = st.product(s1, s1);
    REQUIRE(p->terms.size() == 1);
    CHECK(p->terms[0].first == s1);
    CHECK(p->terms[0].second == LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1));
    for (const auto& w : ball(2, 4))
        for (const auto& u : ball(2, 4)) {
            auto sparse = sparse_product(w, u, st);
            auto dense = st.product(w, u);
            REQUIRE(sparse.terms.size() == dense->terms.size());
            for (const auto& [v, h] : sparse.terms) REQUIRE(dense->coefficient(v) == h);
        }
    KLStore st3(3, 8);
    for (int trial = 0; trial < 40; ++trial) {
        auto w = test_support::random_perm(3, 1), u = test_support::random_perm(3, 1);
        if (length(w) + length(u) > 7) continue;
        auto sparse = sparse_product(w, u, st3);
        auto dense = st3.product(w, u);
        REQUIRE(sparse.terms.size() == dense->terms.size());
        for (const auto& [v, h] : sparse.terms) REQUIRE(dense->coefficient(v) == h);
    }
}

TEST_CASE("unit and omega twists") {
    KLStore st(3, 10);
    const auto e = AffinePerm::identity(3);
    for (const auto& u : ball(3, 4)) {
        auto p = st.product(e, u);
        REQUIRE(p->terms.size() == 1);
        REQUIRE(p->terms[0].first == u);
        REQUIRE(p->terms[0].second == LaurentPoly(1));
        // C_{omega w} = T_omega C_w
        auto q = st.product(multiply(omega(3), u), simple(3, 1));
        auto r = st.product(u, simple(3, 1));
        REQUIRE(q->terms.size() == r->terms.size());
        for (const auto& [v, h] : r->terms) REQUIRE(q->coefficient(multiply(omega(3), v)) == h);
    }
}

TEST_CASE("a-function") {
    CHECK(a_value(AffinePerm::identity(3)) == 0);
    CHECK(a_value(w_lambda({2, 1})) == 1);
    for (int n = 2; n <= 6; ++n) CHECK(a_value(w_lambda({n})) == n * (n - 1) / 2);
}

TEST_CASE("distinguished involutions among parabolic longest elements") {
    for (int n = 2; n <= 4; ++n) {
        KLStore st(n, 12);
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<int> gens;
            for (int k = 0; k < n; ++k)
                if (mask & (1u << k)) gens.push_back(k);
            auto wi = parabolic_longest(n, gens);
            auto p = kl_polynomial(AffinePerm::identity(n), wi, st);
            REQUIRE(!p.empty());
            REQUIRE(4 * static_cast<std::int64_t>(p.size() - 1) == 2 * (length(wi) - a_value(wi)));
        }
    }
}

TEST_CASE("structure constants: degree bound, unit, cyclic symmetry") {
    KLStore st(3, 12);
    const Partition lam{2, 1};
    const auto d = w_lambda(lam);
    for (const auto& w : enumerate_members(lam, 5)) CHECK(gamma_oracle(w, d, w, st) == 1);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto w = test_support::random_wprime(3, 1), u = test_support::random_wprime(3, 1);
        if (length(w) + length(u) > 6) continue;
        for (const auto& [v, h] : st.product(w, u)->terms) {
            const auto a = a_value(v);
            REQUIRE(h.degree() <= a);
            const auto g = gamma_from_h(h, a);
            if (length(u) + length(v) <= 12) {
                REQUIRE(g == gamma_oracle(u, inverse(v), inverse(w), st));
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
    CHECK_THROWS_AS(gamma_from_h(LaurentPoly::monomial(1, 3), 2), error);
}

TEST_CASE("budget and cache") {
    KLStore small(3, 4);
    auto long_w = evaluate(3, parse_word("s1.s2.s0.s1.s2"));
    CHECK_THROWS_AS(small.product(long_w, long_w), error);

    const std::string path = "hecke_cache_test.txt";
    KLStore a(3, 10);
    std::vector<std::pair<AffinePerm, AffinePerm>> pairs;
    for (const auto& w : ball(3, 6))
        for (const auto& y : lower_interval(w)) pairs.emplace_back(y, w);
    for (const auto& [y, w] : pairs) a.polynomial(y, w);
    a.save(path);
    KLStore b(3, 10);
    CHECK(b.load(path) > 0);
    for (const auto& [y, w] : pairs) REQUIRE(b.polynomial(y, w) == a.polynomial(y, w));

    {
        std::ofstream bad("hecke_cache_bad.txt");
        bad << "KL n=3 y=[1,2,3] w=[2,1,3] P=1,5\n";
    }
    KLStore c(3, 10);
    try {
        c.load("hecke_cache_bad.txt");
        FAIL("expected corrupt cache");
    } catch (const error& e) {
        CHECK(e.code() == errc::cache_corrupt);
    }
    std::remove(path.c_str());
    std::remove("hecke_cache_bad.txt");
}
