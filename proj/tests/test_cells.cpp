#include <doctest.h>

#include <set>

#include "affine_cells/canonical.hpp"
#include "affine_cells/cells.hpp"
#include "affine_cells/hecke.hpp"
#include "support.hpp"

using namespace affine_cells;

TEST_CASE("antichain partition examples") {
    auto w = parse_window("[6,3,10,7,8,11]");
    CHECK(mu_partition(w) == Partition{4, 2});
    CHECK(lambda_partition(w) == Partition{2, 2, 1, 1});
    for (int n = 2; n <= 6; ++n) {
        CHECK(mu_partition(AffinePerm::identity(n)) == Partition{n});
        CHECK(lambda_partition(AffinePerm::identity(n)) == Partition(static_cast<std::size_t>(n), 1));
        for (const auto& lam : partitions_of(n)) {
            REQUIRE(mu_partition(w_lambda(lam)) == dual(lam));
            REQUIRE(lambda_partition(w_lambda(lam)) == lam);
        }
    }
    CHECK(mu_partition(w_lambda({3, 2, 1})) == Partition{3, 2, 1});
}

TEST_CASE("chain and antichain predicates") {
    auto w = w_lambda({3});
    CHECK(is_d_chain(w, {1, 2, 3}));
    CHECK_FALSE(is_d_antichain(w, {1, 2}));
    auto e = AffinePerm::identity(3);
    CHECK(is_d_antichain(e, {1, 2, 3}));
    CHECK(is_d_antichain(e, {2, 3, 4}));
    CHECK_FALSE(is_d_antichain(e, {1, 4}));
}

TEST_CASE("complete antichain families cover the window") {
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(test_support::uniform(2, 6));
        auto w = test_support::random_perm(n, 2);
        auto family = complete_antichain_family(w);
        std::set<int> covered;
        Partition sizes;
        for (const auto& block : family) {
            std::vector<entry_t> pos(block.begin(), block.end());
            REQUIRE(is_d_antichain(w, pos));
            covered.insert(block.begin(), block.end());
            sizes.push_back(static_cast<int>(block.size()));
        }
        REQUIRE(static_cast<int>(covered.size()) == n);
        REQUIRE(sizes == mu_partition(w));
    }
}

TEST_CASE("chain oracle agrees with the antichain partition") {
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(test_support::uniform(2, 5));
        auto w = test_support::random_perm(n, 2);
        auto chains = lambda_by_chains(w);
        REQUIRE(chains.converged);
        REQUIRE(chains.lambda == lambda_partition(w));
    }
}

TEST_CASE("lambda is inverse invariant") {
    for (int trial = 0; trial < 500; ++trial) {
        const int n = static_cast<int>(test_support::uniform(2, 5));
        auto w = test_support::random_perm(n, 2);
        REQUIRE(lambda_partition(inverse(w)) == lambda_partition(w));
        REQUIRE(lambda_partition(multiply(omega(n), w)) == lambda_partition(w));
    }
}

TEST_CASE("star operations") {
    auto w = multiply(simple(3, 1), simple(3, 2));
    REQUIRE(in_DR(w, 1));
    CHECK(right_star(w, 1) == simple(3, 1));
    CHECK_THROWS_AS(right_star(AffinePerm::identity(3), 1), error);
    int applied = 0;
    for (int trial = 0; trial < 2000 && applied < 500; ++trial) {
        const int n = static_cast<int>(test_support::uniform(3, 6));
        auto x = test_support::random_perm(n, 2);
        const int i = static_cast<int>(test_support::uniform(0, n - 1));
        const int i1 = (i + 1) % n;
        REQUIRE(in_DR(x, i) == (has_right_descent(x, i) != has_right_descent(x, i1)));
        REQUIRE(in_DL(x, i) == (has_left_descent(x, i) != has_left_descent(x, i1)));
        if (!in_DR(x, i)) continue;
        ++applied;
        auto y = right_star(x, i);
        REQUIRE(in_DR(y, i));
        REQUIRE(right_star(y, i) == x);
        REQUIRE(std::abs(length(y) - length(x)) == 1);
        REQUIRE((y == right_mul_simple(x, i) || y == right_mul_simple(x, i1)));
        REQUIRE(lambda_partition(y) == lambda_partition(x));
        REQUIRE(left_star(inverse(x), i) == inverse(y));
    }
    CHECK(applied == 500);
}

TEST_CASE("n_mu") {
    CHECK(n_mu({2, 1}) == 3);
    for (int n = 2; n <= 6; ++n) {
        CHECK(n_mu(Partition(static_cast<std::size_t>(n), 1)) == 1);
        std::uint64_t f = 1;
        for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
        CHECK(n_mu({n}) == f);
    }
}

TEST_CASE("cell classes in a length ball") {
    KLStore st2(2, 8);
    auto b2 = cell_ball(2, 6, st2);
    std::set<std::pair<int, Partition>> seen;
    for (std::size_t i = 0; i < b2.elements.size(); ++i) seen.emplace(b2.two_sided_class[i], lambda_partition(b2.elements[i]));
    std::set<int> ids;
    for (const auto& [id, lam] : seen) {
        REQUIRE(ids.insert(id).second);
    }

    KLStore st(3, 8);
    auto b = cell_ball(3, 6, st);
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        for (std::size_t j = 0; j < b.elements.size(); ++j) {
            if (b.two_sided_class[i] == b.two_sided_class[j])
                REQUIRE(lambda_partition(b.elements[i]) == lambda_partition(b.elements[j]));
            if (b.left_class[i] == b.left_class[j]) REQUIRE(right_descents(b.elements[i]) == right_descents(b.elements[j]));
            if (b.right_class[i] == b.right_class[j]) REQUIRE(left_descents(b.elements[i]) == left_descents(b.elements[j]));
        }
    CHECK(b.two_sided_count >= 3);
}
