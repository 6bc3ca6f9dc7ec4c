#include <benchmark/benchmark.h>

#include "affine_cells/basedring.hpp"
#include "affine_cells/canonical.hpp"
#include "affine_cells/cells.hpp"
#include "affine_cells/hecke.hpp"
#include "affine_cells/repring.hpp"

using namespace affine_cells;

namespace {

AffinePerm sample(int n) {
    AffinePerm w = AffinePerm::identity(n);
    for (int k = 0; k < 3 * n; ++k) {
        int s = (k * 7 + 3) % n;
        if (!has_right_descent(w, s)) w = right_mul_simple(w, s);
    }
    return w;
}

void BM_Length(benchmark::State& state) {
    auto w = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(length(w));
}
BENCHMARK(BM_Length)->Arg(3)->Arg(6)->Arg(12);

void BM_Multiply(benchmark::State& state) {
    auto w = sample(static_cast<int>(state.range(0)));
    auto u = inverse(w);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(w, u));
}
BENCHMARK(BM_Multiply)->Arg(3)->Arg(6)->Arg(12);

void BM_MuPartition(benchmark::State& state) {
    auto w = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mu_partition(w));
}
BENCHMARK(BM_MuPartition)->Arg(4)->Arg(8)->Arg(12);

void BM_KLColumn(benchmark::State& state) {
    const int n = 3;
    const auto len = static_cast<int>(state.range(0));
    AffinePerm w = AffinePerm::identity(n);
    for (int k = 0; length(w) < len; k = (k + 1) % n) w = right_mul_simple(w, k);
    for (auto _ : state) {
        KLStore store(n, len);
        benchmark::DoNotOptimize(store.column(w).size());
    }
}
BENCHMARK(BM_KLColumn)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_HeckeProduct(benchmark::State& state) {
    const Partition lam{2, 1};
    const auto bound = static_cast<int>(state.range(0));
    auto members = enumerate_members(lam, bound);
    const auto& w = members.back();
    const auto u = inverse(w);
    for (auto _ : state) {
        KLStore store(3, 2 * bound + 4);
        benchmark::DoNotOptimize(store.product(w, u)->terms.size());
    }
}
BENCHMARK(BM_HeckeProduct)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Epsilon(benchmark::State& state) {
    const Partition lam{3, 2, 2, 1};
    auto shape = GroupShape::of(lam);
    DominantWeight x = zero_weight(shape);
    for (auto& c : x.classes)
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = static_cast<entry_t>(state.range(0)) - static_cast<entry_t>(j);
    auto w = from_epsilon(lam, x);
    for (auto _ : state) benchmark::DoNotOptimize(epsilon(w, lam));
}
BENCHMARK(BM_Epsilon)->Arg(1)->Arg(4)->Arg(16);

void BM_FromEpsilon(benchmark::State& state) {
    const Partition lam{3, 2, 2, 1};
    auto shape = GroupShape::of(lam);
    DominantWeight x = zero_weight(shape);
    for (auto& c : x.classes)
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = static_cast<entry_t>(state.range(0)) - static_cast<entry_t>(j);
    for (auto _ : state) benchmark::DoNotOptimize(from_epsilon(lam, x));
}
BENCHMARK(BM_FromEpsilon)->Arg(1)->Arg(4)->Arg(16);

void BM_LRProduct(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    GLWeight x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = static_cast<entry_t>(2 * (m - i));
        y[i] = static_cast<entry_t>(m - i);
    }
    for (auto _ : state) benchmark::DoNotOptimize(lr_product(x, y).size());
}
BENCHMARK(BM_LRProduct)->Arg(2)->Arg(3)->Arg(4);

void BM_Verify(benchmark::State& state) {
    const auto bound = static_cast<int>(state.range(0));
    for (auto _ : state) {
        KLStore store(2);
        VerifyOptions opts;
        opts.star_checks = false;
        benchmark::DoNotOptimize(verify_isomorphism(2, {2}, bound, store, opts).agreements);
    }
}
BENCHMARK(BM_Verify)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
