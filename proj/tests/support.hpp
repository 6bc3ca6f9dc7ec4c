#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "affine_cells/affine_perm.hpp"

namespace test_support {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

// w(i) = sigma(i) + n * c_i with |c_i| <= spread.
inline affine_cells::AffinePerm random_perm(int n, int spread) {
    std::vector<affine_cells::entry_t> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::shuffle(w.begin(), w.end(), rng());
    for (auto& x : w) x += n * uniform(-spread, spread);
    return affine_cells::AffinePerm::from_window(n, w);
}

// Element of W' (zero displacement sum).
inline affine_cells::AffinePerm random_wprime(int n, int spread) {
    return affine_cells::wprime_part(random_perm(n, spread));
}

} // namespace test_support
