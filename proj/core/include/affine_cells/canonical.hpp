#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "affine_cells/affine_perm.hpp"
#include "affine_cells/partition.hpp"

namespace affine_cells {

// Dominant weight of a product of general linear groups: one weakly decreasing
// integer vector per class.
struct DominantWeight {
    std::vector<std::vector<entry_t>> classes;

    friend bool operator==(const DominantWeight&, const DominantWeight&) = default;
    friend auto operator<=>(const DominantWeight&, const DominantWeight&) = default;
};

// "(0)(1)(1,0)"
std::string to_string(const DominantWeight& x);
DominantWeight parse_weight(std::string_view text);
// [[0],[1],[1,0]]
std::string to_json(const DominantWeight& x);

bool is_dominant(const DominantWeight& x);
bool fits_shape(const DominantWeight& x, const GroupShape& shape);
// Throws ShapeMismatch / NotDominant.
void check_weight(const DominantWeight& x, const GroupShape& shape);
DominantWeight zero_weight(const GroupShape& shape);
// (i, l)-component 1 for l <= j, everything else 0.
DominantWeight fundamental_weight(const GroupShape& shape, int i, int j);
// Single 1 at (i, j).
DominantWeight unit_weight(const GroupShape& shape, int i, int j);
DominantWeight add(const DominantWeight& a, const DominantWeight& b);
DominantWeight subtract(const DominantWeight& a, const DominantWeight& b);
// Adds k * r_i to every component of class i.
DominantWeight shift_by_rows(const DominantWeight& x, const GroupShape& shape, entry_t k);
// Per class: reverse and negate.
DominantWeight dual_weight(const DominantWeight& x);

// Longest element of the parabolic subgroup of the row blocks of lambda.
AffinePerm w_lambda(const Partition& lambda);
bool is_member(const AffinePerm& w, const Partition& lambda);

// One pick of the greedy extraction.
struct GridEntry {
    entry_t value = 0;
    int row = 0; // 1-based row k of A
    int col = 0; // 1-based column within the row
};

// passes[i-1][j-1][k-1] holds the pick labelled (k, i, j).
struct GreedyGrid {
    std::vector<std::vector<std::vector<GridEntry>>> passes;

    entry_t at(int k, int i, int j) const {
        return passes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)].value;
    }
};

// rows[k-1] = (x_{k1}, ..., x_{k lambda_k}). Throws NotAdmissible.
void check_admissible(const Partition& lambda, const std::vector<std::vector<entry_t>>& rows);
GreedyGrid greedy_epsilon_grid(const Partition& lambda, const std::vector<std::vector<entry_t>>& rows);
// Class weights from a grid: each pick b + c n with 1 <= b <= n contributes c.
DominantWeight weight_from_grid(const GroupShape& shape, const GreedyGrid& grid, int n);

// Window of w read block-wise.
std::vector<std::vector<entry_t>> block_rows(const AffinePerm& w, const Partition& lambda);
GreedyGrid epsilon_grid(const AffinePerm& w, const Partition& lambda);
DominantWeight epsilon(const AffinePerm& w, const Partition& lambda);

AffinePerm increment(const AffinePerm& w, const Partition& lambda, int i, int j);
AffinePerm decrement(const AffinePerm& w, const Partition& lambda, int i, int j);

AffinePerm from_epsilon(const Partition& lambda, const DominantWeight& eps);
// Same construction with the nonnegative shift enlarged by `extra` periods.
AffinePerm from_epsilon_shifted(const Partition& lambda, const DominantWeight& eps, int extra);

// u_{ij} by its window formula, and u_{ij} w_lambda.
AffinePerm fundamental_translation(const Partition& lambda, int i, int j);
AffinePerm fundamental_element(const Partition& lambda, int i, int j);
// s(i_1, ..., i_k): the cycle i_1 -> i_2 -> ... -> i_k -> i_1, extended periodically.
AffinePerm cycle_element(int n, const std::vector<entry_t>& points);

// Shortest double coset representative m_I for nonempty I in {1..n-1}.
AffinePerm m_element(int n, const std::vector<int>& subset);
// m_x for x = x_1^{a_1} ... x_n^{a_n}; exponents[i-1] = a_i >= 0.
AffinePerm m_of_dominant(int n, const std::vector<entry_t>& exponents);
AffinePerm dominant_monomial(int n, const std::vector<entry_t>& exponents);

// The remark after the monotone grid bound: compares eps_{ij} with the average of
// the shifted grid picks. Reported, never asserted.
struct ConjectureReport {
    // eps'_{k,i,j}: pick minus the w_lambda value at its source position.
    std::vector<std::vector<std::vector<entry_t>>> shifted_grid;
    // per (i, j): (eps_{ij}, sum_k eps'_{k,i,j}) and whether n * eps_{ij} equals the sum
    std::vector<std::vector<std::pair<entry_t, entry_t>>> comparisons;
    bool holds = true;
};
ConjectureReport conjecture_diagnostic(const AffinePerm& w, const Partition& lambda);

} // namespace affine_cells
