#pragma once

#include <cstdint>
#include <vector>

#include "affine_cells/affine_perm.hpp"
#include "affine_cells/partition.hpp"

namespace affine_cells {

class KLStore;

// Positions j_1 < ... < j_k (any integers) forming a d-antichain / d-chain of w.
bool is_d_antichain(const AffinePerm& w, const std::vector<entry_t>& positions);
bool is_d_chain(const AffinePerm& w, const std::vector<entry_t>& positions);

// Antichain partition from minimum antichain covers of subsets of {1..n}.
Partition mu_partition(const AffinePerm& w);
Partition lambda_partition(const AffinePerm& w);

// Blocks of a minimum cover of {1..n} by d-antichains, largest first.
std::vector<std::vector<int>> complete_antichain_family(const AffinePerm& w);

struct ChainOracleResult {
    Partition lambda;
    bool converged = false;
    int width = 0;
};
// Chain-based estimate of lambda(w): representatives of each residue are shifted by
// at most `width` periods; the width grows until two consecutive widths agree.
ChainOracleResult lambda_by_chains(const AffinePerm& w);

// Star operations for the pair {s_i, s_{i+1}} (indices mod n, n >= 3).
bool in_DR(const AffinePerm& w, int i);
bool in_DL(const AffinePerm& w, int i);
AffinePerm right_star(const AffinePerm& w, int i);
AffinePerm left_star(const AffinePerm& w, int i);

std::uint64_t n_mu(const Partition& lambda);

struct CellBall {
    std::vector<AffinePerm> elements;   // W' elements of length <= L, sorted by (length, window)
    std::vector<int> left_class;        // class id per element
    std::vector<int> right_class;
    std::vector<int> two_sided_class;
    int left_count = 0;
    int right_count = 0;
    int two_sided_count = 0;
};

// Cell relations restricted to the length ball; classes can only be finer than
// the true cells.
CellBall cell_ball(int n, int max_length, KLStore& store);

} // namespace affine_cells
