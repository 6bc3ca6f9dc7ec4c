#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace affine_cells {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);
int partition_size(const Partition& p);
Partition dual(const Partition& p);
// All partitions of n, in reverse lexicographic order ((n) first).
std::vector<Partition> partitions_of(int n);

std::string to_string(const Partition& p);
// "4,3,2,2"
Partition parse_partition(std::string_view text);

// One factor GL_{size} of F_lambda: a block of equal parts of lambda ending at row
// antichain_length (1-based), size = lambda_{r_i} - lambda_{r_{i+1}}.
struct ClassShape {
    int size = 0;
    int antichain_length = 0;
    friend bool operator==(const ClassShape&, const ClassShape&) = default;
};

struct GroupShape {
    Partition lambda;
    std::vector<ClassShape> classes;

    static GroupShape of(const Partition& lambda);

    int rank() const { return partition_size(lambda); }
    int rows() const { return static_cast<int>(lambda.size()); }
    int classes_count() const { return static_cast<int>(classes.size()); }
    // e_0 = 0, e_i = lambda_1 + ... + lambda_i
    std::vector<int> prefix_sums() const;
    // position a_{row,col} = e_{row-1} + col (both 1-based)
    int position(int row, int col) const;

    friend bool operator==(const GroupShape& a, const GroupShape& b) { return a.lambda == b.lambda; }
};

} // namespace affine_cells
