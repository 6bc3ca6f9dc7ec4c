#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affine_cells/canonical.hpp"
#include "affine_cells/partition.hpp"

namespace affine_cells {

// Weakly decreasing integer vector: a dominant weight of GL_m.
using GLWeight = std::vector<entry_t>;
// Multiplicities of irreducibles V(x) of GL_m.
using GLRep = std::map<GLWeight, std::int64_t>;

// Element of the representation ring of F_lambda.
struct RepRingElement {
    std::map<DominantWeight, std::int64_t> terms;

    void add(const DominantWeight& x, std::int64_t mult);
    std::int64_t multiplicity(const DominantWeight& x) const;
    friend bool operator==(const RepRingElement&, const RepRingElement&) = default;
};

// V(x_i) (x) V(x): add 1 to i distinct coordinates, keep the dominant results.
GLRep pieri_wedge(int i, const GLWeight& x);
// V(x_1^a) (x) V(x): compositions of a whose suffix additions stay dominant.
GLRep pieri_sym(entry_t a, const GLWeight& x);
// Full Littlewood-Richardson product of two GL_m irreducibles.
GLRep lr_product(const GLWeight& x, const GLWeight& y);
// Multiplicity of V(z) in V(x) (x) V(y).
std::int64_t lr_multiplicity(const GLWeight& x, const GLWeight& y, const GLWeight& z);
// Ordinary LR coefficient c^nu_{alpha beta} for partitions.
std::int64_t lr_coefficient(const Partition& alpha, const Partition& beta, const Partition& nu);

RepRingElement product_Flambda(const DominantWeight& a, const DominantWeight& b, const GroupShape& shape);
std::int64_t product_multiplicity(const DominantWeight& a, const DominantWeight& b, const DominantWeight& c, const GroupShape& shape);

// Representative of the class of x modulo adding k r_i to class i: the last
// component of the last class ends up in [0, r_p).
DominantWeight restrict_sl(const DominantWeight& x, const GroupShape& shape);
bool is_pgl_weight(const DominantWeight& x);
entry_t weight_sum(const DominantWeight& x);

// [{"weight": [[...],...], "multiplicity": m}, ...]
std::string to_json(const RepRingElement& x);

} // namespace affine_cells
