#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affine_cells/affine_perm.hpp"
#include "affine_cells/canonical.hpp"
#include "affine_cells/hecke.hpp"
#include "affine_cells/partition.hpp"

namespace affine_cells {

struct BasedRingElement {
    std::map<AffinePerm, std::int64_t> terms;

    std::int64_t coefficient(const AffinePerm& w) const;
    // Terms sorted by (length, window).
    std::vector<std::pair<AffinePerm, std::int64_t>> sorted() const;
    friend bool operator==(const BasedRingElement&, const BasedRingElement&) = default;
};

// Product in the based ring through the representation ring of F_lambda.
BasedRingElement t_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda);
// One factor per class: the member whose weight keeps only that class.
std::vector<AffinePerm> factorize(const AffinePerm& w, const Partition& lambda);
// 0 when v is not a member.
std::int64_t predicted_gamma(const AffinePerm& w, const AffinePerm& u, const AffinePerm& v, const Partition& lambda);

// Member representing the class of w modulo powers of omega^n.
AffinePerm sl_representative(const AffinePerm& w, const Partition& lambda);
BasedRingElement sl_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda);
// Both arguments need weight sum 0; throws NotInSubring otherwise.
BasedRingElement pgl_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda);

struct MatrixShape {
    std::uint64_t rows = 0;
    std::string note;
};
MatrixShape n_mu_matrix_shape(const Partition& lambda);

// Members of length <= bound whose weight is the SL representative of its class,
// together with their inverses; sorted by (length, window).
std::vector<AffinePerm> enumerate_members(const Partition& lambda, int bound);

struct TripleRecord {
    AffinePerm w, u, v;
    std::int64_t gamma_oracle = 0;
    std::int64_t gamma_predicted = 0;
    bool agree = true;
};

struct VerifyOptions {
    int jobs = 1;
    bool star_checks = true;
    // KL budget used for the run; 0 picks 2 * bound + 4.
    int budget = 0;
};

struct VerificationReport {
    int n = 0;
    Partition lambda;
    int bound = 0;
    std::vector<AffinePerm> members;
    // Triples with a nonzero oracle or predicted value, sorted.
    std::vector<TripleRecord> records;
    std::uint64_t pairs = 0;
    std::uint64_t support_terms = 0;
    std::uint64_t agreements = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t degree_checks = 0;
    std::uint64_t positivity_checks = 0;
    std::uint64_t duality_checks = 0;
    std::uint64_t cyclic_checks = 0;
    std::uint64_t cyclic_skipped = 0;
    std::uint64_t star_gamma_checks = 0;
    std::uint64_t star_h_checks = 0;
    std::vector<std::string> failures;
    double wall_seconds = 0;

    bool ok() const { return disagreements == 0 && failures.empty(); }
};

VerificationReport verify_isomorphism(int n, const Partition& lambda, int bound, KLStore& store, const VerifyOptions& opts = {});
std::string to_json(const VerificationReport& report, bool include_timing);

} // namespace affine_cells
