#pragma once

#include <stdexcept>
#include <string>

namespace affine_cells {

enum class errc {
    residue_clash,
    sum_not_divisible,
    index_out_of_range,
    rank_mismatch,
    rank_too_small,
    parse_error,
    overflow,
    limit_exceeded,
    degree_violation,
    not_in_star_domain,
    not_admissible,
    not_member,
    precondition_violated,
    not_dominant,
    empty_subset,
    negative_degree,
    length_mismatch,
    shape_mismatch,
    not_in_subring,
    cache_corrupt,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace affine_cells
