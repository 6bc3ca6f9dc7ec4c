#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "affine_cells/error.hpp"

namespace affine_cells {

using entry_t = std::int64_t;
using window_t = boost::container::small_vector<entry_t, 8>;

// Element of the extended affine Weyl group of type A~_{n-1}: a bijection of Z
// with w(i + n) = w(i) + n, stored by its window w(1), ..., w(n).
class AffinePerm {
public:
    AffinePerm() = default;

    // Validates residues and the displacement sum.
    static AffinePerm from_window(int n, std::span<const entry_t> window);
    static AffinePerm from_window(int n, std::initializer_list<entry_t> window) {
        return from_window(n, std::span<const entry_t>(window.begin(), window.size()));
    }
    // No validation; the caller guarantees the invariants.
    static AffinePerm from_trusted(int n, window_t window);
    static AffinePerm identity(int n);

    int rank() const noexcept { return n_; }
    const window_t& window() const noexcept { return window_; }
    // w(i) for 1 <= i <= n.
    entry_t operator[](int i) const { return window_[static_cast<std::size_t>(i - 1)]; }
    // w(k) for arbitrary k.
    entry_t operator()(entry_t k) const;

    bool is_identity() const noexcept;

    friend bool operator==(const AffinePerm& a, const AffinePerm& b) {
        return a.n_ == b.n_ && a.window_ == b.window_;
    }
    friend bool operator!=(const AffinePerm& a, const AffinePerm& b) { return !(a == b); }
    // Rank, then lexicographic window.
    friend bool operator<(const AffinePerm& a, const AffinePerm& b);

    std::size_t hash() const noexcept;

private:
    int n_ = 0;
    window_t window_;
};

struct AffinePermHash {
    std::size_t operator()(const AffinePerm& w) const noexcept { return w.hash(); }
};

// Reduced-word form: omega^omega_power followed by simple letters.
struct Word {
    entry_t omega_power = 0;
    std::vector<int> letters;

    friend bool operator==(const Word&, const Word&) = default;
};

// floor division and residue in 1..n
entry_t floor_div(entry_t a, entry_t b);
entry_t residue1(entry_t a, entry_t n);

AffinePerm simple(int n, int i);
AffinePerm omega(int n);
AffinePerm omega_power(int n, entry_t k);
AffinePerm tau(int n, int i);
// x_i = tau_1 ... tau_i
AffinePerm dominant_generator(int n, int i);

AffinePerm multiply(const AffinePerm& a, const AffinePerm& b);
AffinePerm inverse(const AffinePerm& a);
entry_t apply(const AffinePerm& a, entry_t k);
AffinePerm power(const AffinePerm& a, entry_t k);

inline AffinePerm operator*(const AffinePerm& a, const AffinePerm& b) { return multiply(a, b); }

// w * s_k and s_k * w without revalidation.
AffinePerm right_mul_simple(const AffinePerm& w, int k);
AffinePerm left_mul_simple(int k, const AffinePerm& w);

std::int64_t length(const AffinePerm& w);

bool has_right_descent(const AffinePerm& w, int k);
bool has_left_descent(const AffinePerm& w, int k);
std::vector<int> right_descents(const AffinePerm& w);
std::vector<int> left_descents(const AffinePerm& w);

// k with w = omega^k w', w' in W'.
entry_t omega_exponent(const AffinePerm& w);
// w' = omega^{-k} w
AffinePerm wprime_part(const AffinePerm& w);

Word reduced_word(const AffinePerm& w);
AffinePerm evaluate(int n, const Word& word);

bool bruhat_leq(const AffinePerm& y, const AffinePerm& w);
// All y <= w, memoized by window; w must be short enough to enumerate.
const std::vector<AffinePerm>& lower_interval(const AffinePerm& w);

std::string to_string(const AffinePerm& w);
std::string to_string(const Word& word);
// "[a1,...,an]"; n inferred when n == 0.
AffinePerm parse_window(std::string_view text, int n = 0);
Word parse_word(std::string_view text);

// Sorting key used for deterministic output: (length, window).
bool length_lex_less(const AffinePerm& a, const AffinePerm& b);

} // namespace affine_cells

template <>
struct std::hash<affine_cells::AffinePerm> {
    std::size_t operator()(const affine_cells::AffinePerm& w) const noexcept { return w.hash(); }
};
