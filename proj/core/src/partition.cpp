#include "affine_cells/partition.hpp"

#include <charconv>
#include <functional>

#include "affine_cells/error.hpp"

namespace affine_cells {

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

int partition_size(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

Partition dual(const Partition& p) {
    Partition d;
    if (p.empty()) return d;
    for (int j = 1; j <= p.front(); ++j) {
        int count = 0;
        for (int x : p)
            if (x >= j) ++count;
        d.push_back(count);
    }
    return d;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(remaining, max_part); k >= 1; --k) {
            cur.push_back(k);
            rec(remaining - k, k);
            cur.pop_back();
        }
    };
    if (n > 0) rec(n, n);
    return out;
}

std::string to_string(const Partition& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(p[i]);
    }
    return s;
}

Partition parse_partition(std::string_view text) {
    Partition p;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            fail(errc::parse_error, "bad partition '" + std::string(text) + "'");
        p.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (!is_partition(p)) fail(errc::parse_error, "not a partition: '" + std::string(text) + "'");
    return p;
}

GroupShape GroupShape::of(const Partition& lambda) {
    if (!is_partition(lambda) || lambda.empty()) fail(errc::parse_error, "not a partition: " + to_string(lambda));
    GroupShape g;
    g.lambda = lambda;
    const int r = static_cast<int>(lambda.size());
    for (int row = 1; row <= r; ++row) {
        int next = row < r ? lambda[static_cast<std::size_t>(row)] : 0;
        int here = lambda[static_cast<std::size_t>(row - 1)];
        if (here != next) g.classes.push_back({here - next, row});
    }
    return g;
}

std::vector<int> GroupShape::prefix_sums() const {
    std::vector<int> e(lambda.size() + 1, 0);
    for (std::size_t i = 0; i < lambda.size(); ++i) e[i + 1] = e[i] + lambda[i];
    return e;
}

int GroupShape::position(int row, int col) const {
    int e = 0;
    for (int i = 0; i < row - 1; ++i) e += lambda[static_cast<std::size_t>(i)];
    return e + col;
}

} // namespace affine_cells
