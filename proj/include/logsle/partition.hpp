#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace logsle {

/// Weakly decreasing sequence of positive integers. The partition
/// [p1, p2, ...] labels the descendant word L_{-p1} L_{-p2} ... applied to
/// the highest-weight state; the empty partition is the state itself.
using Partition = std::vector<int>;

inline int level(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline bool is_valid_partition(const Partition& p)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

inline std::string partition_label(const Partition& p)
{
    if (p.empty()) return "[]";
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

/// All partitions of n, parts bounded above by max_part.
inline std::vector<Partition> partitions_of(int n, int max_part)
{
    if (n == 0) return {Partition{}};
    std::vector<Partition> out;
    for (int head = std::min(n, max_part); head >= 1; --head) {
        for (auto& tail : partitions_of(n - head, head)) {
            Partition p;
            p.reserve(tail.size() + 1);
            p.push_back(head);
            p.insert(p.end(), tail.begin(), tail.end());
            out.push_back(std::move(p));
        }
    }
    return out;
}

inline std::vector<Partition> partitions_of(int n) { return partitions_of(n, n); }

/// Basis order used throughout: by level, then lexicographically largest
/// first within a level.
inline std::vector<Partition> partition_basis(int max_level)
{
    std::vector<Partition> basis;
    for (int n = 0; n <= max_level; ++n) {
        auto layer = partitions_of(n);
        std::sort(layer.begin(), layer.end(), std::greater<>());
        basis.insert(basis.end(), layer.begin(), layer.end());
    }
    return basis;
}

} // namespace logsle
