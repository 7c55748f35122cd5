#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "simplicial/sequence.hpp"

namespace simplicial::homology {

inline constexpr int kSkeletonGuard = 25;

// Deduplicated 2-skeleton of a facet list, sorted lexicographically.
struct Skeleton2 {
    int n0 = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::array<int, 3>> triangles;

    std::size_t n1() const { return edges.size(); }
    std::size_t n2() const { return triangles.size(); }
};

// Throws GuardError on a facet larger than guard.
Skeleton2 build_skeleton(const Realization& real, int guard = kSkeletonGuard);

struct BettiPair {
    long beta0 = 0;
    long beta1 = 0;
    bool operator==(const BettiPair&) const = default;
};

struct BettiReport {
    BettiPair betti;
    long n0 = 0;
    long n1 = 0;
    long n2 = 0;
};

// Sparse rows of column indices (each strictly ascending). Rank over GF(2).
std::size_t rank_gf2(std::vector<std::vector<int>> rows);

BettiReport analyze(const Realization& real, int guard = kSkeletonGuard);
BettiPair betti_numbers(const Realization& real, int guard = kSkeletonGuard);

}  // namespace simplicial::homology
