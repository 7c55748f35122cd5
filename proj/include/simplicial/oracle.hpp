#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "simplicial/node_set.hpp"
#include "simplicial/sequence.hpp"

namespace simplicial::oracle {

inline constexpr long kDefaultGuard = 14;

// All distinct labeled realizations, each in canonical form: facets sorted
// by size descending, then lexicographically.
struct RealizationSet {
    std::vector<Realization> members;
    std::size_t count() const { return members.size(); }
};

RealizationSet enumerate_realizations(const DegreeSizeSequence& seq, long guard = kDefaultGuard);
std::uint64_t count_realizations(const DegreeSizeSequence& seq, long guard = kDefaultGuard);
bool decide_bruteforce(const DegreeSizeSequence& seq, long guard = kDefaultGuard);

// Whether the residual problem (degrees, remaining sizes) can be completed
// without any facet including, or being included in, another facet or one
// of the fixed facets. At most 32 nodes.
bool has_completion(std::span<const int> residual, std::span<const int> sizes,
                    std::span<const NodeSet> fixed);

Realization canonical(Realization real);

}  // namespace simplicial::oracle
