#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "simplicial/sequence.hpp"

namespace simplicial::seqgen {

using Rng = std::mt19937_64;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kPartitionGuard = 2000;

// Visits every partition of n in ascending-composition order (Kelleher's
// accelerated generator). Each partition is passed nonincreasing.
template <class Visit>
void for_each_partition(int n, Visit&& visit) {
    if (n < 1) return;
    std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> desc;
    auto emit = [&](std::size_t len) {
        desc.assign(a.rbegin() + static_cast<std::ptrdiff_t>(a.size() - len), a.rend());
        visit(desc);
    };
    std::size_t k = 1;
    int y = n - 1;
    while (k != 0) {
        int x = a[k - 1] + 1;
        --k;
        while (2 * x <= y) {
            a[k] = x;
            y -= x;
            ++k;
        }
        const std::size_t l = k + 1;
        while (x <= y) {
            a[k] = x;
            a[l] = y;
            emit(k + 2);
            ++x;
            --y;
        }
        a[k] = x + y;
        y = x + y - 1;
        emit(k + 1);
    }
}

std::vector<std::vector<int>> all_partitions(int n);

// Number of partitions of n.
BigInt partition_count(int n);

// Uniform sampler over partitions of n (Nijenhuis-Wilf). Holds the table
// p(0..max_n); max_n is capped at kPartitionGuard.
class PartitionSampler {
public:
    explicit PartitionSampler(int max_n);

    // Nonincreasing parts. Throws GuardError when n exceeds the table.
    std::vector<int> operator()(int n, Rng& rng) const;

    int max_n() const { return static_cast<int>(counts_.size()) - 1; }

private:
    std::vector<BigInt> counts_;
};

std::vector<int> uniform_partition(int n, Rng& rng);

// Uniform draw from [0, bound) by rejection on raw 64-bit words.
BigInt uniform_below(const BigInt& bound, Rng& rng);

// Poisson(lambda) conditioned on >= 1.
int zero_truncated_poisson(double lambda, Rng& rng);

struct PoissonPairSpec {
    long E = 1;
    double lambda_d = 1.0;
    double lambda_s = 1.0;
};

struct GeneratedPair {
    DegreeSizeSequence sequence;
    // Degree-1 nodes appended to match singleton facets.
    int matched_nodes = 0;
    // Mean degree over the remaining nodes (0 when there are none).
    double mean_degree = 0.0;
    double mean_size = 0.0;
};

// Zero-truncated Poisson sizes accumulated to E (last draw clamped); one
// degree-1 node per singleton facet; Poisson degrees fill the rest.
GeneratedPair poisson_pair(const PoissonPairSpec& spec, Rng& rng);

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Poisson sizes, singleton-matching nodes, and nodes of degree exactly d for
// the remaining budget. Resamples sizes until d divides that budget.
GeneratedPair regular_degree_pair(long E, int d, double lambda_s, Rng& rng, int retry_cap = 10000);

// splitmix64 finalizer; derives independent stream seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace simplicial::seqgen
