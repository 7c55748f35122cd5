#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "simplicial/seqgen.hpp"

using namespace simplicial;
using namespace simplicial::seqgen;

namespace {

double chi_square_p(const std::map<std::vector<int>, double>& counts, double expected) {
    double stat = 0.0;
    for (const auto& [k, o] : counts) stat += (o - expected) * (o - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

bool nonincreasing(const std::vector<int>& v) { return std::is_sorted(v.rbegin(), v.rend()); }

}  // namespace

TEST_SUITE("seqgen") {
    TEST_CASE("partition enumeration") {
        CHECK(all_partitions(1) == std::vector<std::vector<int>>{{1}});
        CHECK(all_partitions(4) == std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 1, 1}, {3, 1}, {2, 2}, {4}});
        for (int n = 1; n <= 20; ++n) {
            const auto parts = all_partitions(n);
            CHECK(BigInt(parts.size()) == partition_count(n));
            std::set<std::vector<int>> distinct(parts.begin(), parts.end());
            CHECK(distinct.size() == parts.size());
            for (const auto& p : parts) {
                CHECK(nonincreasing(p));
                CHECK(std::accumulate(p.begin(), p.end(), 0) == n);
            }
        }
        CHECK(partition_count(13) == 101);
        CHECK(partition_count(100) == BigInt(190569292));
        CHECK(partition_count(1000) == BigInt("24061467864032622473692149727991"));
    }

    TEST_CASE("uniform partitions of small E") {
        Rng rng(1);
        PartitionSampler sampler(20);
        for (int E = 1; E <= 8; ++E) {
            std::map<std::vector<int>, double> counts;
            for (const auto& p : all_partitions(E)) counts[p] = 0;
            const int per_cell = 400;
            const auto draws = per_cell * static_cast<int>(counts.size());
            for (int k = 0; k < draws; ++k) {
                const auto p = sampler(E, rng);
                REQUIRE(counts.count(p) == 1);
                counts[p] += 1;
            }
            if (counts.size() > 1) CHECK_MESSAGE(chi_square_p(counts, per_cell) > 0.001, "E=", E);
        }
    }

    TEST_CASE("E=13 sampler reaches every partition") {
        Rng rng(13);
        std::set<std::vector<int>> seen;
        for (int k = 0; k < 20000; ++k) seen.insert(uniform_partition(13, rng));
        CHECK(seen.size() == 101);
    }

    TEST_CASE("sampler guard") {
        PartitionSampler sampler(10);
        Rng rng(0);
        CHECK_THROWS_AS(sampler(11, rng), GuardError);
        CHECK(PartitionSampler(kPartitionGuard).max_n() == kPartitionGuard);
        CHECK_THROWS(PartitionSampler(kPartitionGuard + 1));
        const auto big = sampler(10, rng);
        CHECK(std::accumulate(big.begin(), big.end(), 0) == 10);
    }

    TEST_CASE("uniform_below stays in range") {
        Rng rng(4);
        const BigInt bound = partition_count(500);
        for (int k = 0; k < 1000; ++k) {
            const auto x = uniform_below(bound, rng);
            CHECK(x >= 0);
            CHECK(x < bound);
        }
        CHECK(uniform_below(1, rng) == 0);
    }

    TEST_CASE("zero-truncated Poisson") {
        Rng rng(8);
        double sum = 0.0;
        const int draws = 200000;
        for (int k = 0; k < draws; ++k) {
            const int x = zero_truncated_poisson(2.0, rng);
            REQUIRE(x >= 1);
            sum += x;
        }
        // E[X | X >= 1] = lambda / (1 - exp(-lambda))
        CHECK(sum / draws == doctest::Approx(2.0 / (1.0 - std::exp(-2.0))).epsilon(0.01));
    }

    TEST_CASE("Poisson pairs") {
        Rng rng(21);
        for (int k = 0; k < 200; ++k) {
            const auto g = poisson_pair({300, 3.0, 2.0}, rng);
            const auto& s = g.sequence;
            CHECK(s.E() == 300);
            CHECK(s.degree_sum() == s.size_sum());
            CHECK(nonincreasing(s.degrees));
            CHECK(nonincreasing(s.sizes));
            CHECK(s.degrees.back() >= 1);
            CHECK(s.sizes.back() >= 1);
            const auto singleton_facets = std::count(s.sizes.begin(), s.sizes.end(), 1);
            CHECK(g.matched_nodes == singleton_facets);
            CHECK(std::count(s.degrees.begin(), s.degrees.end(), 1) >= singleton_facets);
        }
    }

    TEST_CASE("regular degree pairs") {
        Rng rng(22);
        for (int k = 0; k < 100; ++k) {
            const auto g = regular_degree_pair(300, 4, 3.0, rng);
            const auto& s = g.sequence;
            CHECK(s.E() == 300);
            const auto ones = std::count(s.degrees.begin(), s.degrees.end(), 1);
            CHECK(ones == g.matched_nodes);
            CHECK(std::count(s.degrees.begin(), s.degrees.end(), 4) + ones == static_cast<long>(s.degrees.size()));
            if (s.n() > g.matched_nodes) CHECK(g.mean_degree == 4.0);
        }
    }

    TEST_CASE("generation is deterministic under a seed") {
        Rng a(mix_seed(7, 3));
        Rng b(mix_seed(7, 3));
        CHECK(poisson_pair({100, 2.0, 2.0}, a).sequence == poisson_pair({100, 2.0, 2.0}, b).sequence);
        CHECK(uniform_partition(50, a) == uniform_partition(50, b));
        std::set<std::uint64_t> seeds;
        for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(mix_seed(7, i));
        CHECK(seeds.size() == 1000);
    }
}
