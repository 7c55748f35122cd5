#include "simplicial/seqgen.hpp"

#include <algorithm>
#include <string>

namespace simplicial::seqgen {

std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    for_each_partition(n, [&](const std::vector<int>& p) { out.push_back(p); });
    return out;
}

namespace {

std::vector<BigInt> count_table(int max_n) {
    std::vector<BigInt> p(static_cast<std::size_t>(max_n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= max_n; ++part)
        for (int i = part; i <= max_n; ++i) p[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i - part)];
    return p;
}

}  // namespace

BigInt partition_count(int n) {
    if (n < 0) return 0;
    return count_table(n).back();
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
    if (bound <= 1) return 0;
    const unsigned bits = boost::multiprecision::msb(BigInt(bound - 1)) + 1;
    const unsigned words = (bits + 63) / 64;
    const unsigned top = bits - 64 * (words - 1);
    for (;;) {
        BigInt x = 0;
        for (unsigned w = 0; w < words; ++w) {
            std::uint64_t r = rng();
            if (w == 0 && top < 64) r &= (std::uint64_t{1} << top) - 1;
            x = (x << 64) | r;
        }
        if (x < bound) return x;
    }
}

PartitionSampler::PartitionSampler(int max_n) {
    if (max_n > kPartitionGuard)
        throw GuardError("partition table limited to n <= " + std::to_string(kPartitionGuard));
    counts_ = count_table(std::max(max_n, 0));
}

std::vector<int> PartitionSampler::operator()(int n, Rng& rng) const {
    if (n < 1) throw InvalidInput("partition of n < 1 requested");
    if (n > max_n()) throw GuardError("n=" + std::to_string(n) + " exceeds partition table " + std::to_string(max_n()));

    // Pick (d, j) with probability d p(m - jd) / (m p(m)), emit j copies of d.
    std::vector<int> parts;
    int m = n;
    while (m > 0) {
        BigInt z = uniform_below(BigInt(m) * counts_[static_cast<std::size_t>(m)], rng);
        int pick_d = 0;
        int pick_j = 0;
        for (int d = 1; d <= m && pick_d == 0; ++d) {
            for (int j = 1; j * d <= m; ++j) {
                const BigInt w = BigInt(d) * counts_[static_cast<std::size_t>(m - j * d)];
                if (z < w) {
                    pick_d = d;
                    pick_j = j;
                    break;
                }
                z -= w;
            }
        }
        parts.insert(parts.end(), static_cast<std::size_t>(pick_j), pick_d);
        m -= pick_j * pick_d;
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

std::vector<int> uniform_partition(int n, Rng& rng) {
    if (n > kPartitionGuard) throw GuardError("n=" + std::to_string(n) + " exceeds partition guard");
    return PartitionSampler(n)(n, rng);
}

int zero_truncated_poisson(double lambda, Rng& rng) {
    if (!(lambda > 0)) throw InvalidInput("Poisson mean must be positive");
    std::poisson_distribution<int> dist(lambda);
    for (;;) {
        int x = dist(rng);
        if (x >= 1) return x;
    }
}

namespace {

std::vector<int> accumulate_to(long total, double lambda, Rng& rng) {
    std::vector<int> out;
    long sum = 0;
    while (sum < total) {
        const long x = std::min<long>(zero_truncated_poisson(lambda, rng), total - sum);
        out.push_back(static_cast<int>(x));
        sum += x;
    }
    return out;
}

GeneratedPair assemble(std::vector<int> degrees, int matched, std::vector<int> sizes) {
    GeneratedPair g;
    g.matched_nodes = matched;
    long budget = 0;
    for (int d : degrees) budget += d;
    const auto free_nodes = static_cast<long>(degrees.size());
    g.mean_degree = free_nodes ? static_cast<double>(budget) / static_cast<double>(free_nodes) : 0.0;
    long e = 0;
    for (int s : sizes) e += s;
    g.mean_size = static_cast<double>(e) / static_cast<double>(sizes.size());
    degrees.insert(degrees.end(), static_cast<std::size_t>(matched), 1);
    g.sequence = normalize_sequence(degrees, sizes);
    return g;
}

void check_spec(long E, double lambda_s) {
    if (E < 1) throw InvalidInput("E must be >= 1");
    if (!(lambda_s > 0)) throw InvalidInput("lambda_s must be positive");
}

}  // namespace

GeneratedPair poisson_pair(const PoissonPairSpec& spec, Rng& rng) {
    check_spec(spec.E, spec.lambda_s);
    if (!(spec.lambda_d > 0)) throw InvalidInput("lambda_d must be positive");
    auto sizes = accumulate_to(spec.E, spec.lambda_s, rng);
    const auto singles = static_cast<int>(std::count(sizes.begin(), sizes.end(), 1));
    auto degrees = accumulate_to(spec.E - singles, spec.lambda_d, rng);
    return assemble(std::move(degrees), singles, std::move(sizes));
}

GeneratedPair regular_degree_pair(long E, int d, double lambda_s, Rng& rng, int retry_cap) {
    check_spec(E, lambda_s);
    if (d < 1) throw InvalidInput("regular degree must be >= 1");
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        auto sizes = accumulate_to(E, lambda_s, rng);
        const auto singles = static_cast<int>(std::count(sizes.begin(), sizes.end(), 1));
        const long budget = E - singles;
        if (budget % d != 0) continue;
        std::vector<int> degrees(static_cast<std::size_t>(budget / d), d);
        return assemble(std::move(degrees), singles, std::move(sizes));
    }
    throw GenerationError("no size draw divisible by d=" + std::to_string(d) + " after " +
                          std::to_string(retry_cap) + " attempts");
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace simplicial::seqgen
