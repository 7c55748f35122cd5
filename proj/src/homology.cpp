#include "simplicial/homology.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace simplicial::homology {

namespace {

std::uint64_t edge_key(int a, int b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); }

std::uint64_t triangle_key(int a, int b, int c) {
    return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}

std::vector<int> sorted_facet(const std::vector<int>& f, int guard) {
    if (static_cast<int>(f.size()) > guard)
        throw GuardError("facet of size " + std::to_string(f.size()) + " exceeds skeleton guard " +
                         std::to_string(guard) + "; raise the guard explicitly if the triangle count is acceptable");
    auto g = f;
    std::sort(g.begin(), g.end());
    return g;
}

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto& p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }

private:
    std::vector<int> parent_;
};

// Symmetric difference of two ascending index lists.
std::vector<int> xor_rows(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Skeleton2 build_skeleton(const Realization& real, int guard) {
    Skeleton2 sk;
    sk.n0 = real.n;
    std::unordered_set<std::uint64_t> edges;
    std::unordered_set<std::uint64_t> triangles;
    for (const auto& raw : real.facets) {
        const auto f = sorted_facet(raw, guard);
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                if (edges.insert(edge_key(f[a], f[b])).second) sk.edges.emplace_back(f[a], f[b]);
                for (std::size_t c = b + 1; c < f.size(); ++c)
                    if (triangles.insert(triangle_key(f[a], f[b], f[c])).second)
                        sk.triangles.push_back({f[a], f[b], f[c]});
            }
    }
    std::sort(sk.edges.begin(), sk.edges.end());
    std::sort(sk.triangles.begin(), sk.triangles.end());
    return sk;
}

std::size_t rank_gf2(std::vector<std::vector<int>> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    // pivot_of[col] = reduced row whose largest entry is col.
    std::unordered_map<int, std::size_t> pivot_of;
    std::vector<std::vector<int>> basis;
    for (auto& row : rows) {
        while (!row.empty()) {
            auto it = pivot_of.find(row.back());
            if (it == pivot_of.end()) break;
            row = xor_rows(row, basis[it->second]);
        }
        if (row.empty()) continue;
        pivot_of.emplace(row.back(), basis.size());
        basis.push_back(std::move(row));
    }
    return basis.size();
}

BettiReport analyze(const Realization& real, int guard) {
    const auto sk = build_skeleton(real, guard);
    BettiReport rep;
    rep.n0 = sk.n0;
    rep.n1 = static_cast<long>(sk.n1());
    rep.n2 = static_cast<long>(sk.n2());

    DisjointSets ds(sk.n0);
    long merges = 0;
    for (const auto& [a, b] : sk.edges)
        if (ds.unite(a, b)) ++merges;
    rep.betti.beta0 = sk.n0 - merges;

    // The boundaries of a facet's cone triangles {v0, a, b} (v0 its smallest
    // vertex) span the image of all of its triangles, so they suffice for
    // rank(d2).
    std::unordered_map<std::uint64_t, int> edge_index;
    edge_index.reserve(sk.edges.size());
    for (std::size_t k = 0; k < sk.edges.size(); ++k)
        edge_index.emplace(edge_key(sk.edges[k].first, sk.edges[k].second), static_cast<int>(k));
    std::vector<std::vector<int>> rows;
    for (const auto& raw : real.facets) {
        const auto f = sorted_facet(raw, guard);
        for (std::size_t a = 1; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                std::vector<int> row{edge_index.at(edge_key(f[0], f[a])), edge_index.at(edge_key(f[0], f[b])),
                                     edge_index.at(edge_key(f[a], f[b]))};
                std::sort(row.begin(), row.end());
                rows.push_back(std::move(row));
            }
    }
    const auto rank2 = static_cast<long>(rank_gf2(std::move(rows)));
    rep.betti.beta1 = rep.n1 - merges - rank2;
    return rep;
}

BettiPair betti_numbers(const Realization& real, int guard) { return analyze(real, guard).betti; }

}  // namespace simplicial::homology
