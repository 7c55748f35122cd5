#include "simplicial/scm.hpp"

#include <algorithm>
#include <stdexcept>

namespace simplicial::scm {

SCMConfig SCMConfig::defaults_for(long E, long n_samples, std::uint64_t seed) {
    return {50 * E, std::max(1L, 10 * E), n_samples, seed};
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

Chain::Chain(const Realization& seed, std::uint64_t rng_seed) : n_(seed.n), rng_(rng_seed) {
    node_facets_.resize(static_cast<std::size_t>(n_));
    for (std::size_t f = 0; f < seed.facets.size(); ++f) {
        NodeSet bits(static_cast<std::size_t>(n_));
        for (int v : seed.facets[f]) {
            if (v < 0 || v >= n_) throw std::invalid_argument("seed facet references node outside 0..n-1");
            bits.set(static_cast<std::size_t>(v));
            incidences_.push_back({static_cast<int>(f), v});
            node_facets_[static_cast<std::size_t>(v)].push_back(static_cast<int>(f));
        }
        facets_.push_back(std::move(bits));
    }
}

Proposal Chain::propose() {
    const auto len = incidences_.size();
    if (len < 2) return {0, 0};
    const auto i = uniform_index(rng_, len);
    auto j = uniform_index(rng_, len - 1);
    if (j >= i) ++j;
    return {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
}

bool Chain::related_to_others(const NodeSet& f, int skip_a, int skip_b, int via_node) const {
    for (int g : node_facets_[static_cast<std::size_t>(via_node)]) {
        if (g == skip_a || g == skip_b) continue;
        const auto& other = facets_[static_cast<std::size_t>(g)];
        if (f.is_subset_of(other) || other.is_subset_of(f)) return true;
    }
    return false;
}

StepResult Chain::check(const Proposal& p) const {
    if (p.first == p.second) return StepResult::Identity;
    const auto [f1, v1] = incidences_[p.first];
    const auto [f2, v2] = incidences_[p.second];
    if (f1 == f2 || v1 == v2) return StepResult::Identity;
    const auto& a = facets_[static_cast<std::size_t>(f1)];
    const auto& b = facets_[static_cast<std::size_t>(f2)];
    if (a.test(static_cast<std::size_t>(v2)) || b.test(static_cast<std::size_t>(v1)))
        return StepResult::RejectedDuplicate;

    NodeSet a2 = a;
    a2.reset(static_cast<std::size_t>(v1));
    a2.set(static_cast<std::size_t>(v2));
    NodeSet b2 = b;
    b2.reset(static_cast<std::size_t>(v2));
    b2.set(static_cast<std::size_t>(v1));
    if (a2.is_subset_of(b2) || b2.is_subset_of(a2)) return StepResult::RejectedInclusion;
    // Any new inclusion involving a2 (b2) must pass through its new node.
    if (related_to_others(a2, f1, f2, v2) || related_to_others(b2, f1, f2, v1))
        return StepResult::RejectedInclusion;
    return StepResult::Accepted;
}

StepResult Chain::apply(const Proposal& p) {
    const auto result = check(p);
    ++diag_.steps;
    switch (result) {
        case StepResult::Identity: ++diag_.identity; return result;
        case StepResult::RejectedDuplicate: ++diag_.rejected_duplicate; return result;
        case StepResult::RejectedInclusion: ++diag_.rejected_inclusion; return result;
        case StepResult::Accepted: break;
    }
    ++diag_.accepted;
    auto& [f1, v1] = incidences_[p.first];
    auto& [f2, v2] = incidences_[p.second];
    auto& a = facets_[static_cast<std::size_t>(f1)];
    auto& b = facets_[static_cast<std::size_t>(f2)];
    a.reset(static_cast<std::size_t>(v1));
    a.set(static_cast<std::size_t>(v2));
    b.reset(static_cast<std::size_t>(v2));
    b.set(static_cast<std::size_t>(v1));
    auto move_membership = [&](int node, int from, int to) {
        auto& list = node_facets_[static_cast<std::size_t>(node)];
        *std::find(list.begin(), list.end(), from) = to;
    };
    move_membership(v1, f1, f2);
    move_membership(v2, f2, f1);
    std::swap(v1, v2);
    return result;
}

Realization Chain::snapshot() const {
    Realization real{n_, {}};
    for (const auto& f : facets_) real.facets.push_back(f.members());
    return real;
}

ChainDiagnostics run_chain(const Realization& seed, const SCMConfig& cfg,
                           const std::function<void(long, const Realization&)>& visit) {
    if (cfg.burn_in < 0 || cfg.n_samples < 0 || cfg.gap < 1) throw std::invalid_argument("invalid SCM configuration");
    Chain chain(seed, cfg.seed);
    for (long t = 0; t < cfg.burn_in; ++t) chain.step();
    for (long k = 0; k < cfg.n_samples; ++k) {
        if (k > 0)
            for (long t = 0; t < cfg.gap; ++t) chain.step();
        visit(k, chain.snapshot());
    }
    return chain.diagnostics();
}

Ensemble sample_ensemble(const Realization& seed, const SCMConfig& cfg) {
    Ensemble out;
    out.diagnostics = run_chain(seed, cfg, [&](long, const Realization& r) { out.samples.push_back(r); });
    return out;
}

}  // namespace simplicial::scm
