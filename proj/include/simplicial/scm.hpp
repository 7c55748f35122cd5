#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "simplicial/node_set.hpp"
#include "simplicial/sequence.hpp"

namespace simplicial::scm {

struct SCMConfig {
    long burn_in = 0;
    long gap = 1;
    long n_samples = 0;
    std::uint64_t seed = 0;

    // burn_in = 50 E, gap = 10 E.
    static SCMConfig defaults_for(long E, long n_samples, std::uint64_t seed);
};

struct Incidence {
    int facet;
    int node;
};

struct Proposal {
    std::size_t first;
    std::size_t second;
};

enum class StepResult { Accepted, Identity, RejectedDuplicate, RejectedInclusion };

struct ChainDiagnostics {
    long steps = 0;
    long accepted = 0;
    long identity = 0;
    long rejected_duplicate = 0;
    long rejected_inclusion = 0;
};

// Incidence-swap Markov chain over realizations of a fixed degree-size
// sequence. Proposals are uniform over unordered pairs of incidences;
// swaps that break simpliciality are rejected and the chain stays put.
class Chain {
public:
    Chain(const Realization& seed, std::uint64_t rng_seed);

    Proposal propose();
    // Validity predicate for swapping the node endpoints of two incidences.
    StepResult check(const Proposal& p) const;
    StepResult apply(const Proposal& p);
    StepResult step() { return apply(propose()); }

    Realization snapshot() const;
    const std::vector<Incidence>& incidences() const { return incidences_; }
    const ChainDiagnostics& diagnostics() const { return diag_; }

private:
    bool related_to_others(const NodeSet& f, int skip_a, int skip_b, int via_node) const;

    int n_;
    std::vector<Incidence> incidences_;
    std::vector<NodeSet> facets_;
    std::vector<std::vector<int>> node_facets_;
    std::mt19937_64 rng_;
    ChainDiagnostics diag_;
};

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

struct Ensemble {
    std::vector<Realization> samples;
    ChainDiagnostics diagnostics;
};

// Burn-in, then one retained sample every gap steps. visit receives the
// sample index and the snapshot.
ChainDiagnostics run_chain(const Realization& seed, const SCMConfig& cfg,
                           const std::function<void(long, const Realization&)>& visit);

Ensemble sample_ensemble(const Realization& seed, const SCMConfig& cfg);

}  // namespace simplicial::scm
