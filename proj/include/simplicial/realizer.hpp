#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "simplicial/node_set.hpp"
#include "simplicial/sequence.hpp"

namespace simplicial {

inline constexpr std::int64_t kDefaultCutoff = 100000;

// Node priority when forming candidates. Labels follow nonincreasing input
// degree, so InputDegree ranks by label alone; ResidualDegree ranks by
// (residual degree desc, label asc).
enum class CandidateOrder { InputDegree, ResidualDegree };

struct SearchOptions {
    // The search stops with Outcome::Cutoff once tau_c reaches this value.
    std::int64_t cutoff = kDefaultCutoff;
    // Branch on one representative per run of interchangeable nodes.
    bool symmetry_pruning = true;
    CandidateOrder order = CandidateOrder::InputDegree;
    bool rule2 = true;
    bool rule3 = true;
};

// Residual problem at one branching stage. Node labels are those of the
// sequence after pairing off the singleton facets.
struct SearchState {
    std::vector<int> residual;        // per node, >= 0
    std::vector<int> sizes;           // all non-singleton sizes, nonincreasing
    std::size_t stage = 0;            // sizes[stage] is the facet being built
    std::vector<NodeSet> blocking;    // accepted facets, in acceptance order
    std::vector<NodeSet> membership;  // per node: bit k set iff node is in blocking[k]

    static SearchState initial(const DegreeSizeSequence& reduced);

    int remaining_facets() const { return static_cast<int>(sizes.size() - stage); }
    int current_size() const { return sizes[stage]; }
    int n() const { return static_cast<int>(residual.size()); }

    void accept(const NodeSet& facet);
    void undo();
};

// Nodes whose residual degree equals the number of facets still to build;
// every remaining facet must contain them.
std::vector<int> compute_forced_nodes(const SearchState& state);

// Lazily yields the candidate facets for the current stage: every
// current_size()-subset of positive-residual nodes containing the forced
// nodes, in lexicographic order over the ranked nodes. With symmetry
// pruning, nodes sharing residual degree and blocking membership are
// interchangeable and only class prefixes (in rank order) are emitted.
class CandidateStream {
public:
    CandidateStream(const SearchState& state, CandidateOrder order, bool symmetry_pruning);

    std::optional<NodeSet> next();

    // More forced nodes than the current facet can hold.
    bool forced_overflow() const { return overflow_; }

private:
    bool allowed(int rank) const;
    bool fill(int slot, int after_rank);
    NodeSet build() const;

    NodeSet forced_;
    std::vector<int> ranked_;
    std::vector<int> prev_in_class_;
    std::vector<char> chosen_;
    std::vector<int> pos_;
    int k_ = 0;
    bool overflow_ = false;
    bool started_ = false;
    bool done_ = false;
};

enum class Rule { Inclusion, Rule1, Rule2, Rule3, Forced, Trivial };
inline constexpr std::size_t kRuleCount = 6;

std::string_view to_string(Rule r);

struct CandidateCheck {
    bool accepted = true;
    Rule rule = Rule::Inclusion;  // meaningful only when rejected
};

// Checks a candidate against the hypothetical next stage. Evaluation order:
// inclusion, Rule 1, Rule 2, Rule 3. The search treats an inclusion failure
// as candidate screening: it is tallied per rule but not added to tau_r.
CandidateCheck validate_candidate(const SearchState& state, const NodeSet& cand,
                                  const SearchOptions& opts = {});

enum class Outcome { Simplicial, NonSimplicial, Cutoff };

std::string_view to_string(Outcome o);

struct SolverVerdict {
    Outcome outcome = Outcome::NonSimplicial;
    // Set only for Simplicial; labels follow the normalized sequence.
    std::optional<Realization> realization;
    ConvergenceStats stats;
    RejectReason trivial = RejectReason::None;
    std::array<std::int64_t, kRuleCount> rejections_by_rule{};
};

SolverVerdict realize(const DegreeSizeSequence& seq, const SearchOptions& opts = {});

}  // namespace simplicial
