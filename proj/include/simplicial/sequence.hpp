#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "simplicial/node_set.hpp"

namespace simplicial {

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an exponential routine is asked to run beyond its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A degree-size pair, both lists nonincreasing. Node label i refers to
// degrees[i]; degree_origin[i] is that node's position in the caller's input.
struct DegreeSizeSequence {
    std::vector<int> degrees;
    std::vector<int> sizes;
    std::vector<int> degree_origin;
    std::vector<int> size_origin;

    int n() const { return static_cast<int>(degrees.size()); }
    int m() const { return static_cast<int>(sizes.size()); }
    long degree_sum() const;
    long size_sum() const;
    // Instance size; only meaningful once degree_sum() == size_sum().
    long E() const { return degree_sum(); }

    bool operator==(const DegreeSizeSequence&) const = default;
};

// Sorts both lists nonincreasing (stable, so ties keep input order).
// Throws InvalidInput on empty lists or entries < 1.
DegreeSizeSequence normalize_sequence(std::span<const int> degrees, std::span<const int> sizes);

enum class RejectReason { None, SumMismatch, OnesDeficit, DegreeExceedsFacets, SizeExceedsNodes };

std::string_view to_string(RejectReason r);

struct TrivialVerdict {
    bool pass = true;
    RejectReason reason = RejectReason::None;
};

TrivialVerdict check_trivial(const DegreeSizeSequence& seq);

// Facets over labeled nodes 0..n-1; members of each facet ascending.
struct Realization {
    int n = 0;
    std::vector<std::vector<int>> facets;

    bool operator==(const Realization&) const = default;
};

struct PairedOnes {
    // Nodes 0..reduced.n()-1 keep their labels; the consumed degree-1 nodes
    // are the highest labels of the input sequence.
    DegreeSizeSequence reduced;
    Realization partial;
};

// Matches every size-1 facet with a distinct degree-1 node. Requires
// check_trivial(seq).pass; throws std::logic_error otherwise.
PairedOnes preprocess_pair_ones(const DegreeSizeSequence& seq);

struct IncidenceMatrix {
    int n = 0;
    std::vector<NodeSet> rows;

    std::vector<int> row_sums() const;
    std::vector<int> column_sums() const;
};

IncidenceMatrix incidence_matrix(const Realization& real);

// True iff some facet (as a set) is contained in, or equal to, another facet.
bool has_inclusion(const Realization& real);

bool verify_realization(const DegreeSizeSequence& seq, const Realization& real);

// Extracts the (unnormalized) degree and size lists of a facet list.
DegreeSizeSequence sequence_of(const Realization& real);

// Maps a realization over sorted labels back to the caller's node order.
Realization to_input_labels(const DegreeSizeSequence& seq, const Realization& real);

struct ConvergenceStats {
    std::int64_t tau_b = 0;
    std::int64_t tau_r = 0;
    bool hit_cutoff = false;

    std::int64_t tau_c() const { return tau_b + tau_r; }
    bool easy() const { return tau_c() <= 1; }

    bool operator==(const ConvergenceStats&) const = default;
};

}  // namespace simplicial
