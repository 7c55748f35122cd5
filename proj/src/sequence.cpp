#include "simplicial/sequence.hpp"

#include <algorithm>
#include <numeric>

namespace simplicial {

namespace {

std::vector<int> sorted_order(std::span<const int> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
    return order;
}

void check_entries(std::span<const int> values, const char* what) {
    if (values.empty()) throw InvalidInput(std::string(what) + " list is empty");
    for (int v : values)
        if (v < 1) throw InvalidInput(std::string(what) + " entries must be >= 1, got " + std::to_string(v));
}

}  // namespace

long DegreeSizeSequence::degree_sum() const { return std::accumulate(degrees.begin(), degrees.end(), 0L); }

long DegreeSizeSequence::size_sum() const { return std::accumulate(sizes.begin(), sizes.end(), 0L); }

DegreeSizeSequence normalize_sequence(std::span<const int> degrees, std::span<const int> sizes) {
    check_entries(degrees, "degree");
    check_entries(sizes, "size");

    DegreeSizeSequence seq;
    seq.degree_origin = sorted_order(degrees);
    seq.size_origin = sorted_order(sizes);
    for (int i : seq.degree_origin) seq.degrees.push_back(degrees[i]);
    for (int j : seq.size_origin) seq.sizes.push_back(sizes[j]);
    return seq;
}

std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "NONE";
        case RejectReason::SumMismatch: return "SUM_MISMATCH";
        case RejectReason::OnesDeficit: return "ONES_DEFICIT";
        case RejectReason::DegreeExceedsFacets: return "DEGREE_EXCEEDS_FACETS";
        case RejectReason::SizeExceedsNodes: return "SIZE_EXCEEDS_NODES";
    }
    return "UNKNOWN";
}

TrivialVerdict check_trivial(const DegreeSizeSequence& seq) {
    if (seq.degree_sum() != seq.size_sum()) return {false, RejectReason::SumMismatch};
    auto ones_d = std::count(seq.degrees.begin(), seq.degrees.end(), 1);
    auto ones_s = std::count(seq.sizes.begin(), seq.sizes.end(), 1);
    if (ones_d < ones_s) return {false, RejectReason::OnesDeficit};
    if (seq.degrees.front() > seq.m()) return {false, RejectReason::DegreeExceedsFacets};
    if (seq.sizes.front() > seq.n()) return {false, RejectReason::SizeExceedsNodes};
    return {};
}

PairedOnes preprocess_pair_ones(const DegreeSizeSequence& seq) {
    if (!check_trivial(seq).pass) throw std::logic_error("preprocess_pair_ones: trivial check has not passed");

    const auto singles = static_cast<int>(std::count(seq.sizes.begin(), seq.sizes.end(), 1));
    PairedOnes out;
    out.partial.n = seq.n();
    out.reduced = seq;
    for (int k = 0; k < singles; ++k) {
        out.partial.facets.push_back({seq.n() - singles + k});
        out.reduced.degrees.pop_back();
        out.reduced.degree_origin.pop_back();
        out.reduced.sizes.pop_back();
        out.reduced.size_origin.pop_back();
    }
    return out;
}

std::vector<int> IncidenceMatrix::row_sums() const {
    std::vector<int> out;
    for (const auto& r : rows) out.push_back(static_cast<int>(r.count()));
    return out;
}

std::vector<int> IncidenceMatrix::column_sums() const {
    std::vector<int> out(static_cast<std::size_t>(n), 0);
    for (const auto& r : rows)
        for (int i : r.members()) ++out[static_cast<std::size_t>(i)];
    return out;
}

IncidenceMatrix incidence_matrix(const Realization& real) {
    IncidenceMatrix mat;
    mat.n = real.n;
    for (const auto& f : real.facets) {
        NodeSet row(static_cast<std::size_t>(real.n));
        for (int v : f) row.set(static_cast<std::size_t>(v));
        mat.rows.push_back(std::move(row));
    }
    return mat;
}

bool has_inclusion(const Realization& real) {
    const auto mat = incidence_matrix(real);
    std::vector<std::size_t> order(mat.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> sz;
    for (const auto& r : mat.rows) sz.push_back(r.count());
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sz[a] < sz[b]; });
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            if (mat.rows[order[a]].is_subset_of(mat.rows[order[b]])) return true;
    return false;
}

bool verify_realization(const DegreeSizeSequence& seq, const Realization& real) {
    if (real.n != seq.n() || static_cast<int>(real.facets.size()) != seq.m()) return false;
    std::vector<int> degree(static_cast<std::size_t>(real.n), 0);
    std::vector<int> sizes;
    for (const auto& f : real.facets) {
        for (int v : f) {
            if (v < 0 || v >= real.n) return false;
            ++degree[static_cast<std::size_t>(v)];
        }
        auto sorted = f;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        sizes.push_back(static_cast<int>(f.size()));
    }
    std::sort(degree.begin(), degree.end(), std::greater<>());
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (degree != seq.degrees || sizes != seq.sizes) return false;
    return !has_inclusion(real);
}

DegreeSizeSequence sequence_of(const Realization& real) {
    std::vector<int> degree(static_cast<std::size_t>(real.n), 0);
    std::vector<int> sizes;
    for (const auto& f : real.facets) {
        for (int v : f) ++degree.at(static_cast<std::size_t>(v));
        sizes.push_back(static_cast<int>(f.size()));
    }
    return normalize_sequence(degree, sizes);
}

Realization to_input_labels(const DegreeSizeSequence& seq, const Realization& real) {
    Realization out{real.n, {}};
    for (const auto& f : real.facets) {
        std::vector<int> g;
        for (int v : f) g.push_back(seq.degree_origin.at(static_cast<std::size_t>(v)));
        std::sort(g.begin(), g.end());
        out.facets.push_back(std::move(g));
    }
    return out;
}

}  // namespace simplicial
