#include "simplicial/realizer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace simplicial {

SearchState SearchState::initial(const DegreeSizeSequence& reduced) {
    SearchState s;
    s.residual = reduced.degrees;
    s.sizes = reduced.sizes;
    s.membership.assign(reduced.degrees.size(), NodeSet(reduced.sizes.size()));
    return s;
}

void SearchState::accept(const NodeSet& facet) {
    const std::size_t k = blocking.size();
    for (int v : facet.members()) {
        --residual[static_cast<std::size_t>(v)];
        membership[static_cast<std::size_t>(v)].set(k);
    }
    blocking.push_back(facet);
    ++stage;
}

void SearchState::undo() {
    const std::size_t k = blocking.size() - 1;
    for (int v : blocking.back().members()) {
        ++residual[static_cast<std::size_t>(v)];
        membership[static_cast<std::size_t>(v)].reset(k);
    }
    blocking.pop_back();
    --stage;
}

std::vector<int> compute_forced_nodes(const SearchState& state) {
    std::vector<int> out;
    const int left = state.remaining_facets();
    for (int i = 0; i < state.n(); ++i)
        if (state.residual[static_cast<std::size_t>(i)] == left) out.push_back(i);
    return out;
}

CandidateStream::CandidateStream(const SearchState& state, CandidateOrder order, bool symmetry_pruning)
    : forced_(static_cast<std::size_t>(state.n())) {
    const auto forced = compute_forced_nodes(state);
    for (int v : forced) forced_.set(static_cast<std::size_t>(v));
    k_ = state.current_size() - static_cast<int>(forced.size());
    if (k_ < 0) {
        overflow_ = true;
        done_ = true;
        return;
    }

    for (int i = 0; i < state.n(); ++i)
        if (state.residual[static_cast<std::size_t>(i)] > 0 && !forced_.test(static_cast<std::size_t>(i)))
            ranked_.push_back(i);
    if (order == CandidateOrder::ResidualDegree)
        std::stable_sort(ranked_.begin(), ranked_.end(), [&](int a, int b) {
            return state.residual[static_cast<std::size_t>(a)] > state.residual[static_cast<std::size_t>(b)];
        });

    prev_in_class_.assign(ranked_.size(), -1);
    if (symmetry_pruning) {
        std::map<std::pair<int, std::vector<std::uint64_t>>, int> last;
        for (std::size_t r = 0; r < ranked_.size(); ++r) {
            const auto v = static_cast<std::size_t>(ranked_[r]);
            auto key = std::make_pair(state.residual[v], state.membership[v].words());
            auto [it, fresh] = last.try_emplace(std::move(key), static_cast<int>(r));
            if (!fresh) {
                prev_in_class_[r] = it->second;
                it->second = static_cast<int>(r);
            }
        }
    }
    chosen_.assign(ranked_.size(), 0);
    pos_.assign(static_cast<std::size_t>(k_), -1);
    if (k_ > static_cast<int>(ranked_.size())) done_ = true;
}

bool CandidateStream::allowed(int rank) const {
    const int p = prev_in_class_[static_cast<std::size_t>(rank)];
    return p < 0 || chosen_[static_cast<std::size_t>(p)];
}

// Greedy lexicographically-smallest completion of slots [slot, k).
bool CandidateStream::fill(int slot, int after_rank) {
    const int total = static_cast<int>(ranked_.size());
    int r = after_rank + 1;
    for (int s = slot; s < k_; ++s) {
        while (r < total && !allowed(r)) ++r;
        if (r >= total) {
            for (int t = slot; t < s; ++t) chosen_[static_cast<std::size_t>(pos_[static_cast<std::size_t>(t)])] = 0;
            return false;
        }
        pos_[static_cast<std::size_t>(s)] = r;
        chosen_[static_cast<std::size_t>(r)] = 1;
        ++r;
    }
    return true;
}

NodeSet CandidateStream::build() const {
    NodeSet out = forced_;
    for (int r : pos_) out.set(static_cast<std::size_t>(ranked_[static_cast<std::size_t>(r)]));
    return out;
}

std::optional<NodeSet> CandidateStream::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        if (fill(0, -1)) return build();
        done_ = true;
        return std::nullopt;
    }
    const int total = static_cast<int>(ranked_.size());
    for (int i = k_ - 1; i >= 0; --i) {
        const int r = pos_[static_cast<std::size_t>(i)];
        chosen_[static_cast<std::size_t>(r)] = 0;
        for (int c = r + 1; total - c >= k_ - i; ++c) {
            if (!allowed(c)) continue;
            pos_[static_cast<std::size_t>(i)] = c;
            chosen_[static_cast<std::size_t>(c)] = 1;
            if (fill(i + 1, c)) return build();
            chosen_[static_cast<std::size_t>(c)] = 0;
        }
    }
    done_ = true;
    return std::nullopt;
}

std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::Inclusion: return "inclusion";
        case Rule::Rule1: return "rule1";
        case Rule::Rule2: return "rule2";
        case Rule::Rule3: return "rule3";
        case Rule::Forced: return "forced";
        case Rule::Trivial: return "trivial";
    }
    return "unknown";
}

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Simplicial: return "simplicial";
        case Outcome::NonSimplicial: return "non_simplicial";
        case Outcome::Cutoff: return "cutoff";
    }
    return "unknown";
}

CandidateCheck validate_candidate(const SearchState& state, const NodeSet& cand, const SearchOptions& opts) {
    for (const auto& sigma : state.blocking)
        if (cand.is_subset_of(sigma)) return {false, Rule::Inclusion};

    const int left = state.remaining_facets() - 1;
    if (left == 0) return {};
    const int next_max_size = state.sizes[state.stage + 1];

    // Hypothetical next-stage residuals.
    const auto n = static_cast<std::size_t>(state.n());
    NodeSet alive(n);
    int alive_count = 0;
    int d_max = 0;
    long q_sum = 0;
    int q_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = state.residual[i];
        if (r <= 0) continue;
        const bool in = cand.test(i);
        const int next = in ? r - 1 : r;
        if (!in) {
            q_sum += r;
            ++q_count;
        }
        if (next > 0) {
            alive.set(i);
            ++alive_count;
            d_max = std::max(d_max, next);
        }
    }

    if (d_max > left) return {false, Rule::Rule1};
    if (next_max_size > alive_count || (next_max_size == alive_count && left != 1)) return {false, Rule::Rule1};

    if (opts.rule2) {
        if (left > q_sum) return {false, Rule::Rule2};
        // Every node of Q keeps its (positive) residual, so Q' = Q.
        if (left == q_sum && next_max_size - 1 > alive_count - q_count) return {false, Rule::Rule2};
    }

    if (opts.rule3) {
        if (alive.is_subset_of(cand)) return {false, Rule::Rule3};
        for (const auto& sigma : state.blocking)
            if (alive.is_subset_of(sigma)) return {false, Rule::Rule3};
    }
    return {};
}

namespace {

struct CutoffReached {};

class Search {
public:
    Search(SearchState state, const SearchOptions& opts, SolverVerdict& verdict)
        : state_(std::move(state)), opts_(opts), verdict_(verdict) {}

    bool run() { return descend(); }
    const SearchState& state() const { return state_; }

private:
    void reject(Rule rule) {
        ++verdict_.stats.tau_r;
        ++verdict_.rejections_by_rule[static_cast<std::size_t>(rule)];
        tick();
    }

    void tick() {
        if (verdict_.stats.tau_c() >= opts_.cutoff) throw CutoffReached{};
    }

    bool descend() {
        if (state_.remaining_facets() == 0) return true;
        CandidateStream stream(state_, opts_.order, opts_.symmetry_pruning);
        if (stream.forced_overflow()) {
            reject(Rule::Forced);
            return false;
        }
        while (auto cand = stream.next()) {
            const auto check = validate_candidate(state_, *cand, opts_);
            if (!check.accepted) {
                if (check.rule == Rule::Inclusion)
                    ++verdict_.rejections_by_rule[static_cast<std::size_t>(Rule::Inclusion)];
                else
                    reject(check.rule);
                continue;
            }
            state_.accept(*cand);
            if (descend()) return true;
            state_.undo();
        }
        // Depleted pool: unwinding to the previous stage is a backtrack;
        // exhausting the first stage ends the search instead.
        if (state_.stage > 0) {
            ++verdict_.stats.tau_b;
            tick();
        }
        return false;
    }

    SearchState state_;
    const SearchOptions& opts_;
    SolverVerdict& verdict_;
};

// Rule 1 applied to the sequence that enters the search.
bool entry_admissible(const DegreeSizeSequence& reduced) {
    const int left = reduced.m();
    if (reduced.degrees.front() > left) return false;
    const int s_max = reduced.sizes.front();
    return s_max < reduced.n() || (s_max == reduced.n() && left == 1);
}

}  // namespace

SolverVerdict realize(const DegreeSizeSequence& seq, const SearchOptions& opts) {
    SolverVerdict verdict;
    const auto trivial = check_trivial(seq);
    if (!trivial.pass) {
        verdict.trivial = trivial.reason;
        verdict.stats.tau_r = 1;
        verdict.rejections_by_rule[static_cast<std::size_t>(Rule::Trivial)] = 1;
        return verdict;
    }

    auto paired = preprocess_pair_ones(seq);
    auto finish = [&](const SearchState* state) {
        verdict.outcome = Outcome::Simplicial;
        Realization real = paired.partial;
        if (state)
            for (const auto& f : state->blocking) real.facets.push_back(f.members());
        verdict.realization = std::move(real);
    };

    if (paired.reduced.sizes.empty()) {
        finish(nullptr);
        return verdict;
    }
    if (!entry_admissible(paired.reduced)) {
        ++verdict.stats.tau_r;
        ++verdict.rejections_by_rule[static_cast<std::size_t>(Rule::Rule1)];
        return verdict;
    }
    if (opts.cutoff <= 0) {
        verdict.outcome = Outcome::Cutoff;
        verdict.stats.hit_cutoff = true;
        return verdict;
    }

    Search search(SearchState::initial(paired.reduced), opts, verdict);
    try {
        if (search.run()) finish(&search.state());
    } catch (const CutoffReached&) {
        verdict.outcome = Outcome::Cutoff;
        verdict.stats.hit_cutoff = true;
    }
    return verdict;
}

}  // namespace simplicial
