#include "simplicial/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

namespace simplicial::oracle {

namespace {

using Mask = std::uint32_t;

// Row-by-row backtracking over incidence matrices. Rows of equal size are
// generated in increasing mask order so each facet set is visited once.
class Enumerator {
public:
    // visit returns false to stop the enumeration.
    Enumerator(std::vector<int> residual, std::vector<int> sizes, std::vector<Mask> fixed,
               std::function<bool(const std::vector<Mask>&)> visit)
        : residual_(std::move(residual)), sizes_(std::move(sizes)), fixed_(std::move(fixed)),
          visit_(std::move(visit)) {
        std::sort(sizes_.begin(), sizes_.end(), std::greater<>());
    }

    void run() {
        const long sd = std::accumulate(residual_.begin(), residual_.end(), 0L);
        const long ss = std::accumulate(sizes_.begin(), sizes_.end(), 0L);
        if (sd != ss) return;
        for (int r : residual_)
            if (r < 0) return;
        row(0);
    }

private:
    bool row(std::size_t j) {
        if (j == sizes_.size()) return visit_(rows_);
        const Mask floor = (j > 0 && sizes_[j] == sizes_[j - 1]) ? rows_[j - 1] : 0;
        return pick(j, 0, sizes_[j], 0, floor);
    }

    bool pick(std::size_t j, int from, int need, Mask mask, Mask floor) {
        const int n = static_cast<int>(residual_.size());
        if (need == 0) {
            if (mask <= floor) return true;
            if (!admissible(mask)) return true;
            rows_.push_back(mask);
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1U) --residual_[static_cast<std::size_t>(v)];
            const bool go = capacity_ok(j + 1) ? row(j + 1) : true;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1U) ++residual_[static_cast<std::size_t>(v)];
            rows_.pop_back();
            return go;
        }
        for (int v = from; v <= n - need; ++v) {
            if (residual_[static_cast<std::size_t>(v)] == 0) continue;
            if (!pick(j, v + 1, need - 1, mask | (Mask{1} << v), floor)) return false;
        }
        return true;
    }

    bool admissible(Mask mask) const {
        auto related = [&](Mask other) { return (mask & ~other) == 0 || (other & ~mask) == 0; };
        for (Mask r : rows_)
            if (related(r)) return false;
        for (Mask f : fixed_)
            if (related(f)) return false;
        return true;
    }

    // No node can need more facets than remain.
    bool capacity_ok(std::size_t next) const {
        const int left = static_cast<int>(sizes_.size() - next);
        for (int r : residual_)
            if (r > left) return false;
        return true;
    }

    std::vector<int> residual_;
    std::vector<int> sizes_;
    std::vector<Mask> fixed_;
    std::function<bool(const std::vector<Mask>&)> visit_;
    std::vector<Mask> rows_;
};

void check_guard(const DegreeSizeSequence& seq, long guard) {
    const long e = std::max(seq.degree_sum(), seq.size_sum());
    if (e > guard)
        throw GuardError("oracle refuses E=" + std::to_string(e) + " above guard " + std::to_string(guard));
}

Realization to_realization(int n, const std::vector<Mask>& rows) {
    Realization real{n, {}};
    for (Mask m : rows) {
        std::vector<int> f;
        for (int v = 0; v < n; ++v)
            if (m >> v & 1U) f.push_back(v);
        real.facets.push_back(std::move(f));
    }
    return canonical(std::move(real));
}

}  // namespace

Realization canonical(Realization real) {
    for (auto& f : real.facets) std::sort(f.begin(), f.end());
    std::sort(real.facets.begin(), real.facets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return real;
}

RealizationSet enumerate_realizations(const DegreeSizeSequence& seq, long guard) {
    check_guard(seq, guard);
    RealizationSet out;
    Enumerator(seq.degrees, seq.sizes, {}, [&](const std::vector<Mask>& rows) {
        out.members.push_back(to_realization(seq.n(), rows));
        return true;
    }).run();
    return out;
}

std::uint64_t count_realizations(const DegreeSizeSequence& seq, long guard) {
    check_guard(seq, guard);
    std::uint64_t count = 0;
    Enumerator(seq.degrees, seq.sizes, {}, [&](const std::vector<Mask>&) {
        ++count;
        return true;
    }).run();
    return count;
}

bool decide_bruteforce(const DegreeSizeSequence& seq, long guard) {
    check_guard(seq, guard);
    bool found = false;
    Enumerator(seq.degrees, seq.sizes, {}, [&](const std::vector<Mask>&) {
        found = true;
        return false;
    }).run();
    return found;
}

bool has_completion(std::span<const int> residual, std::span<const int> sizes, std::span<const NodeSet> fixed) {
    if (residual.size() > 32) throw GuardError("has_completion supports at most 32 nodes");
    std::vector<Mask> masks;
    for (const auto& f : fixed) {
        Mask m = 0;
        for (int v : f.members()) m |= Mask{1} << v;
        masks.push_back(m);
    }
    bool found = false;
    Enumerator({residual.begin(), residual.end()}, {sizes.begin(), sizes.end()}, std::move(masks),
               [&](const std::vector<Mask>&) {
                   found = true;
                   return false;
               })
        .run();
    return found;
}

}  // namespace simplicial::oracle
