#include "simplicial/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "simplicial/seqgen.hpp"

namespace simplicial::experiments {

namespace {

HardnessRecord solve_one(std::size_t index, const Instance& inst, const SearchOptions& opts) {
    HardnessRecord rec;
    rec.index = index;
    rec.instance = inst;
    const auto t0 = std::chrono::steady_clock::now();
    const auto verdict = realize(normalize_sequence(inst.degrees, inst.sizes), opts);
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.outcome = verdict.outcome;
    rec.stats = verdict.stats;
    return rec;
}

// Serial reference loop or OpenMP kernel; the first exception raised by a
// worker is rethrown on the calling thread.
template <class Fn>
void for_each_job(std::ptrdiff_t count, Mode mode, int chunk, Fn&& fn) {
    if (mode == Mode::Serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, chunk)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(simplicial_job_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

double fraction(std::size_t hits, std::size_t total) {
    return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

}  // namespace

std::vector<HardnessRecord> solve_batch(const std::vector<Instance>& instances, const SearchOptions& opts, Mode mode) {
    std::vector<HardnessRecord> out(instances.size());
    for_each_job(static_cast<std::ptrdiff_t>(instances.size()), mode, 4,
                 [&](std::size_t i) { out[i] = solve_one(i, instances[i], opts); });
    return out;
}

GridScan scan_all_pairs(int E, const SearchOptions& opts, Mode mode, int guard) {
    if (E < 1 || E > guard)
        throw GuardError("grid scan needs 1 <= E <= " + std::to_string(guard) + ", got " + std::to_string(E));
    GridScan scan;
    scan.E = E;
    scan.partitions = seqgen::all_partitions(E);
    std::vector<Instance> instances;
    for (const auto& d : scan.partitions)
        for (const auto& s : scan.partitions) instances.push_back({d, s});
    scan.records = solve_batch(instances, opts, mode);

    std::size_t hard = 0;
    std::size_t simplicial = 0;
    for (const auto& r : scan.records) {
        if (!r.stats.easy()) ++hard;
        if (r.outcome == Outcome::Simplicial) ++simplicial;
    }
    scan.hard_fraction = fraction(hard, scan.records.size());
    scan.simplicial_fraction = fraction(simplicial, scan.records.size());
    return scan;
}

UniformSizesScan scan_uniform_sizes(int degree_total, int size_value, int facet_count, std::size_t sample_count,
                                    const SearchOptions& opts, std::uint64_t seed, Mode mode) {
    if (size_value < 1 || facet_count < 1 || static_cast<long>(size_value) * facet_count != degree_total)
        throw InvalidInput("uniform-size scan needs size_value * facet_count == degree_total");
    UniformSizesScan scan;
    scan.degree_total = degree_total;
    scan.size_value = size_value;
    scan.facet_count = facet_count;
    scan.sampled = sample_count > 0;

    const std::vector<int> sizes(static_cast<std::size_t>(facet_count), size_value);
    std::vector<Instance> instances;
    if (scan.sampled) {
        const seqgen::PartitionSampler sampler(degree_total);
        seqgen::Rng rng(seed);
        for (std::size_t k = 0; k < sample_count; ++k) instances.push_back({sampler(degree_total, rng), sizes});
    } else {
        seqgen::for_each_partition(degree_total, [&](const std::vector<int>& d) { instances.push_back({d, sizes}); });
    }
    scan.records = solve_batch(instances, opts, mode);

    std::size_t easy = 0;
    std::size_t easy_feasible = 0;
    for (const auto& r : scan.records) {
        const bool feasible = r.instance.degrees.front() <= facet_count;
        if (feasible) ++scan.feasible_count;
        if (r.stats.easy()) {
            ++easy;
            if (feasible) ++easy_feasible;
        }
        ++scan.tau_histogram[r.stats.tau_c()];
    }
    scan.easy_fraction = fraction(easy, scan.records.size());
    scan.easy_fraction_feasible = fraction(easy_feasible, scan.feasible_count);
    return scan;
}

FractionEstimate wilson(std::size_t hits, std::size_t total) {
    if (total == 0) return {};
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(total);
    const double p = static_cast<double>(hits) / nn;
    const double denom = 1 + z * z / nn;
    const double centre = (p + z * z / (2 * nn)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    return {p, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<RandomPairsRow> scan_random_pairs(const std::vector<int>& sizes_E, std::size_t N, const SearchOptions& opts,
                                              std::uint64_t seed, Mode mode) {
    std::vector<RandomPairsRow> rows;
    for (std::size_t e = 0; e < sizes_E.size(); ++e) {
        const int E = sizes_E[e];
        RandomPairsRow row;
        row.E = E;
        row.N = N;
        if (N == 0) {
            rows.push_back(row);
            continue;
        }
        const seqgen::PartitionSampler sampler(E);
        seqgen::Rng rng(seqgen::mix_seed(seed, static_cast<std::uint64_t>(E)));
        std::vector<Instance> instances;
        for (std::size_t k = 0; k < N; ++k) {
            auto d = sampler(E, rng);
            auto s = sampler(E, rng);
            instances.push_back({std::move(d), std::move(s)});
        }
        for (const auto& r : solve_batch(instances, opts, mode)) {
            const bool simplicial = r.outcome == Outcome::Simplicial;
            const bool poly = r.stats.easy();
            row.simplicial += simplicial;
            row.polynomial += poly;
            row.simplicial_polynomial += simplicial && poly;
        }
        row.s = wilson(row.simplicial, N);
        row.p = wilson(row.polynomial, N);
        row.s_p = wilson(row.simplicial_polynomial, row.simplicial);
        rows.push_back(row);
    }
    return rows;
}

std::pair<double, double> scm_betti_means(const Realization& seed, const scm::SCMConfig& cfg, int skeleton_guard) {
    double b0 = 0;
    double b1 = 0;
    long count = 0;
    scm::run_chain(seed, cfg, [&](long, const Realization& r) {
        const auto b = homology::betti_numbers(r, skeleton_guard);
        b0 += static_cast<double>(b.beta0);
        b1 += static_cast<double>(b.beta1);
        ++count;
    });
    if (count == 0) return {0.0, 0.0};
    return {b0 / static_cast<double>(count), b1 / static_cast<double>(count)};
}

namespace {

struct ReplicateResult {
    bool ok = false;
    std::size_t rejected = 0;
    double mean_degree = 0.0;
    double mean_size = 0.0;
    double beta0 = 0.0;
    double beta1 = 0.0;
};

ReplicateResult run_replicate(const BettiScanConfig& cfg, const GridPoint& pt, std::uint64_t stream) {
    ReplicateResult res;
    seqgen::Rng rng(stream);
    for (int attempt = 0; attempt < cfg.rejection_cap; ++attempt) {
        seqgen::GeneratedPair pair;
        try {
            pair = cfg.family == Family::Poisson
                       ? seqgen::poisson_pair({cfg.E, pt.lambda_d, pt.lambda_s}, rng)
                       : seqgen::regular_degree_pair(cfg.E, pt.d, pt.lambda_s, rng);
        } catch (const seqgen::GenerationError&) {
            ++res.rejected;
            continue;
        }
        const auto verdict = realize(pair.sequence, cfg.search);
        if (verdict.outcome != Outcome::Simplicial) {
            ++res.rejected;
            continue;
        }
        const scm::SCMConfig scm_cfg{cfg.burn_in_per_E * cfg.E, std::max(1L, cfg.gap_per_E * cfg.E), cfg.scm_samples,
                                     rng()};
        const auto [b0, b1] = scm_betti_means(*verdict.realization, scm_cfg, cfg.skeleton_guard);
        res.ok = true;
        res.mean_degree = pair.mean_degree;
        res.mean_size = pair.mean_size;
        res.beta0 = b0;
        res.beta1 = b1;
        return res;
    }
    return res;
}

}  // namespace

std::vector<BettiScanRecord> betti_scan(const BettiScanConfig& cfg, Mode mode) {
    const std::size_t points = cfg.grid.size();
    const auto reps = static_cast<std::size_t>(std::max(cfg.replicates, 0));
    std::vector<ReplicateResult> results(points * reps);
    for_each_job(static_cast<std::ptrdiff_t>(results.size()), mode, 1, [&](std::size_t k) {
        results[k] = run_replicate(cfg, cfg.grid[k / reps], seqgen::mix_seed(cfg.seed, k));
    });

    std::vector<BettiScanRecord> out;
    for (std::size_t g = 0; g < points; ++g) {
        BettiScanRecord rec;
        rec.grid_index = g;
        rec.point = cfg.grid[g];
        double sum_d = 0;
        double sum_s = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto& res = results[g * reps + r];
            rec.rejected_draws += res.rejected;
            if (!res.ok) continue;
            ++rec.replicates;
            sum_d += res.mean_degree;
            sum_s += res.mean_size;
            rec.beta0_means.push_back(res.beta0);
            rec.beta1_means.push_back(res.beta1);
        }
        rec.unreachable = rec.replicates < reps;
        if (rec.replicates > 0) {
            rec.mean_degree = sum_d / static_cast<double>(rec.replicates);
            rec.mean_size = sum_s / static_cast<double>(rec.replicates);
            rec.beta0 = quartiles(rec.beta0_means);
            rec.beta1 = quartiles(rec.beta1_means);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

Realization prune_included(const Realization& corpus) {
    std::vector<std::vector<int>> facets;
    for (auto f : corpus.facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        if (!f.empty()) facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    std::vector<std::size_t> order(facets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return facets[a].size() > facets[b].size(); });
    // Larger facets first, so a kept facet can only be included in an earlier one.
    std::vector<std::vector<int>> kept;
    for (auto idx : order) {
        const auto& f = facets[idx];
        const bool included = std::any_of(kept.begin(), kept.end(), [&](const auto& g) {
            return g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end());
        });
        if (!included) kept.push_back(f);
    }

    std::unordered_map<int, int> label;
    Realization out;
    for (auto& f : kept) {
        for (auto& v : f) {
            auto [it, fresh] = label.try_emplace(v, static_cast<int>(label.size()));
            v = it->second;
        }
        std::sort(f.begin(), f.end());
    }
    out.n = static_cast<int>(label.size());
    out.facets = std::move(kept);
    return out;
}

EmpiricalReport empirical_pipeline(const Realization& corpus, long n_samples, const SearchOptions& opts,
                                   std::uint64_t seed, std::optional<scm::SCMConfig> scm_cfg, Mode mode,
                                   int skeleton_guard) {
    EmpiricalReport rep;
    rep.pruned = prune_included(corpus);
    rep.sequence = sequence_of(rep.pruned);
    rep.original = homology::betti_numbers(rep.pruned, skeleton_guard);
    rep.verdict = realize(rep.sequence, opts);
    if (rep.verdict.outcome != Outcome::Simplicial) return rep;
    const auto& constructed = *rep.verdict.realization;
    rep.constructed = homology::betti_numbers(constructed, skeleton_guard);

    auto cfg = scm_cfg.value_or(scm::SCMConfig::defaults_for(rep.sequence.E(), n_samples, seed));
    cfg.n_samples = n_samples;

    constexpr std::size_t kBatch = 64;
    std::vector<Realization> batch;
    auto flush = [&] {
        std::vector<homology::BettiPair> out(batch.size());
        for_each_job(static_cast<std::ptrdiff_t>(batch.size()), mode, 1,
                     [&](std::size_t i) { out[i] = homology::betti_numbers(batch[i], skeleton_guard); });
        rep.samples.insert(rep.samples.end(), out.begin(), out.end());
        batch.clear();
    };
    scm::run_chain(constructed, cfg, [&](long, const Realization& r) {
        batch.push_back(r);
        if (batch.size() == kBatch) flush();
    });
    flush();

    for (const auto& b : rep.samples) {
        rep.mean_beta0 += static_cast<double>(b.beta0);
        rep.mean_beta1 += static_cast<double>(b.beta1);
        ++rep.histogram[{b.beta0, b.beta1}];
    }
    if (!rep.samples.empty()) {
        rep.mean_beta0 /= static_cast<double>(rep.samples.size());
        rep.mean_beta1 /= static_cast<double>(rep.samples.size());
    }
    return rep;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Quartiles quartiles(const std::vector<double>& values) {
    return {quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0;
    double sxx = 0;
    double syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> median_smooth3(const std::vector<double>& values) {
    if (values.size() < 3) return values;
    std::vector<double> out(values);
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        std::array<double, 3> w{values[i - 1], values[i], values[i + 1]};
        std::sort(w.begin(), w.end());
        out[i] = w[1];
    }
    return out;
}

bool is_unimodal(const std::vector<double>& values) {
    const auto s = median_smooth3(values);
    if (s.size() < 3) return false;
    const auto peak = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
    if (peak == 0 || peak + 1 == s.size()) return false;
    for (std::size_t i = 1; i <= peak; ++i)
        if (s[i] < s[i - 1]) return false;
    for (std::size_t i = peak + 1; i < s.size(); ++i)
        if (s[i] > s[i - 1]) return false;
    return true;
}

namespace {

void write_list(std::ostream& out, const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<HardnessRecord>& records, bool timing) {
    out << "index,degrees,sizes,outcome,tau_b,tau_r,tau_c" << (timing ? ",wall_ms" : "") << '\n';
    for (const auto& r : records) {
        out << r.index << ',';
        write_list(out, r.instance.degrees);
        out << ',';
        write_list(out, r.instance.sizes);
        out << ',' << to_string(r.outcome) << ',' << r.stats.tau_b << ',' << r.stats.tau_r << ',' << r.stats.tau_c();
        if (timing) out << ',' << r.wall_ms;
        out << '\n';
    }
}

void write_random_pairs_csv(std::ostream& out, const std::vector<RandomPairsRow>& rows) {
    out << "E,N,S,P,S_p,s,s_lo,s_hi,p,p_lo,p_hi,s_p,s_p_lo,s_p_hi\n";
    for (const auto& r : rows)
        out << r.E << ',' << r.N << ',' << r.simplicial << ',' << r.polynomial << ',' << r.simplicial_polynomial << ','
            << r.s.value << ',' << r.s.lo << ',' << r.s.hi << ',' << r.p.value << ',' << r.p.lo << ',' << r.p.hi << ','
            << r.s_p.value << ',' << r.s_p.lo << ',' << r.s_p.hi << '\n';
}

void write_betti_scan_csv(std::ostream& out, const std::vector<BettiScanRecord>& rows) {
    out << "grid_index,lambda_s,lambda_d,d,mean_size,mean_degree,replicates,rejected_draws,unreachable,"
           "beta0_q25,beta0_median,beta0_q75,beta1_q25,beta1_median,beta1_q75\n";
    for (const auto& r : rows)
        out << r.grid_index << ',' << r.point.lambda_s << ',' << r.point.lambda_d << ',' << r.point.d << ','
            << r.mean_size << ',' << r.mean_degree << ',' << r.replicates << ',' << r.rejected_draws << ','
            << (r.unreachable ? 1 : 0) << ',' << r.beta0.q25 << ',' << r.beta0.median << ',' << r.beta0.q75 << ','
            << r.beta1.q25 << ',' << r.beta1.median << ',' << r.beta1.q75 << '\n';
}

}  // namespace simplicial::experiments
