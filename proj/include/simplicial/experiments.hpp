#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "simplicial/homology.hpp"
#include "simplicial/realizer.hpp"
#include "simplicial/scm.hpp"
#include "simplicial/sequence.hpp"

namespace simplicial::experiments {

// Serial runs the reference loop; Parallel runs the OpenMP kernel. Both
// produce identical records.
enum class Mode { Serial, Parallel };

struct Instance {
    std::vector<int> degrees;
    std::vector<int> sizes;
};

struct HardnessRecord {
    std::size_t index = 0;
    Instance instance;
    Outcome outcome = Outcome::NonSimplicial;
    ConvergenceStats stats;
    double wall_ms = 0.0;
};

std::vector<HardnessRecord> solve_batch(const std::vector<Instance>& instances, const SearchOptions& opts,
                                        Mode mode = Mode::Parallel);

inline constexpr int kGridGuard = 20;

struct GridScan {
    int E = 0;
    std::vector<std::vector<int>> partitions;  // ascending-composition order
    std::vector<HardnessRecord> records;       // row = degree partition, column = size partition
    double hard_fraction = 0.0;
    double simplicial_fraction = 0.0;
};

GridScan scan_all_pairs(int E, const SearchOptions& opts, Mode mode = Mode::Parallel, int guard = kGridGuard);

struct UniformSizesScan {
    int degree_total = 0;
    int size_value = 0;
    int facet_count = 0;
    bool sampled = false;
    std::vector<HardnessRecord> records;
    double easy_fraction = 0.0;
    // Over degree partitions whose largest part does not exceed facet_count.
    double easy_fraction_feasible = 0.0;
    std::size_t feasible_count = 0;
    std::map<std::int64_t, std::size_t> tau_histogram;
};

// sample_count == 0 enumerates every partition of degree_total.
UniformSizesScan scan_uniform_sizes(int degree_total, int size_value, int facet_count, std::size_t sample_count,
                                    const SearchOptions& opts, std::uint64_t seed, Mode mode = Mode::Parallel);

struct FractionEstimate {
    double value = 0.0;
    double lo = 0.0;  // Wilson 95% interval
    double hi = 0.0;
};

FractionEstimate wilson(std::size_t hits, std::size_t total);

struct RandomPairsRow {
    int E = 0;
    std::size_t N = 0;
    std::size_t simplicial = 0;
    std::size_t polynomial = 0;
    std::size_t simplicial_polynomial = 0;
    FractionEstimate s, p, s_p;
};

std::vector<RandomPairsRow> scan_random_pairs(const std::vector<int>& sizes_E, std::size_t N, const SearchOptions& opts,
                                              std::uint64_t seed, Mode mode = Mode::Parallel);

enum class Family { Poisson, Regular };

struct GridPoint {
    double lambda_s = 1.0;
    double lambda_d = 1.0;  // Poisson family
    int d = 1;              // regular family
};

struct BettiScanConfig {
    Family family = Family::Poisson;
    long E = 1000;
    std::vector<GridPoint> grid;
    int replicates = 100;
    int scm_samples = 10;
    // SCM burn-in and gap as multiples of E.
    long burn_in_per_E = 50;
    long gap_per_E = 10;
    // Consecutive non-simplicial draws tolerated per replicate.
    int rejection_cap = 200;
    // Largest facet the Betti computation accepts.
    int skeleton_guard = homology::kSkeletonGuard;
    SearchOptions search;
    std::uint64_t seed = 1;
};

struct Quartiles {
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
};

struct BettiScanRecord {
    std::size_t grid_index = 0;
    GridPoint point;
    double mean_degree = 0.0;  // averaged over accepted replicates
    double mean_size = 0.0;
    std::size_t replicates = 0;
    std::size_t rejected_draws = 0;
    bool unreachable = false;
    std::vector<double> beta0_means;  // one per replicate
    std::vector<double> beta1_means;
    Quartiles beta0, beta1;
};

std::vector<BettiScanRecord> betti_scan(const BettiScanConfig& cfg, Mode mode = Mode::Parallel);

// Mean (beta0, beta1) over SCM samples seeded by one realization.
std::pair<double, double> scm_betti_means(const Realization& seed, const scm::SCMConfig& cfg,
                                          int skeleton_guard = homology::kSkeletonGuard);

// Drops duplicate facets and facets contained in another; relabels nodes
// to 0..n-1 in order of first appearance.
Realization prune_included(const Realization& corpus);

struct EmpiricalReport {
    Realization pruned;
    DegreeSizeSequence sequence;
    SolverVerdict verdict;
    std::optional<homology::BettiPair> constructed;
    homology::BettiPair original;
    std::vector<homology::BettiPair> samples;
    double mean_beta0 = 0.0;
    double mean_beta1 = 0.0;
    std::map<std::pair<long, long>, std::size_t> histogram;
};

// The SCM runs from the constructed realization.
EmpiricalReport empirical_pipeline(const Realization& corpus, long n_samples, const SearchOptions& opts,
                                   std::uint64_t seed, std::optional<scm::SCMConfig> scm_cfg = std::nullopt,
                                   Mode mode = Mode::Parallel, int skeleton_guard = homology::kSkeletonGuard);

// Statistics used by the scan checks.
double quantile(std::vector<double> values, double q);
Quartiles quartiles(const std::vector<double>& values);
double spearman(const std::vector<double>& x, const std::vector<double>& y);
std::vector<double> median_smooth3(const std::vector<double>& values);
// Argmax strictly inside the curve, nondecreasing before it and
// nonincreasing after it, evaluated on the median-smoothed curve.
bool is_unimodal(const std::vector<double>& values);

// CSV writers with stable headers.
void write_records_csv(std::ostream& out, const std::vector<HardnessRecord>& records, bool timing = false);
void write_random_pairs_csv(std::ostream& out, const std::vector<RandomPairsRow>& rows);
void write_betti_scan_csv(std::ostream& out, const std::vector<BettiScanRecord>& rows);

}  // namespace simplicial::experiments
