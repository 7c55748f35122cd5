#include "cli.hpp"

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simplicial/experiments.hpp"
#include "simplicial/homology.hpp"
#include "simplicial/io.hpp"
#include "simplicial/oracle.hpp"
#include "simplicial/realizer.hpp"
#include "simplicial/scm.hpp"
#include "simplicial/seqgen.hpp"

namespace simplicial::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Globals {
    std::uint64_t seed = 1;
    std::int64_t cutoff = kDefaultCutoff;
    std::string format = "json";
    bool quiet = false;
    int jobs = 0;
    bool no_symmetry = false;
    std::string order = "input";
    int skeleton_guard = homology::kSkeletonGuard;
};

SearchOptions search_options(const Globals& g) {
    SearchOptions o;
    o.cutoff = g.cutoff;
    o.symmetry_pruning = !g.no_symmetry;
    o.order = g.order == "residual" ? CandidateOrder::ResidualDegree : CandidateOrder::InputDegree;
    return o;
}

DegreeSizeSequence load_sequence(const std::string& path) {
    auto raw = io::read_sequence_file(path);
    return normalize_sequence(raw.degrees, raw.sizes);
}

int verdict_exit(Outcome o) {
    switch (o) {
        case Outcome::Simplicial: return kOk;
        case Outcome::NonSimplicial: return kNonSimplicial;
        case Outcome::Cutoff: return kCutoff;
    }
    return kOk;
}

json verdict_json(const SolverVerdict& v) {
    json j{{"outcome", to_string(v.outcome)},
           {"tau_b", v.stats.tau_b},
           {"tau_r", v.stats.tau_r},
           {"tau_c", v.stats.tau_c()}};
    if (v.trivial != RejectReason::None) j["reason"] = to_string(v.trivial);
    json rules;
    for (std::size_t k = 0; k < kRuleCount; ++k)
        if (v.rejections_by_rule[k]) rules[std::string(to_string(static_cast<Rule>(k)))] = v.rejections_by_rule[k];
    if (!rules.is_null()) j["rejections"] = rules;
    return j;
}

void emit(std::ostream& out, const json& j, const Globals& g) {
    if (g.format == "json") {
        out << j.dump() << '\n';
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) out << it.key() << ": " << it.value().dump() << '\n';
}

std::vector<double> parse_doubles(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

template <class Write>
void with_output(const std::string& path, std::ostream& fallback, Write&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write(f);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Degree-size sequence realization, SCM sampling and Betti analysis", "simplicial"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
    app.add_option("--cutoff", g.cutoff, "Search cutoff on tau_c")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Suppress the resolved-config log on stderr");
    app.add_option("--jobs", g.jobs, "Worker threads (0 = available parallelism)")->check(CLI::NonNegativeNumber);
    app.add_flag("--no-symmetry", g.no_symmetry, "Disable symmetry pruning in the search");
    app.add_option("--skeleton-guard", g.skeleton_guard, "Largest facet accepted by Betti computations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--order", g.order, "Candidate node order")->check(CLI::IsMember({"input", "residual"}));

    // check / realize
    std::string input;
    std::string output;
    bool input_labels = false;
    auto* check = app.add_subcommand("check", "Decide simpliciality of a sequence file");
    check->add_option("--input", input, "Sequence file")->required()->check(CLI::ExistingFile);
    auto* realize_cmd = app.add_subcommand("realize", "Construct a realization of a sequence file");
    realize_cmd->add_option("--input", input, "Sequence file")->required()->check(CLI::ExistingFile);
    realize_cmd->add_option("--output", output, "Facet-list output file");
    realize_cmd->add_flag("--input-labels", input_labels, "Label nodes by their input position");

    // betti
    std::string facets;
    auto* betti = app.add_subcommand("betti", "Betti numbers of a facet list");
    betti->add_option("--facets", facets, "Facet-list file")->required()->check(CLI::ExistingFile);

    // scm
    long burn_in = -1;
    long gap = -1;
    long samples = 0;
    bool emit_betti = false;
    std::string out_dir;
    auto* scm_cmd = app.add_subcommand("scm", "Sample the SCM from a seed realization");
    scm_cmd->add_option("--facets", facets, "Seed facet-list file")->required()->check(CLI::ExistingFile);
    scm_cmd->add_option("--burn-in", burn_in, "Burn-in steps (default 50 E)");
    scm_cmd->add_option("--gap", gap, "Steps between samples (default 10 E)");
    scm_cmd->add_option("--samples", samples, "Retained samples")->required()->check(CLI::NonNegativeNumber);
    scm_cmd->add_flag("--emit-betti", emit_betti, "Stream Betti numbers of each sample as JSON lines");
    scm_cmd->add_option("--out-dir", out_dir, "Write each sample as sample_<i>.facets here");

    // gen
    long E = 0;
    double lambda_d = 2.0;
    double lambda_s = 2.0;
    int degree = 1;
    int count = 1;
    std::string prefix;
    auto* gen = app.add_subcommand("gen", "Generate random degree-size sequences");
    gen->require_subcommand(1);
    auto add_gen_opts = [&](CLI::App* c) {
        c->add_option("--E", E, "Instance size")->required()->check(CLI::PositiveNumber);
        c->add_option("--count", count, "Number of sequences")->check(CLI::PositiveNumber);
        c->add_option("--output-prefix", prefix, "Write <prefix>_<i>.seq files instead of stdout");
    };
    auto* gen_partition = gen->add_subcommand("partition", "Two independent uniform partitions of E");
    add_gen_opts(gen_partition);
    auto* gen_poisson = gen->add_subcommand("poisson", "Poisson-Poisson pair");
    add_gen_opts(gen_poisson);
    gen_poisson->add_option("--lambda-d", lambda_d)->check(CLI::PositiveNumber);
    gen_poisson->add_option("--lambda-s", lambda_s)->check(CLI::PositiveNumber);
    auto* gen_regular = gen->add_subcommand("regular", "Poisson sizes with d-regular degrees");
    add_gen_opts(gen_regular);
    gen_regular->add_option("--d", degree)->check(CLI::PositiveNumber);
    gen_regular->add_option("--lambda-s", lambda_s)->check(CLI::PositiveNumber);

    // oracle
    long guard = oracle::kDefaultGuard;
    bool list = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustively enumerate realizations of a small sequence");
    oracle_cmd->add_option("--input", input, "Sequence file")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_option("--guard", guard, "Largest E the enumeration accepts");
    oracle_cmd->add_flag("--list", list, "Include every realization in the output");

    // ensemble
    auto* ens = app.add_subcommand("ensemble", "Reproduction harness");
    ens->require_subcommand(1);
    std::string csv;
    bool timing = false;
    auto add_csv = [&](CLI::App* c) {
        c->add_option("--csv", csv, "CSV output file (default: stdout, summary to stderr)");
        c->add_flag("--timing", timing, "Include wall-clock columns");
    };
    int grid_E = 13;
    auto* ens_grid = ens->add_subcommand("grid", "All partition pairs of E");
    ens_grid->add_option("--E", grid_E)->check(CLI::Range(1, experiments::kGridGuard));
    add_csv(ens_grid);

    int e_d = 60;
    int s_value = 3;
    int m = 20;
    std::size_t sample_count = 1000;
    auto* ens_uniform = ens->add_subcommand("uniform-sizes", "Fixed uniform sizes, varying degree partitions");
    ens_uniform->add_option("--E-d", e_d, "Degree total");
    ens_uniform->add_option("--s", s_value, "Common facet size");
    ens_uniform->add_option("--m", m, "Facet count");
    ens_uniform->add_option("--samples", sample_count, "Sampled partitions (0 = all partitions)");
    add_csv(ens_uniform);

    std::string e_list = "10,20,40,80,160";
    std::size_t n_pairs = 1000;
    auto* ens_random = ens->add_subcommand("random-pairs", "Random uniform partition pairs per E");
    ens_random->add_option("--E-list", e_list, "Comma-separated instance sizes");
    ens_random->add_option("--N", n_pairs, "Pairs per E");
    add_csv(ens_random);

    std::string family = "poisson";
    long scan_E = 200;
    std::string ls_list = "0.5,1,2,3,4,6,8,12";
    std::string ld_list = "2";
    std::string d_list = "2";
    int replicates = 100;
    int scm_samples = 10;
    auto* ens_betti = ens->add_subcommand("betti-scan", "Mean Betti numbers of SCM ensembles over a grid");
    ens_betti->add_option("--family", family)->check(CLI::IsMember({"poisson", "regular"}));
    ens_betti->add_option("--E", scan_E)->check(CLI::PositiveNumber);
    ens_betti->add_option("--lambda-s", ls_list, "Comma-separated size means");
    ens_betti->add_option("--lambda-d", ld_list, "Comma-separated degree means (poisson)");
    ens_betti->add_option("--d", d_list, "Comma-separated degrees (regular)");
    ens_betti->add_option("--replicates", replicates)->check(CLI::NonNegativeNumber);
    ens_betti->add_option("--scm-samples", scm_samples)->check(CLI::NonNegativeNumber);
    add_csv(ens_betti);

    long emp_samples = 10000;
    std::string histogram;
    auto* ens_emp = ens->add_subcommand("empirical", "Realize an empirical corpus and compare with the SCM");
    ens_emp->add_option("--facets", facets, "Facet-list corpus")->required()->check(CLI::ExistingFile);
    ens_emp->add_option("--samples", emp_samples)->check(CLI::NonNegativeNumber);
    ens_emp->add_option("--histogram", histogram, "Write the joint (beta0, beta1) histogram CSV here");
    ens_emp->add_option("--output", output, "Write the constructed realization here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const CLI::App* sub = &app;
        for (auto* s : app.get_subcommands()) {
            sub = s;
            for (auto* t : s->get_subcommands()) sub = t;
        }
        err << sub->help();
        return kUsage;
    }

    if (g.jobs > 0) omp_set_num_threads(g.jobs);
    if (!g.quiet) {
        json cfg{{"command", args}, {"seed", g.seed}, {"cutoff", g.cutoff}, {"format", g.format},
                 {"jobs", g.jobs > 0 ? g.jobs : omp_get_max_threads()}, {"symmetry_pruning", !g.no_symmetry},
                 {"order", g.order}, {"skeleton_guard", g.skeleton_guard}};
        err << "config " << cfg.dump() << '\n';
    }
    const auto opts = search_options(g);

    try {
        if (check->parsed() || realize_cmd->parsed()) {
            const auto seq = load_sequence(input);
            const auto v = realize(seq, opts);
            auto j = verdict_json(v);
            if (realize_cmd->parsed() && v.realization) {
                auto real = input_labels ? to_input_labels(seq, *v.realization) : *v.realization;
                if (!output.empty()) {
                    io::write_facets_file(output, real);
                    j["facets_file"] = output;
                } else {
                    j["facets"] = real.facets;
                }
            }
            emit(out, j, g);
            return verdict_exit(v.outcome);
        }

        if (betti->parsed()) {
            const auto rep = homology::analyze(io::read_facets_file(facets), g.skeleton_guard);
            emit(out, {{"beta0", rep.betti.beta0}, {"beta1", rep.betti.beta1}, {"n0", rep.n0}, {"n1", rep.n1}, {"n2", rep.n2}}, g);
            return kOk;
        }

        if (scm_cmd->parsed()) {
            const auto seed_real = io::read_facets_file(facets);
            const auto seq = sequence_of(seed_real);
            if (has_inclusion(seed_real)) throw InvalidInput("seed facet list violates the no-inclusion constraint");
            auto cfg = scm::SCMConfig::defaults_for(seq.E(), samples, g.seed);
            if (burn_in >= 0) cfg.burn_in = burn_in;
            if (gap >= 1) cfg.gap = gap;
            if (!out_dir.empty()) fs::create_directories(out_dir);
            const auto diag = scm::run_chain(seed_real, cfg, [&](long i, const Realization& r) {
                json j{{"sample", i}};
                if (!out_dir.empty()) {
                    const auto path = fs::path(out_dir) / ("sample_" + std::to_string(i) + ".facets");
                    io::write_facets_file(path, r);
                    j["facets_file"] = path.string();
                }
                if (emit_betti) {
                    const auto b = homology::betti_numbers(r, g.skeleton_guard);
                    j["beta0"] = b.beta0;
                    j["beta1"] = b.beta1;
                }
                if (emit_betti || !out_dir.empty()) out << j.dump() << '\n';
            });
            if (!g.quiet)
                err << "chain " << json{{"steps", diag.steps}, {"accepted", diag.accepted}, {"identity", diag.identity},
                                        {"rejected_duplicate", diag.rejected_duplicate},
                                        {"rejected_inclusion", diag.rejected_inclusion}}.dump()
                    << '\n';
            return kOk;
        }

        if (gen->parsed()) {
            seqgen::Rng rng(g.seed);
            std::unique_ptr<seqgen::PartitionSampler> sampler;
            if (gen_partition->parsed()) sampler = std::make_unique<seqgen::PartitionSampler>(static_cast<int>(E));
            for (int i = 0; i < count; ++i) {
                std::vector<int> d;
                std::vector<int> s;
                std::string note;
                if (gen_partition->parsed()) {
                    d = (*sampler)(static_cast<int>(E), rng);
                    s = (*sampler)(static_cast<int>(E), rng);
                } else {
                    const auto pair = gen_poisson->parsed() ? seqgen::poisson_pair({E, lambda_d, lambda_s}, rng)
                                                            : seqgen::regular_degree_pair(E, degree, lambda_s, rng);
                    d = pair.sequence.degrees;
                    s = pair.sequence.sizes;
                    std::ostringstream n;
                    n << "# matched_nodes=" << pair.matched_nodes << " mean_degree=" << pair.mean_degree
                      << " mean_size=" << pair.mean_size << '\n';
                    note = n.str();
                }
                if (prefix.empty()) {
                    out << "# sequence " << i << '\n' << note;
                    io::write_sequence(out, d, s);
                } else {
                    const auto path = prefix + "_" + std::to_string(i) + ".seq";
                    std::ofstream f(path);
                    if (!f) throw std::runtime_error("cannot write " + path);
                    f << note;
                    io::write_sequence(f, d, s);
                    out << json{{"sequence", i}, {"file", path}}.dump() << '\n';
                }
            }
            return kOk;
        }

        if (oracle_cmd->parsed()) {
            const auto seq = load_sequence(input);
            const auto set = oracle::enumerate_realizations(seq, guard);
            json j{{"count", set.count()}, {"simplicial", set.count() > 0}};
            if (list) j["realizations"] = [&] {
                json arr = json::array();
                for (const auto& r : set.members) arr.push_back(r.facets);
                return arr;
            }();
            emit(out, j, g);
            return kOk;
        }

        if (ens->parsed()) {
            auto finish = [&](const json& summary, auto&& write_csv) {
                if (csv.empty()) {
                    write_csv(out);
                    err << "summary " << summary.dump() << '\n';
                } else {
                    with_output(csv, out, write_csv);
                    emit(out, summary, g);
                }
            };
            if (ens_grid->parsed()) {
                const auto scan = experiments::scan_all_pairs(grid_E, opts);
                std::size_t cutoffs = 0;
                for (const auto& r : scan.records) cutoffs += r.outcome == Outcome::Cutoff;
                finish({{"E", grid_E}, {"partitions", scan.partitions.size()}, {"instances", scan.records.size()},
                        {"hard_fraction", scan.hard_fraction}, {"simplicial_fraction", scan.simplicial_fraction},
                        {"cutoffs", cutoffs}},
                       [&](std::ostream& o) { experiments::write_records_csv(o, scan.records, timing); });
                return kOk;
            }
            if (ens_uniform->parsed()) {
                const auto scan = experiments::scan_uniform_sizes(e_d, s_value, m, sample_count, opts, g.seed);
                json hist = json::object();
                for (const auto& [tau, c] : scan.tau_histogram) hist[std::to_string(tau)] = c;
                finish({{"degree_total", e_d}, {"size", s_value}, {"facets", m}, {"sampled", scan.sampled},
                        {"instances", scan.records.size()}, {"easy_fraction", scan.easy_fraction},
                        {"feasible_instances", scan.feasible_count},
                        {"easy_fraction_feasible", scan.easy_fraction_feasible}, {"tau_c_histogram", hist}},
                       [&](std::ostream& o) { experiments::write_records_csv(o, scan.records, timing); });
                return kOk;
            }
            if (ens_random->parsed()) {
                std::vector<int> es;
                for (double x : parse_doubles(e_list)) es.push_back(static_cast<int>(x));
                const auto rows = experiments::scan_random_pairs(es, n_pairs, opts, g.seed);
                json summary = json::array();
                for (const auto& r : rows) summary.push_back({{"E", r.E}, {"s", r.s.value}, {"p", r.p.value}, {"s_p", r.s_p.value}});
                finish({{"rows", summary}}, [&](std::ostream& o) { experiments::write_random_pairs_csv(o, rows); });
                return kOk;
            }
            if (ens_betti->parsed()) {
                experiments::BettiScanConfig cfg;
                cfg.family = family == "regular" ? experiments::Family::Regular : experiments::Family::Poisson;
                cfg.E = scan_E;
                cfg.replicates = replicates;
                cfg.scm_samples = scm_samples;
                cfg.search = opts;
                cfg.seed = g.seed;
                cfg.skeleton_guard = g.skeleton_guard;
                const auto degree_params = parse_doubles(cfg.family == experiments::Family::Poisson ? ld_list : d_list);
                for (double dp : degree_params)
                    for (double ls : parse_doubles(ls_list)) {
                        experiments::GridPoint pt;
                        pt.lambda_s = ls;
                        pt.lambda_d = dp;
                        pt.d = static_cast<int>(dp);
                        cfg.grid.push_back(pt);
                    }
                const auto rows = experiments::betti_scan(cfg);
                std::size_t unreachable = 0;
                for (const auto& r : rows) unreachable += r.unreachable;
                finish({{"family", family}, {"E", scan_E}, {"grid_points", rows.size()}, {"unreachable", unreachable}},
                       [&](std::ostream& o) { experiments::write_betti_scan_csv(o, rows); });
                return unreachable ? kPartial : kOk;
            }
            if (ens_emp->parsed()) {
                const auto rep = experiments::empirical_pipeline(io::read_facets_file(facets), emp_samples, opts, g.seed,
                                                             std::nullopt, experiments::Mode::Parallel, g.skeleton_guard);
                json j{{"n", rep.sequence.n()}, {"m", rep.sequence.m()}, {"E", rep.sequence.E()},
                       {"outcome", to_string(rep.verdict.outcome)}, {"tau_c", rep.verdict.stats.tau_c()},
                       {"original", {{"beta0", rep.original.beta0}, {"beta1", rep.original.beta1}}},
                       {"samples", rep.samples.size()}, {"scm_mean_beta0", rep.mean_beta0},
                       {"scm_mean_beta1", rep.mean_beta1}};
                if (rep.constructed) j["constructed"] = {{"beta0", rep.constructed->beta0}, {"beta1", rep.constructed->beta1}};
                if (!output.empty() && rep.verdict.realization) io::write_facets_file(output, *rep.verdict.realization);
                if (!histogram.empty())
                    with_output(histogram, out, [&](std::ostream& o) {
                        o << "beta0,beta1,count\n";
                        for (const auto& [k, c] : rep.histogram) o << k.first << ',' << k.second << ',' << c << '\n';
                    });
                emit(out, j, g);
                return rep.verdict.outcome == Outcome::Simplicial ? kOk : verdict_exit(rep.verdict.outcome);
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    err << app.help();
    return kUsage;
}

}  // namespace simplicial::cli
