#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "helpers.hpp"
#include "simplicial/oracle.hpp"
#include "simplicial/realizer.hpp"
#include "simplicial/scm.hpp"

using namespace simplicial;
using test_support::facets;
using test_support::seq;

namespace {

double chi_square_p(const std::vector<double>& observed, double expected) {
    double stat = 0.0;
    for (double o : observed) stat += (o - expected) * (o - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST_SUITE("scm") {
    TEST_CASE("proposals are uniform over unordered incidence pairs") {
        scm::Chain chain(facets(5, {{0, 1, 2}, {0, 3}, {1, 4}}), 99);
        const std::size_t M = chain.incidences().size();
        REQUIRE(M == 7);
        std::map<std::pair<std::size_t, std::size_t>, double> counts;
        const int draws = 1000000;
        for (int k = 0; k < draws; ++k) {
            const auto p = chain.propose();
            REQUIRE(p.first != p.second);
            counts[{std::min(p.first, p.second), std::max(p.first, p.second)}] += 1;
        }
        REQUIRE(counts.size() == M * (M - 1) / 2);
        std::vector<double> observed;
        for (const auto& [pair, c] : counts) observed.push_back(c);
        CHECK(chi_square_p(observed, static_cast<double>(draws) / static_cast<double>(observed.size())) > 0.001);
    }

    TEST_CASE("step outcomes") {
        // incidences are listed facet by facet, members ascending
        scm::Chain chain(facets(4, {{0, 1}, {2, 3}, {1, 2}}), 1);
        const auto& inc = chain.incidences();
        REQUIRE(inc.size() == 6);
        CHECK(inc[0].facet == 0);
        CHECK(inc[0].node == 0);
        CHECK(inc[3].node == 3);

        CHECK(chain.check({0, 1}) == scm::StepResult::Identity);       // same facet
        CHECK(chain.check({1, 4}) == scm::StepResult::Identity);       // same node
        CHECK(chain.check({0, 4}) == scm::StepResult::RejectedDuplicate);
        // {0,1},{2,3} -> {0,3},{2,1}: {1,2} duplicates facet 2
        CHECK(chain.check({1, 3}) == scm::StepResult::RejectedInclusion);
        // {0,1},{2,3} -> {2,1},{0,3}
        CHECK(chain.apply({0, 2}) == scm::StepResult::RejectedInclusion);
        CHECK(chain.apply({0, 3}) == scm::StepResult::Accepted);
        CHECK(chain.snapshot().facets == std::vector<std::vector<int>>{{1, 3}, {0, 2}, {1, 2}});
        CHECK(chain.diagnostics().steps == 2);
        CHECK(chain.diagnostics().accepted == 1);
        CHECK(chain.diagnostics().rejected_inclusion == 1);
    }

    TEST_CASE("accepted swaps are reversible") {
        const auto start = facets(8, {{0, 1, 2, 4}, {0, 1, 3}, {0, 5}, {1, 6}, {2, 3}, {7}});
        scm::Chain chain(start, 5);
        int reversed = 0;
        for (int k = 0; k < 500; ++k) {
            const auto before = chain.snapshot();
            const auto p = chain.propose();
            if (chain.apply(p) != scm::StepResult::Accepted) continue;
            CHECK(chain.check(p) == scm::StepResult::Accepted);
            chain.apply(p);
            CHECK(chain.snapshot() == before);
            chain.step();
            ++reversed;
        }
        CHECK(reversed > 20);
    }

    TEST_CASE("every state keeps the sequence and stays simplicial") {
        const auto s = seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1});
        const auto start = *realize(s).realization;
        scm::Chain chain(start, 17);
        for (int k = 0; k < 5000; ++k) {
            chain.step();
            const auto snap = chain.snapshot();
            REQUIRE(verify_realization(s, snap));
        }
        const auto& d = chain.diagnostics();
        CHECK(d.steps == 5000);
        CHECK(d.accepted + d.identity + d.rejected_duplicate + d.rejected_inclusion == d.steps);
        CHECK(d.accepted > 0);
    }

    TEST_CASE("samples are uniform over realizations") {
        const auto s = seq({2, 2, 1, 1, 1}, {3, 2, 2});
        const auto all = oracle::enumerate_realizations(s);
        REQUIRE(all.count() == 12);
        std::map<std::vector<std::vector<int>>, double> counts;
        for (const auto& r : all.members) counts[r.facets] = 0;

        scm::SCMConfig cfg;
        cfg.burn_in = 500;
        cfg.gap = 70;
        cfg.n_samples = 12000;
        cfg.seed = 2024;
        scm::run_chain(*realize(s).realization, cfg, [&](long, const Realization& r) {
            const auto key = oracle::canonical(r).facets;
            REQUIRE(counts.count(key) == 1);
            counts[key] += 1;
        });
        std::vector<double> observed;
        for (const auto& [k, c] : counts) observed.push_back(c);
        CHECK(chi_square_p(observed, 1000.0) > 0.001);
    }

    TEST_CASE("chain runs are reproducible and honour the schedule") {
        const auto start = facets(8, {{0, 1, 2, 4}, {0, 1, 3}, {0, 5}, {1, 6}, {2, 3}, {7}});
        const auto cfg = scm::SCMConfig::defaults_for(14, 5, 42);
        CHECK(cfg.burn_in == 700);
        CHECK(cfg.gap == 140);
        const auto a = scm::sample_ensemble(start, cfg);
        const auto b = scm::sample_ensemble(start, cfg);
        CHECK(a.samples == b.samples);
        CHECK(a.samples.size() == 5);
        CHECK(a.diagnostics.steps == 700 + 4 * 140);

        scm::SCMConfig bad;
        bad.gap = 0;
        CHECK_THROWS(scm::sample_ensemble(start, bad));
    }

    TEST_CASE("uniform index") {
        std::mt19937_64 rng(3);
        std::vector<double> counts(6, 0.0);
        for (int k = 0; k < 60000; ++k) counts[scm::uniform_index(rng, 6)] += 1;
        CHECK(chi_square_p(counts, 10000.0) > 0.001);
    }
}
