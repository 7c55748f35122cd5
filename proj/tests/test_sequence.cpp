#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "simplicial/oracle.hpp"
#include "simplicial/seqgen.hpp"

using namespace simplicial;
using test_support::facets;
using test_support::seq;

TEST_SUITE("core_model") {
    TEST_CASE("normalize sorts nonincreasing and keeps the permutation") {
        const auto s = seq({1, 3, 2}, {3, 3});
        CHECK(s.degrees == std::vector<int>{3, 2, 1});
        CHECK(s.sizes == std::vector<int>{3, 3});
        CHECK(s.E() == 6);
        CHECK(s.degree_origin == std::vector<int>{1, 2, 0});

        const auto mixed14 = seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1});
        CHECK(mixed14.degrees == std::vector<int>{3, 3, 2, 2, 1, 1, 1, 1});
        CHECK(mixed14.E() == 14);
        CHECK(mixed14.n() == 8);
        CHECK(mixed14.m() == 6);
    }

    TEST_CASE("normalize rejects nonpositive entries and empty lists") {
        CHECK_THROWS_AS(seq({0, 1}, {1}), InvalidInput);
        CHECK_THROWS_AS(seq({}, {1}), InvalidInput);
        CHECK_THROWS_AS(seq({1}, {-2}), InvalidInput);
    }

    TEST_CASE("trivial check reasons") {
        CHECK(check_trivial(seq({2, 1}, {2, 2})).reason == RejectReason::SumMismatch);
        CHECK(check_trivial(seq({3, 1}, {2, 2})).reason == RejectReason::DegreeExceedsFacets);
        CHECK(check_trivial(seq({2, 2}, {1, 1, 1, 1})).reason == RejectReason::OnesDeficit);
        CHECK(check_trivial(seq({3, 3, 3}, {4, 3, 2})).reason == RejectReason::SizeExceedsNodes);
        CHECK(check_trivial(seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1})).pass);
    }

    TEST_CASE("trivial rejections have no realizations") {
        for (int E = 1; E <= 8; ++E)
            for (const auto& d : seqgen::all_partitions(E))
                for (int E2 = std::max(1, E - 1); E2 <= E + 1; ++E2)
                    for (const auto& s : seqgen::all_partitions(E2)) {
                        const auto q = seq(d, s);
                        if (!check_trivial(q).pass) CHECK_FALSE(oracle::decide_bruteforce(q));
                    }
    }

    TEST_CASE("pairing the ones") {
        auto p = preprocess_pair_ones(seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1}));
        CHECK(p.reduced.degrees == std::vector<int>{3, 3, 2, 2, 1, 1, 1});
        CHECK(p.reduced.sizes == std::vector<int>{4, 3, 2, 2, 2});
        REQUIRE(p.partial.facets.size() == 1);
        CHECK(p.partial.facets[0] == std::vector<int>{7});

        p = preprocess_pair_ones(seq({1, 1, 1}, {3}));
        CHECK(p.reduced.degrees == std::vector<int>{1, 1, 1});
        CHECK(p.partial.facets.empty());

        p = preprocess_pair_ones(seq({1, 1}, {1, 1}));
        CHECK(p.reduced.degrees.empty());
        CHECK(p.reduced.sizes.empty());
        CHECK(p.partial.facets.size() == 2);

        CHECK_THROWS_AS(preprocess_pair_ones(seq({2, 2}, {1, 1, 1, 1})), std::logic_error);
    }

    TEST_CASE("verify_realization") {
        const auto mixed14 = seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1});
        CHECK(verify_realization(mixed14, facets(8, {{0, 1, 2, 4}, {0, 1, 3}, {0, 5}, {1, 6}, {2, 3}, {7}})));
        CHECK_FALSE(verify_realization(seq({2, 2, 1}, {3, 2}), facets(3, {{0, 1}, {0, 1, 2}})));
        CHECK(verify_realization(seq({1, 1, 1}, {3}), facets(3, {{0, 1, 2}})));
        // duplicate member, wrong node count, out-of-range index
        CHECK_FALSE(verify_realization(seq({2, 1}, {3}), facets(2, {{0, 0, 1}})));
        CHECK_FALSE(verify_realization(seq({1, 1, 1}, {3}), facets(4, {{0, 1, 2}})));
        CHECK_FALSE(verify_realization(seq({1, 1}, {2}), facets(2, {{0, 2}})));
    }

    TEST_CASE("realizations restricted to non-singleton facets verify against the reduced sequence") {
        const auto s = seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1});
        const auto reduced = preprocess_pair_ones(s).reduced;
        for (const auto& r : oracle::enumerate_realizations(s).members) {
            Realization trimmed{r.n, {}};
            std::vector<int> singles;
            for (const auto& f : r.facets) {
                if (f.size() == 1) singles.push_back(f[0]);
                else trimmed.facets.push_back(f);
            }
            // Relabel so that the singleton nodes take the highest labels.
            std::vector<int> label(static_cast<std::size_t>(r.n), -1);
            int next = 0;
            for (int v = 0; v < r.n; ++v)
                if (std::find(singles.begin(), singles.end(), v) == singles.end()) label[static_cast<std::size_t>(v)] = next++;
            trimmed.n = next;
            for (auto& f : trimmed.facets)
                for (auto& v : f) v = label[static_cast<std::size_t>(v)];
            CHECK(verify_realization(reduced, trimmed));
        }
    }

    TEST_CASE("verification is invariant under relabeling") {
        const auto s = seq({3, 3, 2, 2, 1, 1, 1, 1}, {4, 3, 2, 2, 2, 1});
        const auto base = facets(8, {{0, 1, 2, 4}, {0, 1, 3}, {0, 5}, {1, 6}, {2, 3}, {7}});
        std::mt19937 rng(5);
        std::vector<int> perm(8);
        for (int trial = 0; trial < 20; ++trial) {
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto r = base;
            for (auto& f : r.facets)
                for (auto& v : f) v = perm[static_cast<std::size_t>(v)];
            CHECK(verify_realization(s, r));
        }
    }

    TEST_CASE("input relabeling maps sorted labels back") {
        const auto s = seq({1, 2, 1}, {2, 2});
        // sorted label 0 is input node 1
        const auto r = to_input_labels(s, facets(3, {{0, 1}, {0, 2}}));
        CHECK(r.facets[0] == std::vector<int>{0, 1});
        CHECK(r.facets[1] == std::vector<int>{1, 2});
    }

    TEST_CASE("incidence matrix marginals") {
        const auto m = incidence_matrix(facets(4, {{0, 1, 2}, {0, 3}}));
        CHECK(m.row_sums() == std::vector<int>{3, 2});
        CHECK(m.column_sums() == std::vector<int>{2, 1, 1, 1});
    }

    TEST_CASE("convergence stats") {
        ConvergenceStats st{2, 3, false};
        CHECK(st.tau_c() == 5);
        CHECK_FALSE(st.easy());
        CHECK(ConvergenceStats{0, 1, false}.easy());
    }
}
