#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"

using simplicial::cli::run;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "simplicial_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("check reports simplicial sequences") {
        const auto r = invoke({"--quiet", "check", "--input", test_support::fixture("mixed14.seq").string()});
        CHECK(r.code == simplicial::cli::kOk);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["outcome"] == "simplicial");
        CHECK(j["tau_c"] == 1);
    }

    TEST_CASE("non-simplicial exit code") {
        const auto r = invoke({"--quiet", "check", "--input", test_support::fixture("twin22.seq").string()});
        CHECK(r.code == simplicial::cli::kNonSimplicial);
        CHECK(nlohmann::json::parse(r.out)["outcome"] == "non_simplicial");
    }

    TEST_CASE("usage and data errors") {
        CHECK(invoke({"--quiet", "check"}).code == simplicial::cli::kUsage);
        CHECK(invoke({"--quiet", "frobnicate"}).code == simplicial::cli::kUsage);
        CHECK(invoke({"--quiet", "--format", "xml", "check", "--input", "x"}).code == simplicial::cli::kUsage);
        const auto bad = write_file("bad.seq", "1 2 x\n3\n");
        CHECK(invoke({"--quiet", "check", "--input", bad}).code == simplicial::cli::kDataError);
        const auto zero = write_file("zero.seq", "0 2\n2\n");
        CHECK(invoke({"--quiet", "check", "--input", zero}).code == simplicial::cli::kDataError);
    }

    TEST_CASE("realize then betti") {
        const auto facets = scratch("mixed14.facets").string();
        const auto r = invoke({"--quiet", "realize", "--input", test_support::fixture("mixed14.seq").string(), "--output", facets});
        REQUIRE(r.code == simplicial::cli::kOk);
        const auto b = invoke({"--quiet", "betti", "--facets", facets});
        CHECK(b.code == simplicial::cli::kOk);
        const auto j = nlohmann::json::parse(b.out);
        CHECK(j.contains("beta0"));
        CHECK(j.contains("beta1"));

        const auto h = invoke({"--quiet", "betti", "--facets", test_support::fixture("hollow_triangle.facets").string()});
        const auto hj = nlohmann::json::parse(h.out);
        CHECK(hj["beta0"] == 1);
        CHECK(hj["beta1"] == 1);
    }

    TEST_CASE("cutoff exit code") {
        const auto r = invoke({"--quiet", "--cutoff", "0", "check", "--input", test_support::fixture("mixed14.seq").string()});
        CHECK(r.code == simplicial::cli::kCutoff);
    }

    TEST_CASE("resolved config goes to stderr") {
        const auto r = invoke({"--seed", "5", "check", "--input", test_support::fixture("mixed14.seq").string()});
        CHECK(r.err.find("seed") != std::string::npos);
        CHECK(invoke({"--quiet", "check", "--input", test_support::fixture("mixed14.seq").string()}).err.empty());
    }

    TEST_CASE("generated sequences are deterministic") {
        const auto a = invoke({"--quiet", "--seed", "3", "gen", "partition", "--E", "20", "--count", "3"});
        const auto b = invoke({"--quiet", "--seed", "3", "gen", "partition", "--E", "20", "--count", "3"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }

    TEST_CASE("oracle subcommand") {
        const auto r = invoke({"--quiet", "oracle", "--input", test_support::fixture("mixed14.seq").string()});
        CHECK(r.code == simplicial::cli::kOk);
        CHECK(nlohmann::json::parse(r.out)["count"] == 1304);
    }

    TEST_CASE("scm streams Betti numbers") {
        const auto r = invoke({"--quiet", "scm", "--facets", test_support::fixture("hollow_triangle.facets").string(),
                               "--samples", "4", "--emit-betti"});
        CHECK(r.code == simplicial::cli::kOk);
        std::istringstream lines(r.out);
        int count = 0;
        for (std::string line; std::getline(lines, line);) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            CHECK(j["beta1"] == 1);
            ++count;
        }
        CHECK(count == 4);
    }

    TEST_CASE("grid ensemble emits csv") {
        const auto r = invoke({"--quiet", "ensemble", "grid", "--E", "4"});
        CHECK(r.code == simplicial::cli::kOk);
        CHECK(r.out.rfind("index,degrees,sizes,outcome", 0) == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 26);
    }
}
