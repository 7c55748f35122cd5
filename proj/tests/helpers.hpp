#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simplicial/sequence.hpp"

namespace test_support {

inline simplicial::DegreeSizeSequence seq(std::vector<int> d, std::vector<int> s) {
    return simplicial::normalize_sequence(d, s);
}

inline simplicial::Realization facets(int n, std::vector<std::vector<int>> f) { return {n, std::move(f)}; }

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(SIMPLICIAL_FIXTURES) / name;
}

}  // namespace test_support
