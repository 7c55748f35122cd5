#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "simplicial/sequence.hpp"

namespace simplicial::io {

// Raw lists as written in a sequence file, before normalization.
struct SequenceText {
    std::vector<int> degrees;
    std::vector<int> sizes;
};

// Two whitespace-separated lines (degrees, then sizes), '#' lines ignored;
// or a JSON object with "degrees" and "sizes" arrays.
SequenceText parse_sequence(std::istream& in);
SequenceText read_sequence_file(const std::filesystem::path& path);
void write_sequence(std::ostream& out, const std::vector<int>& degrees, const std::vector<int>& sizes);

// One facet per line, ascending 0-based node indices. Blank and '#' lines
// are skipped. n is one past the largest index seen.
Realization parse_facets(std::istream& in);
Realization read_facets_file(const std::filesystem::path& path);
void write_facets(std::ostream& out, const Realization& real);
void write_facets_file(const std::filesystem::path& path, const Realization& real);

}  // namespace simplicial::io
