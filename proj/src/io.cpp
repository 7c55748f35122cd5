#include "simplicial/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace simplicial::io {

namespace {

std::vector<int> parse_ints(const std::string& line, int line_no) {
    std::istringstream ls(line);
    std::vector<int> out;
    std::string tok;
    while (ls >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw InvalidInput("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

bool is_skippable(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

SequenceText parse_sequence(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            auto j = nlohmann::json::parse(text);
            return {j.at("degrees").get<std::vector<int>>(), j.at("sizes").get<std::vector<int>>()};
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("malformed JSON sequence: ") + e.what());
        }
    }

    std::istringstream ss(text);
    std::vector<std::vector<int>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        rows.push_back(parse_ints(line, line_no));
    }
    if (rows.size() != 2)
        throw InvalidInput("sequence file needs exactly two data lines, found " + std::to_string(rows.size()));
    return {rows[0], rows[1]};
}

SequenceText read_sequence_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_sequence(in);
}

void write_sequence(std::ostream& out, const std::vector<int>& degrees, const std::vector<int>& sizes) {
    auto line = [&](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << '\n';
    };
    line(degrees);
    line(sizes);
}

Realization parse_facets(std::istream& in) {
    Realization real;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        auto f = parse_ints(line, line_no);
        for (int v : f) {
            if (v < 0) throw InvalidInput("line " + std::to_string(line_no) + ": negative node index");
            real.n = std::max(real.n, v + 1);
        }
        std::sort(f.begin(), f.end());
        real.facets.push_back(std::move(f));
    }
    return real;
}

Realization read_facets_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_facets(in);
}

void write_facets(std::ostream& out, const Realization& real) {
    for (const auto& f : real.facets) {
        for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
        out << '\n';
    }
}

void write_facets_file(const std::filesystem::path& path, const Realization& real) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_facets(out, real);
}

}  // namespace simplicial::io
