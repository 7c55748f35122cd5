#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace simplicial {

// Fixed-width bit set over node indices 0..size-1. Width is fixed at
// construction; all binary operations require equal widths.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    // True iff every member of *this is a member of other (equality included).
    bool is_subset_of(const NodeSet& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }

    NodeSet& operator|=(const NodeSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    bool operator==(const NodeSet&) const = default;

    // Members in ascending order.
    std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace simplicial
