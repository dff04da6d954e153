#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "divsol/errors.hpp"

namespace divsol {

// Subset of a ground set {0, ..., universe-1}, stored as a bitset with a
// cached cardinality. The universe size is fixed at construction; two subsets
// interoperate only when their universes match.
class ElementSubset {
public:
    ElementSubset() = default;

    explicit ElementSubset(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static ElementSubset from_indices(std::size_t universe,
                                      std::initializer_list<std::size_t> idx) {
        ElementSubset s(universe);
        for (std::size_t i : idx) s.set(i);
        return s;
    }

    static ElementSubset from_indices(std::size_t universe,
                                      const std::vector<std::size_t>& idx) {
        ElementSubset s(universe);
        for (std::size_t i : idx) s.set(i);
        return s;
    }

    // universe must be <= 64.
    static ElementSubset from_mask(std::size_t universe, std::uint64_t mask) {
        if (universe > 64)
            throw MalformedInputError("from_mask: universe exceeds 64 elements");
        if (universe < 64 && (mask >> universe) != 0)
            throw MalformedInputError("from_mask: mask has bits outside the universe");
        ElementSubset s(universe);
        if (!s.words_.empty()) s.words_[0] = mask;
        s.count_ = static_cast<std::size_t>(std::popcount(mask));
        return s;
    }

    std::size_t universe() const { return universe_; }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        check_index(i);
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    void reset(std::size_t i) {
        check_index(i);
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }

    void clear() {
        for (auto& w : words_) w = 0;
        count_ = 0;
    }

    ElementSubset& operator|=(const ElementSubset& o) {
        check_same_universe(o);
        count_ = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] |= o.words_[w];
            count_ += static_cast<std::size_t>(std::popcount(words_[w]));
        }
        return *this;
    }

    ElementSubset& operator&=(const ElementSubset& o) {
        check_same_universe(o);
        count_ = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] &= o.words_[w];
            count_ += static_cast<std::size_t>(std::popcount(words_[w]));
        }
        return *this;
    }

    // true iff o is a subset of *this.
    bool contains(const ElementSubset& o) const {
        check_same_universe(o);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (o.words_[w] & ~words_[w]) return false;
        return true;
    }

    std::size_t intersection_count(const ElementSubset& o) const {
        check_same_universe(o);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += static_cast<std::size_t>(std::popcount(words_[w] & o.words_[w]));
        return c;
    }

    // |A \ B| + |B \ A|, the Hamming distance between the two subsets.
    std::size_t hamming_distance(const ElementSubset& o) const {
        check_same_universe(o);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += static_cast<std::size_t>(std::popcount(words_[w] ^ o.words_[w]));
        return c;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count_);
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                unsigned b = static_cast<unsigned>(std::countr_zero(word));
                f(w * 64 + b);
                word &= word - 1;
            }
        }
    }

    friend bool operator==(const ElementSubset& a, const ElementSubset& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    friend bool operator!=(const ElementSubset& a, const ElementSubset& b) {
        return !(a == b);
    }

    // Numeric order (word 0 holds the low bits). Total order for std::set keys
    // and deterministic sorting.
    friend bool operator<(const ElementSubset& a, const ElementSubset& b) {
        if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
        for (std::size_t w = a.words_.size(); w-- > 0;)
            if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
        return false;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for_each([&](std::size_t i) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        });
        s += "}";
        return s;
    }

private:
    void check_index(std::size_t i) const {
        if (i >= universe_)
            throw MalformedInputError("element index " + std::to_string(i) +
                                      " out of range for universe of size " +
                                      std::to_string(universe_));
    }

    void check_same_universe(const ElementSubset& o) const {
        if (universe_ != o.universe_)
            throw MalformedInputError("subset universe mismatch: " +
                                      std::to_string(universe_) + " vs " +
                                      std::to_string(o.universe_));
    }

    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace divsol
