#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace homlift {

// Fixed-width bit vector over F2 with word-parallel xor.
class BitVec {
  public:
    BitVec() : n_(0) {}
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    // Index of lowest set bit, or size() when empty.
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return (k << 6) + std::countr_zero(w_[k]);
        return n_;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::vector<int> ones() const {
        std::vector<int> out;
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                out.push_back(static_cast<int>((k << 6) + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }

  private:
    std::size_t n_;
    std::vector<std::uint64_t> w_;
};

// Incremental F2 row-echelon basis.  Supports rank queries and membership
// tests against the span of the inserted vectors.
class F2Echelon {
  public:
    explicit F2Echelon(std::size_t cols) : cols_(cols) {}

    // Reduces v against the current basis; returns the residue.
    BitVec reduce(BitVec v) const {
        for (const auto& r : rows_) {
            std::size_t p = r.first_set();
            if (p < cols_ && v.test(p)) v.xor_with(r);
        }
        return v;
    }

    // Inserts v; returns true when it enlarged the span.
    bool add(const BitVec& v) {
        BitVec r = reduce(v);
        if (!r.any()) return false;
        rows_.push_back(r);
        return true;
    }

    bool contains(const BitVec& v) const { return !reduce(v).any(); }

    std::size_t rank() const { return rows_.size(); }

  private:
    std::size_t cols_;
    std::vector<BitVec> rows_;
};

} // namespace homlift
