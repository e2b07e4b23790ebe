#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "homlift/bitvec.hpp"

namespace homlift {

// Sparse matrix over F2.  Entries are the positions holding 1, stored as
// position-sorted pairs with row- and column-major lookup tables built once;
// instances are immutable after construction.
class BinMatrix {
  public:
    BinMatrix() : rows_(0), cols_(0) {}

    BinMatrix(int rows, int cols, std::vector<std::pair<int, int>> entries)
        : rows_(rows), cols_(cols), ents_(std::move(entries)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("BinMatrix: negative shape");
        std::sort(ents_.begin(), ents_.end());
        for (std::size_t i = 0; i < ents_.size(); ++i) {
            auto [r, c] = ents_[i];
            if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
                throw std::invalid_argument("BinMatrix: entry out of range");
            if (i > 0 && ents_[i] == ents_[i - 1])
                throw std::invalid_argument("BinMatrix: duplicate entry");
        }
        build_index();
    }

    static BinMatrix zero(int rows, int cols) { return BinMatrix(rows, cols, {}); }

    static BinMatrix identity(int n) {
        std::vector<std::pair<int, int>> e;
        e.reserve(n);
        for (int i = 0; i < n; ++i) e.emplace_back(i, i);
        return BinMatrix(n, n, std::move(e));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return ents_.size(); }
    const std::vector<std::pair<int, int>>& entries() const { return ents_; }

    bool at(int r, int c) const {
        return std::binary_search(ents_.begin(), ents_.end(), std::make_pair(r, c));
    }

    const std::vector<int>& cols_of(int r) const { return by_row_[r]; }
    const std::vector<int>& rows_of(int c) const { return by_col_[c]; }

    int row_weight(int r) const { return static_cast<int>(by_row_[r].size()); }
    int col_weight(int c) const { return static_cast<int>(by_col_[c].size()); }

    int max_weight() const {
        int m = 0;
        for (int r = 0; r < rows_; ++r) m = std::max(m, row_weight(r));
        for (int c = 0; c < cols_; ++c) m = std::max(m, col_weight(c));
        return m;
    }

    BinMatrix transpose() const {
        std::vector<std::pair<int, int>> e;
        e.reserve(ents_.size());
        for (auto [r, c] : ents_) e.emplace_back(c, r);
        return BinMatrix(cols_, rows_, std::move(e));
    }

    // F2 product this * o.
    BinMatrix multiply(const BinMatrix& o) const {
        if (cols_ != o.rows()) throw std::invalid_argument("BinMatrix::multiply: shape mismatch");
        std::vector<BitVec> rows(rows_, BitVec(static_cast<std::size_t>(o.cols())));
        for (int r = 0; r < rows_; ++r)
            for (int k : by_row_[r])
                for (int c : o.cols_of(k)) rows[static_cast<std::size_t>(r)].flip(static_cast<std::size_t>(c));
        std::vector<std::pair<int, int>> e;
        for (int r = 0; r < rows_; ++r)
            for (int c : rows[static_cast<std::size_t>(r)].ones()) e.emplace_back(r, c);
        return BinMatrix(rows_, o.cols(), std::move(e));
    }

    BitVec row_bits(int r) const {
        BitVec v(static_cast<std::size_t>(cols_));
        for (int c : by_row_[r]) v.set(static_cast<std::size_t>(c));
        return v;
    }

    BitVec col_bits(int c) const {
        BitVec v(static_cast<std::size_t>(rows_));
        for (int r : by_col_[c]) v.set(static_cast<std::size_t>(r));
        return v;
    }

    bool operator==(const BinMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && ents_ == o.ents_;
    }

  private:
    void build_index() {
        by_row_.assign(static_cast<std::size_t>(rows_), {});
        by_col_.assign(static_cast<std::size_t>(cols_), {});
        for (auto [r, c] : ents_) {
            by_row_[static_cast<std::size_t>(r)].push_back(c);
            by_col_[static_cast<std::size_t>(c)].push_back(r);
        }
    }

    int rows_, cols_;
    std::vector<std::pair<int, int>> ents_;
    std::vector<std::vector<int>> by_row_, by_col_;
};

// Rank over F2 by bitset elimination.
inline int rank2(const BinMatrix& m) {
    F2Echelon ech(static_cast<std::size_t>(m.cols()));
    for (int r = 0; r < m.rows(); ++r) ech.add(m.row_bits(r));
    return static_cast<int>(ech.rank());
}

} // namespace homlift
