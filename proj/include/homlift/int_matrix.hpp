#pragma once

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homlift/bin_matrix.hpp"

namespace homlift {

// Exact integer scalar.  Normal-form reductions grow intermediate entries
// without bound, so everything integer runs on arbitrary precision.
using Int = boost::multiprecision::cpp_int;

inline int sign_of(const Int& v) { return v.sign(); }

// Sparse matrix over Z: position-sorted (row, col, value) triplets, stored
// values never zero, immutable after construction.
class IntMatrix {
  public:
    struct Entry {
        int row;
        int col;
        Int val;
    };

    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(int rows, int cols, std::vector<Entry> entries)
        : rows_(rows), cols_(cols), ents_(std::move(entries)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative shape");
        std::sort(ents_.begin(), ents_.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        for (std::size_t i = 0; i < ents_.size(); ++i) {
            const Entry& e = ents_[i];
            if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_)
                throw std::invalid_argument("IntMatrix: entry out of range");
            if (e.val == 0) throw std::invalid_argument("IntMatrix: stored zero value");
            if (i > 0 && ents_[i - 1].row == e.row && ents_[i - 1].col == e.col)
                throw std::invalid_argument("IntMatrix: duplicate entry");
        }
        build_index();
    }

    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols, {}); }

    static IntMatrix identity(int n) {
        std::vector<Entry> e;
        for (int i = 0; i < n; ++i) e.push_back({i, i, 1});
        return IntMatrix(n, n, std::move(e));
    }

    static IntMatrix from_dense(const std::vector<std::vector<Int>>& d) {
        int r = static_cast<int>(d.size());
        int c = r ? static_cast<int>(d[0].size()) : 0;
        std::vector<Entry> e;
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(d[static_cast<std::size_t>(i)].size()) != c)
                throw std::invalid_argument("IntMatrix::from_dense: ragged rows");
            for (int j = 0; j < c; ++j)
                if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
                    e.push_back({i, j, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
        }
        return IntMatrix(r, c, std::move(e));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return ents_.size(); }
    const std::vector<Entry>& entries() const { return ents_; }

    Int at(int r, int c) const {
        auto it = std::lower_bound(ents_.begin(), ents_.end(), std::make_pair(r, c),
                                   [](const Entry& e, const std::pair<int, int>& p) {
                                       return std::make_pair(e.row, e.col) < p;
                                   });
        if (it != ents_.end() && it->row == r && it->col == c) return it->val;
        return 0;
    }

    const std::vector<int>& ent_ids_of_row(int r) const { return by_row_[static_cast<std::size_t>(r)]; }
    const std::vector<int>& ent_ids_of_col(int c) const { return by_col_[static_cast<std::size_t>(c)]; }
    const Entry& entry(int id) const { return ents_[static_cast<std::size_t>(id)]; }

    Int row_l1(int r) const {
        Int s = 0;
        for (int id : by_row_[static_cast<std::size_t>(r)]) s += abs(ents_[static_cast<std::size_t>(id)].val);
        return s;
    }
    Int col_l1(int c) const {
        Int s = 0;
        for (int id : by_col_[static_cast<std::size_t>(c)]) s += abs(ents_[static_cast<std::size_t>(id)].val);
        return s;
    }

    Int max_l1() const {
        Int m = 0;
        for (int r = 0; r < rows_; ++r) m = std::max(m, row_l1(r));
        for (int c = 0; c < cols_; ++c) m = std::max(m, col_l1(c));
        return m;
    }

    IntMatrix transpose() const {
        std::vector<Entry> e;
        e.reserve(ents_.size());
        for (const Entry& x : ents_) e.push_back({x.col, x.row, x.val});
        return IntMatrix(cols_, rows_, std::move(e));
    }

    IntMatrix multiply(const IntMatrix& o) const {
        if (cols_ != o.rows()) throw std::invalid_argument("IntMatrix::multiply: shape mismatch");
        std::vector<std::vector<Int>> acc(static_cast<std::size_t>(rows_),
                                          std::vector<Int>(static_cast<std::size_t>(o.cols()), 0));
        for (const Entry& a : ents_)
            for (int id : o.ent_ids_of_row(a.col)) {
                const Entry& b = o.entry(id);
                acc[static_cast<std::size_t>(a.row)][static_cast<std::size_t>(b.col)] += a.val * b.val;
            }
        return from_dense(acc);
    }

    BinMatrix mod2() const {
        std::vector<std::pair<int, int>> e;
        for (const Entry& x : ents_)
            if (abs(x.val) % 2 == 1) e.emplace_back(x.row, x.col);
        return BinMatrix(rows_, cols_, std::move(e));
    }

    std::vector<std::vector<Int>> to_dense() const {
        std::vector<std::vector<Int>> d(static_cast<std::size_t>(rows_),
                                        std::vector<Int>(static_cast<std::size_t>(cols_), 0));
        for (const Entry& x : ents_) d[static_cast<std::size_t>(x.row)][static_cast<std::size_t>(x.col)] = x.val;
        return d;
    }

    bool operator==(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || ents_.size() != o.ents_.size()) return false;
        for (std::size_t i = 0; i < ents_.size(); ++i)
            if (ents_[i].row != o.ents_[i].row || ents_[i].col != o.ents_[i].col ||
                ents_[i].val != o.ents_[i].val)
                return false;
        return true;
    }

  private:
    void build_index() {
        by_row_.assign(static_cast<std::size_t>(rows_), {});
        by_col_.assign(static_cast<std::size_t>(cols_), {});
        for (std::size_t i = 0; i < ents_.size(); ++i) {
            by_row_[static_cast<std::size_t>(ents_[i].row)].push_back(static_cast<int>(i));
            by_col_[static_cast<std::size_t>(ents_[i].col)].push_back(static_cast<int>(i));
        }
    }

    int rows_, cols_;
    std::vector<Entry> ents_;
    std::vector<std::vector<int>> by_row_, by_col_;
};

} // namespace homlift
