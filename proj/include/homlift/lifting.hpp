#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/chain_complex.hpp"
#include "homlift/generators.hpp"
#include "homlift/zhomology.hpp"

namespace homlift {

// Entrywise 0 -> 0, 1 -> 1.  Parity always holds; admissibility is not
// guaranteed.
inline ChainComplexZ naive_lift(const ChainComplex2& c) {
    std::vector<IntMatrix> b;
    b.reserve(c.boundaries.size());
    for (const auto& m : c.boundaries) {
        std::vector<IntMatrix::Entry> e;
        e.reserve(m.nnz());
        for (auto [r, col] : m.entries()) e.push_back({r, col, 1});
        b.push_back(IntMatrix(m.rows(), m.cols(), std::move(e)));
    }
    return ChainComplexZ(c.dims, std::move(b));
}

inline IntMatrix naive_lift(const BinMatrix& m) {
    std::vector<IntMatrix::Entry> e;
    e.reserve(m.nnz());
    for (auto [r, c] : m.entries()) e.push_back({r, c, 1});
    return IntMatrix(m.rows(), m.cols(), std::move(e));
}

// Lift of a 1-complex boundary that signs each weight-2 column like an
// oriented edge (-1 at the lower incident cell, +1 at the higher); other
// columns lift naively.  For graph-like complexes this keeps the integer
// homology free, where the naive lift can pick up 2-torsion (an odd cycle's
// all-ones boundary has determinant 2 on its support).
inline IntMatrix oriented_lift(const BinMatrix& m) {
    std::vector<IntMatrix::Entry> e;
    e.reserve(m.nnz());
    for (int c = 0; c < m.cols(); ++c) {
        const auto& rows = m.rows_of(c);
        if (rows.size() == 2) {
            e.push_back({rows[0], c, -1});
            e.push_back({rows[1], c, 1});
        } else {
            for (int r : rows) e.push_back({r, c, 1});
        }
    }
    return IntMatrix(m.rows(), m.cols(), std::move(e));
}

// Admissible <=> all consecutive integer products vanish.
inline ValidationReport check_admissible(const ChainComplexZ& c) { return validate_complex(c); }

struct LiftResult {
    ChainComplexZ lifted;
    bool parity_ok = false;
    bool admissible = false;
    Int sparsity_in = 0;
    Int sparsity_out = 0;
};

inline LiftResult make_lift_result(const ChainComplex2& source, ChainComplexZ lifted) {
    LiftResult r;
    r.parity_ok = complexes_equal(mod2(lifted), source);
    r.admissible = check_admissible(lifted).ok;
    r.sparsity_in = sparsity(source);
    r.sparsity_out = sparsity(lifted);
    r.lifted = std::move(lifted);
    return r;
}

namespace detail {

// Basis change e_b <- e_b + e_a in the given degree.  Over F2 this adds
// column a into column b of the boundary out of that degree and row b into
// row a of the boundary into it.
struct ElemOp {
    int degree;
    int a;
    int b;
};

} // namespace detail

// Torsion-free lift of an arbitrary valid complex.  Each boundary is reduced
// over F2 to a partial-permutation form D by elementary basis changes; the
// naive lift of D composes to zero over Z, and replaying the inverse lifted
// operations restores a complex with the original mod-2 reduction.  The row
// schedule keeps already-reduced boundaries intact (their nonzero rows are
// never pivot columns of the previous D).
inline LiftResult general_lift(const ChainComplex2& c) {
    {
        ValidationReport v = validate_complex(c);
        if (!v.ok) throw std::invalid_argument("general_lift: input is not a chain complex");
    }
    const std::size_t k = c.boundaries.size();
    std::vector<std::vector<BitVec>> f2(k);
    for (std::size_t j = 0; j < k; ++j) {
        f2[j].reserve(static_cast<std::size_t>(c.boundaries[j].rows()));
        for (int r = 0; r < c.boundaries[j].rows(); ++r) f2[j].push_back(c.boundaries[j].row_bits(r));
    }

    std::vector<detail::ElemOp> ops;
    auto apply_f2 = [&](const detail::ElemOp& op) {
        if (op.degree >= 1) {
            auto& m = f2[static_cast<std::size_t>(op.degree - 1)];
            for (auto& row : m)
                if (row.test(static_cast<std::size_t>(op.a))) row.flip(static_cast<std::size_t>(op.b));
        }
        if (op.degree < static_cast<int>(k)) {
            auto& m = f2[static_cast<std::size_t>(op.degree)];
            m[static_cast<std::size_t>(op.a)].xor_with(m[static_cast<std::size_t>(op.b)]);
        }
    };
    auto emit = [&](int degree, int a, int b) {
        detail::ElemOp op{degree, a, b};
        apply_f2(op);
        ops.push_back(op);
    };

    for (std::size_t j = 0; j < k; ++j) {
        const int rows = c.boundaries[j].rows();
        const int cols = c.boundaries[j].cols();
        std::vector<char> is_pivot_row(static_cast<std::size_t>(rows), 0);
        std::vector<std::pair<int, int>> pivots;
        // Phase 1: reduced row echelon via row operations (row r2 += row r
        // is the basis change op(j, r2, r)).
        for (int col = 0; col < cols; ++col) {
            int pr = -1;
            for (int r = 0; r < rows; ++r)
                if (!is_pivot_row[static_cast<std::size_t>(r)] && f2[j][static_cast<std::size_t>(r)].test(static_cast<std::size_t>(col))) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            is_pivot_row[static_cast<std::size_t>(pr)] = 1;
            for (int r = 0; r < rows; ++r)
                if (r != pr && f2[j][static_cast<std::size_t>(r)].test(static_cast<std::size_t>(col)))
                    emit(static_cast<int>(j), r, pr);
            pivots.emplace_back(pr, col);
        }
        // Phase 2: clear pivot rows via column operations (col c2 += col c
        // is the basis change op(j+1, c, c2)).
        for (auto [pr, pc] : pivots) {
            for (int col : f2[j][static_cast<std::size_t>(pr)].ones())
                if (col != pc) emit(static_cast<int>(j) + 1, pc, col);
        }
    }

    // Naive lift of the reduced forms, then inverse replay over Z.
    std::vector<Dense> z(k);
    for (std::size_t j = 0; j < k; ++j) {
        z[j].assign(static_cast<std::size_t>(c.boundaries[j].rows()),
                    std::vector<Int>(static_cast<std::size_t>(c.boundaries[j].cols()), 0));
        for (int r = 0; r < c.boundaries[j].rows(); ++r)
            for (int col : f2[j][static_cast<std::size_t>(r)].ones())
                z[j][static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = 1;
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const auto& op = *it;
        if (op.degree >= 1) {
            auto& m = z[static_cast<std::size_t>(op.degree - 1)];
            for (auto& row : m)
                row[static_cast<std::size_t>(op.b)] -= row[static_cast<std::size_t>(op.a)];
        }
        if (op.degree < static_cast<int>(k)) {
            auto& m = z[static_cast<std::size_t>(op.degree)];
            auto& ra = m[static_cast<std::size_t>(op.a)];
            auto& rb = m[static_cast<std::size_t>(op.b)];
            for (std::size_t col = 0; col < ra.size(); ++col) ra[col] += rb[col];
        }
    }

    std::vector<IntMatrix> bounds;
    bounds.reserve(k);
    for (std::size_t j = 0; j < k; ++j) bounds.push_back(IntMatrix::from_dense(z[j]));
    return make_lift_result(c, ChainComplexZ(c.dims, std::move(bounds)));
}

// Restriction of a lifted degree-1 boundary to the cells incident to one
// 2-cell: rows are the 0-cells of the double boundary, columns the 1-cells
// of the boundary, entries taken from the lifted matrix.
struct LocalLiftMatrix {
    int two_cell = -1;
    std::vector<int> row_cells;
    std::vector<int> col_cells;
    IntMatrix mat;
};

inline LocalLiftMatrix local_matrix(int z, const IntMatrix& lifted_d1, const BinMatrix& d2) {
    if (z < 0 || z >= d2.cols()) throw std::out_of_range("local_matrix: 2-cell index out of range");
    LocalLiftMatrix lm;
    lm.two_cell = z;
    lm.col_cells = d2.rows_of(z); // sorted
    std::vector<int> rows;
    for (int q : lm.col_cells)
        for (int id : lifted_d1.ent_ids_of_col(q)) rows.push_back(lifted_d1.entry(id).row);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    lm.row_cells = std::move(rows);
    std::vector<IntMatrix::Entry> e;
    for (std::size_t ci = 0; ci < lm.col_cells.size(); ++ci)
        for (std::size_t ri = 0; ri < lm.row_cells.size(); ++ri) {
            Int v = lifted_d1.at(lm.row_cells[ri], lm.col_cells[ci]);
            if (v != 0) e.push_back({static_cast<int>(ri), static_cast<int>(ci), v});
        }
    lm.mat = IntMatrix(static_cast<int>(lm.row_cells.size()), static_cast<int>(lm.col_cells.size()), std::move(e));
    return lm;
}

// A matrix has 2-torsion when some vector in its range is divisible by 2
// while its half is not; equivalently some Smith invariant factor is even,
// equivalently the mod-2 rank is below the integer rank.  The rank form is
// used here; the Smith form equivalence is property-tested.
inline bool has_2torsion(const IntMatrix& a) { return rank2(a.mod2()) < rank_z(a); }

class NoSparseLiftError : public std::runtime_error {
  public:
    explicit NoSparseLiftError(int two_cell)
        : std::runtime_error("no sparse lift: local matrix of 2-cell " + std::to_string(two_cell) +
                             " has 2-torsion"),
          two_cell_(two_cell) {}
    int two_cell() const { return two_cell_; }

  private:
    int two_cell_;
};

class LiftBoundError : public std::runtime_error {
  public:
    explicit LiftBoundError(int two_cell, int bound)
        : std::runtime_error("sparse lift: no solution for 2-cell " + std::to_string(two_cell) +
                             " within entry bound " + std::to_string(bound)),
          two_cell_(two_cell), bound_(bound) {}
    int two_cell() const { return two_cell_; }
    int bound() const { return bound_; }

  private:
    int two_cell_;
    int bound_;
};

// Integer vector v with A v = 0 and v = (1,...,1) mod 2, minimal l1 norm
// among solutions with max-entry bound B (ties broken lexicographically).
// The particular solution comes from A w = (A 1)/2 solved through the
// Hermite form; refinement walks the kernel lattice.  Throws on 2-torsion;
// returns nullopt when no solution fits the bound.
inline std::optional<std::vector<Int>> solve_lift_vector(const LocalLiftMatrix& a, int bound = 3) {
    const IntMatrix& A = a.mat;
    const int n = A.cols();
    if (has_2torsion(A)) throw NoSparseLiftError(a.two_cell);
    std::vector<Int> a_one(static_cast<std::size_t>(A.rows()), 0);
    for (const auto& e : A.entries()) a_one[static_cast<std::size_t>(e.row)] += e.val;
    for (const Int& v : a_one)
        if (abs(v) % 2 != 0)
            throw std::invalid_argument("solve_lift_vector: A*1 is not even (input not a chain complex)");
    std::vector<Int> half(a_one.size());
    for (std::size_t i = 0; i < a_one.size(); ++i) half[i] = a_one[i] / 2;
    auto w = integer_solve(A, half);
    if (!w) throw std::logic_error("solve_lift_vector: A w = (A 1)/2 unsolvable despite no 2-torsion");
    std::vector<Int> v0(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) v0[static_cast<std::size_t>(i)] = 1 - 2 * (*w)[static_cast<std::size_t>(i)];

    // Echelonized kernel lattice basis for bounded enumeration.
    std::vector<std::vector<Int>> ker = integer_kernel(A);
    std::vector<std::vector<Int>> kb;
    std::vector<int> kpiv;
    if (!ker.empty()) {
        HnfResult h = hnf_dense(ker);
        for (int i = 0; i < h.rank; ++i) {
            kb.push_back(h.h[static_cast<std::size_t>(i)]);
            kpiv.push_back(h.pivot_cols[static_cast<std::size_t>(i)]);
        }
    }

    const Int B = bound;
    std::optional<std::vector<Int>> best;
    Int best_l1 = 0, best_dist = 0;
    // Order: minimal l1, then minimal l1-distance to the all-ones vector
    // (keeps v = 1 when A 1 = 0), then lexicographically smallest.
    auto consider = [&](const std::vector<Int>& v) {
        for (const Int& x : v)
            if (abs(x) > B) return;
        Int l1 = 0, dist = 0;
        for (const Int& x : v) {
            l1 += abs(x);
            dist += abs(x - 1);
        }
        bool better = false;
        if (!best) better = true;
        else if (l1 != best_l1) better = l1 < best_l1;
        else if (dist != best_dist) better = dist < best_dist;
        else better = std::lexicographical_compare(v.begin(), v.end(), best->begin(), best->end());
        if (better) {
            best = v;
            best_l1 = l1;
            best_dist = dist;
        }
    };

    std::vector<Int> cur = v0;
    // DFS over lattice coefficients; level i fixes the pivot coordinate of
    // kernel row i, which later rows cannot change.
    auto dfs = [&](auto&& self, std::size_t level) -> void {
        if (level == kb.size()) {
            consider(cur);
            return;
        }
        const auto& kv = kb[level];
        int p = kpiv[level];
        const Int step = 2 * kv[static_cast<std::size_t>(p)]; // pivot > 0
        const Int base = cur[static_cast<std::size_t>(p)];
        // need |base + c*step| <= B
        Int lo = (-B - base), hi = (B - base);
        Int clo = lo / step, chi = hi / step;
        // widen to cover floor/ceil on either sign
        clo -= 2; chi += 2;
        for (Int ci = clo; ci <= chi; ++ci) {
            Int coord = base + ci * step;
            // later rows cannot change this pivot coordinate
            if (abs(coord) > B) continue;
            if (ci == 0) {
                self(self, level + 1);
                continue;
            }
            for (int t = 0; t < static_cast<int>(cur.size()); ++t)
                cur[static_cast<std::size_t>(t)] += ci * kv[static_cast<std::size_t>(t)] * 2;
            self(self, level + 1);
            for (int t = 0; t < static_cast<int>(cur.size()); ++t)
                cur[static_cast<std::size_t>(t)] -= ci * kv[static_cast<std::size_t>(t)] * 2;
        }
    };
    dfs(dfs, 0);
    return best;
}

struct SparseLift {
    LiftResult result;
    Int worst_v_l1 = 0;
    int final_bound = 0;
};

// Lifts the top boundary of a three-term complex against a chosen lift of
// the degree-1 boundary, solving the local condition cell by cell.  The
// entry bound starts at 3 and doubles up to 65 before giving up.
inline SparseLift sparse_lift(const ChainComplex2& c, const IntMatrix& d1_lift) {
    if (c.degrees() != 3) throw std::invalid_argument("sparse_lift: need a three-term complex");
    if (!(d1_lift.mod2() == c.boundaries[0]))
        throw std::invalid_argument("sparse_lift: d1_lift does not reduce to the binary boundary");
    {
        ValidationReport v = validate_complex(c);
        if (!v.ok) throw std::invalid_argument("sparse_lift: input is not a chain complex");
    }
    const BinMatrix& d2 = c.boundaries[1];
    SparseLift out;
    std::vector<IntMatrix::Entry> e2;
    for (int z = 0; z < d2.cols(); ++z) {
        LocalLiftMatrix lm = local_matrix(z, d1_lift, d2);
        std::optional<std::vector<Int>> v;
        int bound = 3;
        for (;;) {
            v = solve_lift_vector(lm, bound);
            if (v) break;
            if (bound >= 65) throw LiftBoundError(z, bound);
            bound = std::min(2 * bound, 65);
        }
        out.final_bound = std::max(out.final_bound, bound);
        Int l1 = 0;
        for (const Int& x : *v) l1 += abs(x);
        out.worst_v_l1 = std::max(out.worst_v_l1, l1);
        for (std::size_t i = 0; i < lm.col_cells.size(); ++i)
            e2.push_back({lm.col_cells[i], z, (*v)[i]});
    }
    IntMatrix d2_lift(d2.rows(), d2.cols(), std::move(e2));
    out.result = make_lift_result(c, ChainComplexZ(c.dims, {d1_lift, std::move(d2_lift)}));
    return out;
}

// Signed lift of the bundle complex: the fiber circle lifts as head minus
// tail, the twisted copies over base vertices enter the top boundary with a
// minus sign.  Same sparsity as the binary complex.
inline ChainComplexZ fiber_bundle_lift(const FiberBundleSpec& spec) {
    const int m = spec.fiber_len;
    const BinMatrix& db = spec.base.boundaries[0];
    ProductLayout L{spec.base.dims[0], spec.base.dims[1], m, m};

    IntBuilder d2(L.dim1(), L.dim2());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < m; ++j) {
            d2.add(L.ev(i, (j + 1) % m), L.ee(i, j), 1);
            d2.add(L.ev(i, j), L.ee(i, j), -1);
            for (int a : db.rows_of(i)) {
                int t = spec.twist(i, a);
                d2.add(L.ve(a, (j + t) % m), L.ee(i, j), -1);
            }
        }

    IntBuilder d1(L.dim0(), L.dim1());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < m; ++j)
            for (int a : db.rows_of(i)) {
                int t = spec.twist(i, a);
                d1.add(L.vv(a, (j + t) % m), L.ev(i, j), 1);
            }
    for (int i = 0; i < L.a0; ++i)
        for (int j = 0; j < m; ++j) {
            d1.add(L.vv(i, (j + 1) % m), L.ve(i, j), 1);
            d1.add(L.vv(i, j), L.ve(i, j), -1);
        }

    return ChainComplexZ({L.dim0(), L.dim1(), L.dim2()}, {d1.build(), d2.build()});
}

// Koszul-signed product of lifts of two 1-complexes: the boundary of
// (edge x edge) picks up a minus sign on the second factor.  The factors
// lift with the oriented signing, so graph-like products (the toric family)
// come out torsion-free; any factor lift would still be admissible.
inline ChainComplexZ product_lift(const ChainComplex2& a, const ChainComplex2& b) {
    ProductLayout L = product_layout(a, b);
    IntMatrix da = oriented_lift(a.boundaries[0]);
    IntMatrix db = oriented_lift(b.boundaries[0]);

    IntBuilder d2(L.dim1(), L.dim2());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < L.b1; ++j) {
            for (int id : da.ent_ids_of_col(i)) {
                const auto& e = da.entry(id);
                d2.add(L.ve(e.row, j), L.ee(i, j), e.val);
            }
            for (int id : db.ent_ids_of_col(j)) {
                const auto& e = db.entry(id);
                d2.add(L.ev(i, e.row), L.ee(i, j), -e.val);
            }
        }

    IntBuilder d1(L.dim0(), L.dim1());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < L.b0; ++j)
            for (int id : da.ent_ids_of_col(i)) {
                const auto& e = da.entry(id);
                d1.add(L.vv(e.row, j), L.ev(i, j), e.val);
            }
    for (int i = 0; i < L.a0; ++i)
        for (int j = 0; j < L.b1; ++j)
            for (int id : db.ent_ids_of_col(j)) {
                const auto& e = db.entry(id);
                d1.add(L.vv(i, e.row), L.ve(i, j), e.val);
            }

    return ChainComplexZ({L.dim0(), L.dim1(), L.dim2()}, {d1.build(), d2.build()});
}

} // namespace homlift
